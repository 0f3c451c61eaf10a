use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("validation error: {0}")]
    Validation(String),

    #[error("singular kernel: coincident points")]
    SingularKernel,

    #[error("evaluation at source point {index}")]
    SourcePoint { index: usize },

    #[error("wavenumber in or near S_α (rcond = {rcond:e})")]
    Inadmissible { rcond: f64 },

    #[error("Foldy-Lax system singular")]
    FoldyLaxSingular,

    #[error("degenerate far-field data: zero matrix")]
    DegenerateData,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("unknown preset `{name}`; valid presets: {}", valid.join(", "))]
    UnknownPreset {
        name: String,
        valid: Vec<&'static str>,
    },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("config parse error: {0}")]
    ConfigParse(#[from] toml::de::Error),

    #[error("config serialize error: {0}")]
    ConfigSerialize(#[from] toml::ser::Error),

    #[error("report error: {0}")]
    Report(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        Error::Io {
            path: path.display().to_string(),
            source,
        }
    }
}
