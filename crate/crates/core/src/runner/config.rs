use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::imaging::{ProjectorSource, RankPolicy, Region};
use crate::noise::NoiseSpec;
use crate::wavecore::{uniform_circle_directions, DirectionSet, Point3, ScattererSet, WaveConfig};

/// One point source: position and scattering coefficient `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SourceConfig {
    pub position: [f64; 3],
    pub alpha: [f64; 2],
}

impl SourceConfig {
    pub fn planar(x: f64, y: f64, alpha: Complex64) -> Self {
        SourceConfig {
            position: [x, y, 0.0],
            alpha: [alpha.re, alpha.im],
        }
    }

    pub fn point(&self) -> Point3 {
        let [x, y, z] = self.position;
        Point3 { x, y, z }
    }

    pub fn alpha(&self) -> Complex64 {
        Complex64::new(self.alpha[0], self.alpha[1])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseConfig {
    pub delta: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProjectorConfig {
    pub source: ProjectorSource,
    #[serde(flatten)]
    pub policy: RankPolicy,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PeaksConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<usize>,
    pub rel_threshold: f64,
}

/// Everything one forward → noise → inverse run needs.
///
/// Serialized as TOML; plain keys come first so the file reads top-down.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    pub wavenumber: f64,
    pub num_directions: usize,
    /// `[xmin, xmax, ymin, ymax]`
    pub region: [f64; 4],
    pub step: f64,
    #[serde(default)]
    pub plane_z: f64,
    pub output_dir: String,
    pub sources: Vec<SourceConfig>,
    pub noise: NoiseConfig,
    pub projector: ProjectorConfig,
    pub peaks: PeaksConfig,
}

impl RunConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(text)?;
        Ok(cfg)
    }

    pub fn to_toml_string(&self) -> Result<String> {
        Ok(toml::to_string(self)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text)
    }

    pub fn validate(&self) -> Result<()> {
        WaveConfig::new(self.wavenumber)?;
        self.scatterers()?;
        let m = self.sources.len();
        if self.num_directions < m {
            return Err(Error::validation(format!(
                "num_directions ({}) must be at least the number of sources ({m})",
                self.num_directions
            )));
        }
        if !(self.step.is_finite() && self.step > 0.0) {
            return Err(Error::validation(format!(
                "step must be positive, got {}",
                self.step
            )));
        }
        let [xmin, xmax, ymin, ymax] = self.region;
        if !self.region.iter().all(|v| v.is_finite()) || xmax < xmin || ymax < ymin {
            return Err(Error::validation(format!(
                "invalid region {:?}",
                self.region
            )));
        }
        if !self.plane_z.is_finite() {
            return Err(Error::validation("plane_z must be finite"));
        }
        self.noise_spec()?;
        self.projector.policy.validate(self.num_directions)?;
        let t = self.peaks.rel_threshold;
        if !(t > 0.0 && t <= 1.0) {
            return Err(Error::validation(format!(
                "rel_threshold must lie in (0, 1], got {t}"
            )));
        }
        Ok(())
    }

    pub fn wave(&self) -> Result<WaveConfig> {
        WaveConfig::new(self.wavenumber)
    }

    pub fn scatterers(&self) -> Result<ScattererSet> {
        ScattererSet::new(
            self.sources.iter().map(SourceConfig::point).collect(),
            self.sources.iter().map(SourceConfig::alpha).collect(),
        )
    }

    pub fn truth(&self) -> Vec<Point3> {
        self.sources.iter().map(SourceConfig::point).collect()
    }

    pub fn directions(&self) -> Result<DirectionSet> {
        uniform_circle_directions(self.num_directions)
    }

    pub fn region(&self) -> Region {
        Region::from_array(self.region)
    }

    pub fn noise_spec(&self) -> Result<NoiseSpec> {
        NoiseSpec::new(self.noise.delta, self.noise.seed)
    }
}
