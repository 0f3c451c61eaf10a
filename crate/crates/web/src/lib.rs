//! wasm-bindgen bindings for the browser demo in `www/`.
//!
//! Each export is a thin wrapper over a plain Rust function so the logic can
//! be tested natively; only error conversion happens at the boundary.

use pointscatter::imaging::{ProjectorSource, RankPolicy};
use pointscatter::runner::{self, RunConfig, SourceConfig};
use pointscatter::{Complex64, Error, Result};
use wasm_bindgen::prelude::*;

/// Projector settings chosen in the page.
#[wasm_bindgen]
#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub delta: f64,
    pub seed: u32,
    /// `true` for the pseudo-inverse route, `false` for the SVD range basis.
    pub pinv: bool,
    /// 0 = largest gap, 1 = exact rank, 2 = fixed rank.
    pub policy: u8,
    /// Relative tolerance for exact rank, rank for fixed rank, cap for
    /// largest gap (0 means `N - 1`).
    pub param: f64,
    pub step: f64,
}

#[wasm_bindgen]
impl Settings {
    #[wasm_bindgen(constructor)]
    pub fn new(delta: f64, seed: u32, pinv: bool, policy: u8, param: f64, step: f64) -> Settings {
        Settings {
            delta,
            seed,
            pinv,
            policy,
            param,
            step,
        }
    }
}

/// One scan: gray-level image (top row at `ymax`) plus the detected peaks.
#[wasm_bindgen]
pub struct Scan {
    nx: usize,
    ny: usize,
    gray: Vec<u8>,
    peaks: Vec<f64>,
    truth: Vec<f64>,
    rank_used: usize,
    contrast: f64,
    max_error: f64,
    region: Vec<f64>,
}

#[wasm_bindgen]
impl Scan {
    #[wasm_bindgen(getter)]
    pub fn nx(&self) -> usize {
        self.nx
    }
    #[wasm_bindgen(getter)]
    pub fn ny(&self) -> usize {
        self.ny
    }
    #[wasm_bindgen(getter)]
    pub fn gray(&self) -> Vec<u8> {
        self.gray.clone()
    }
    /// Flattened `(x, y)` pairs, strongest first.
    #[wasm_bindgen(getter)]
    pub fn peaks(&self) -> Vec<f64> {
        self.peaks.clone()
    }
    /// Flattened `(x, y)` pairs of the true scatterers.
    #[wasm_bindgen(getter)]
    pub fn truth(&self) -> Vec<f64> {
        self.truth.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn rank_used(&self) -> usize {
        self.rank_used
    }
    #[wasm_bindgen(getter)]
    pub fn contrast(&self) -> f64 {
        self.contrast
    }
    /// Largest matched error; `NaN` when a scatterer has no peak.
    #[wasm_bindgen(getter)]
    pub fn max_error(&self) -> f64 {
        self.max_error
    }
    /// `[xmin, xmax, ymin, ymax]`.
    #[wasm_bindgen(getter)]
    pub fn region(&self) -> Vec<f64> {
        self.region.clone()
    }
}

fn js(e: Error) -> JsError {
    JsError::new(&e.to_string())
}

fn policy(s: &Settings, n: usize) -> Result<RankPolicy> {
    let p = match s.policy {
        0 if s.param == 0.0 => RankPolicy::LargestGap { cap: n - 1 },
        0 => RankPolicy::LargestGap {
            cap: s.param as usize,
        },
        1 => RankPolicy::ExactRank { tolerance: s.param },
        2 => RankPolicy::FixedRank {
            rank: s.param as usize,
        },
        other => return Err(Error::Validation(format!("unknown rank policy {other}"))),
    };
    p.validate(n)?;
    Ok(p)
}

/// Preset `name` with the page's settings applied. `sources`, when
/// non-empty, replaces the preset scatterers with `(x, y, re α, im α)`
/// quadruples in the plane `z = 0`.
pub fn configure(name: &str, s: &Settings, sources: &[f64]) -> Result<RunConfig> {
    let mut cfg = runner::preset(name)?;
    if !sources.is_empty() {
        if !sources.len().is_multiple_of(4) {
            return Err(Error::Validation(format!(
                "sources must be (x, y, re, im) quadruples, got {} numbers",
                sources.len()
            )));
        }
        cfg.sources = sources
            .chunks(4)
            .map(|q| SourceConfig::planar(q[0], q[1], Complex64::new(q[2], q[3])))
            .collect();
        cfg.peaks.expected = Some(cfg.sources.len());
    }
    cfg.noise.delta = s.delta;
    cfg.noise.seed = u64::from(s.seed);
    cfg.step = s.step;
    cfg.projector.source = if s.pinv {
        ProjectorSource::PseudoInverse
    } else {
        ProjectorSource::SvdRange
    };
    cfg.projector.policy = policy(s, cfg.num_directions)?;
    cfg.validate()?;
    Ok(cfg)
}

pub fn run_scan(name: &str, s: &Settings, sources: &[f64]) -> Result<Scan> {
    let cfg = configure(name, s, sources)?;
    let out = runner::execute(&cfg)?;
    let r = &out.report;
    Ok(Scan {
        nx: out.heatmap.nx,
        ny: out.heatmap.ny,
        gray: runner::emit::gray_levels(&out.heatmap),
        peaks: r.peaks.iter().flat_map(|p| [p.x, p.y]).collect(),
        truth: cfg
            .sources
            .iter()
            .flat_map(|s| [s.position[0], s.position[1]])
            .collect(),
        rank_used: r.rank_used,
        contrast: r.contrast,
        max_error: r.max_matched_error().unwrap_or(f64::NAN),
        region: cfg.region.to_vec(),
    })
}

/// Singular values of the (noisy, when `δ > 0`) far-field matrix followed by
/// those of the clean matrix, each of length `N`.
pub fn run_spectrum(name: &str, s: &Settings, sources: &[f64]) -> Result<Vec<f64>> {
    let cfg = configure(name, s, sources)?;
    let spec = runner::spectrum(&cfg)?;
    let mut out = spec.noisy.unwrap_or_else(|| spec.clean.clone());
    out.extend(spec.clean);
    Ok(out)
}

#[wasm_bindgen]
pub fn preset_names() -> Vec<String> {
    runner::PRESET_NAMES.iter().map(|s| s.to_string()).collect()
}

/// Default settings of a preset, for populating the controls.
#[wasm_bindgen]
pub fn preset_settings(name: &str) -> Result<Settings, JsError> {
    let cfg = runner::preset(name).map_err(js)?;
    let (policy, param) = match cfg.projector.policy {
        RankPolicy::LargestGap { cap } => (0, cap as f64),
        RankPolicy::ExactRank { tolerance } => (1, tolerance),
        RankPolicy::FixedRank { rank } => (2, rank as f64),
    };
    Ok(Settings {
        delta: cfg.noise.delta,
        seed: cfg.noise.seed as u32,
        pinv: cfg.projector.source == ProjectorSource::PseudoInverse,
        policy,
        param,
        step: cfg.step,
    })
}

/// Flattened `(x, y, re α, im α)` of a preset's scatterers.
#[wasm_bindgen]
pub fn preset_sources(name: &str) -> Result<Vec<f64>, JsError> {
    let cfg = runner::preset(name).map_err(js)?;
    Ok(cfg
        .sources
        .iter()
        .flat_map(|s| [s.position[0], s.position[1], s.alpha[0], s.alpha[1]])
        .collect())
}

#[wasm_bindgen]
pub fn scan(name: &str, settings: &Settings, sources: &[f64]) -> Result<Scan, JsError> {
    run_scan(name, settings, sources).map_err(js)
}

#[wasm_bindgen]
pub fn spectrum(name: &str, settings: &Settings, sources: &[f64]) -> Result<Vec<f64>, JsError> {
    run_spectrum(name, settings, sources).map_err(js)
}
