//! Experiment harness: configs, presets, end-to-end runs and output files.

pub mod config;
pub mod emit;
pub mod presets;
pub mod report;

pub use config::{NoiseConfig, PeaksConfig, ProjectorConfig, RunConfig, SourceConfig};
pub use emit::emit_heatmap;
pub use presets::{preset, DEFAULT_SEED, PRESET_NAMES};
pub use report::{GridSummary, PeakRecord, RunReport, Timings};

use std::path::Path;

use crate::error::Result;
use crate::forward::{FarFieldMatrix, ForwardModel};
use crate::imaging::{
    contrast, extract_peaks, localization_error, pseudo_inverse_projector, scan_grid,
    svd_range_projector, Heatmap, Peak, Projector, ProjectorSource,
};
use crate::noise::add_noise;

/// Everything a run produces before anything is written to disk.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub report: RunReport,
    pub heatmap: Heatmap,
    pub clean: FarFieldMatrix,
    pub data: FarFieldMatrix,
    pub projector: Projector,
    pub peaks: Vec<Peak>,
}

/// Clean and (when `δ > 0`) noisy singular values for rank diagnosis.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub clean: Vec<f64>,
    pub noisy: Option<Vec<f64>>,
}

struct Stopwatch {
    #[cfg(not(target_arch = "wasm32"))]
    start: std::time::Instant,
}

impl Stopwatch {
    fn start() -> Self {
        Stopwatch {
            #[cfg(not(target_arch = "wasm32"))]
            start: std::time::Instant::now(),
        }
    }

    /// Milliseconds since start; wall-clock time is unavailable on bare wasm.
    fn ms(&self) -> Option<f64> {
        #[cfg(not(target_arch = "wasm32"))]
        return Some(self.start.elapsed().as_secs_f64() * 1e3);
        #[cfg(target_arch = "wasm32")]
        None
    }
}

/// Synthesizes the data matrices of `cfg`: clean `F` and the matrix handed
/// to the inverse step (noisy when `δ > 0`).
pub fn synthesize(cfg: &RunConfig) -> Result<(ForwardModel, FarFieldMatrix, FarFieldMatrix)> {
    cfg.validate()?;
    let model = ForwardModel::new(&cfg.scatterers()?, cfg.wave()?)?;
    let clean = model.far_field_matrix(&cfg.directions()?);
    let data = if cfg.noise.delta > 0.0 {
        add_noise(&clean, cfg.noise_spec()?)
    } else {
        clean.clone()
    };
    Ok((model, clean, data))
}

pub fn spectrum(cfg: &RunConfig) -> Result<Spectrum> {
    let (_, clean, data) = synthesize(cfg)?;
    Ok(Spectrum {
        clean: clean.singular_values(),
        noisy: data.meta.noisy.then(|| data.singular_values()),
    })
}

pub fn build_projector(cfg: &RunConfig, data: &FarFieldMatrix) -> Result<Projector> {
    match cfg.projector.source {
        ProjectorSource::SvdRange => svd_range_projector(data, cfg.projector.policy),
        ProjectorSource::PseudoInverse => pseudo_inverse_projector(data, cfg.projector.policy),
    }
}

/// Forward → noise → projector → scan → peaks → scoring, without file output.
pub fn execute(cfg: &RunConfig) -> Result<RunOutcome> {
    let total = Stopwatch::start();
    let sw = Stopwatch::start();
    let (model, clean, data) = synthesize(cfg)?;
    let forward_ms = sw.ms();

    let sw = Stopwatch::start();
    let projector = build_projector(cfg, &data)?;
    let projector_ms = sw.ms();

    let dirs = cfg.directions()?;
    let wave = cfg.wave()?;
    let sw = Stopwatch::start();
    let heatmap = scan_grid(cfg.region(), cfg.step, cfg.plane_z, &projector, &dirs, wave)?;
    let scan_ms = sw.ms();

    let sw = Stopwatch::start();
    let truth = cfg.truth();
    let peaks = extract_peaks(&heatmap, cfg.peaks.expected, cfg.peaks.rel_threshold)?;
    let estimates: Vec<_> = peaks.iter().map(|p| p.point).collect();
    let matching = if estimates.is_empty() {
        None
    } else {
        Some(localization_error(&estimates, &truth)?)
    };
    let contrast = contrast(&heatmap, &truth, &projector, &dirs, wave)?;
    let peaks_ms = sw.ms();

    let peak_records = peaks
        .iter()
        .enumerate()
        .map(|(i, p)| PeakRecord {
            x: p.point.x,
            y: p.point.y,
            z: p.point.z,
            indicator: p.indicator,
            matched_error: matching
                .as_ref()
                .and_then(|m| m.pair_for_estimate(i))
                .map(|pair| pair.distance),
        })
        .collect();
    let matched_errors: Vec<Option<f64>> = (0..truth.len())
        .map(|t| {
            matching
                .as_ref()
                .and_then(|m| m.estimate_for_truth(t))
                .map(|pair| pair.distance)
        })
        .collect();
    let unmatched_sources = matched_errors
        .iter()
        .enumerate()
        .filter_map(|(i, e)| e.is_none().then_some(i))
        .collect();

    let timings = match (forward_ms, projector_ms, scan_ms, peaks_ms, total.ms()) {
        (Some(forward_ms), Some(projector_ms), Some(scan_ms), Some(peaks_ms), Some(total_ms)) => {
            Some(Timings {
                forward_ms,
                projector_ms,
                scan_ms,
                peaks_ms,
                total_ms,
            })
        }
        _ => None,
    };

    let report = RunReport {
        config: cfg.clone(),
        admissibility: model.admissibility(),
        rank_used: projector.rank_used(),
        singular_values_clean: clean.singular_values(),
        singular_values_noisy: data
            .meta
            .noisy
            .then(|| projector.singular_values().to_vec()),
        noise_generator: data.meta.generator.clone(),
        projector_laws: projector.laws(),
        grid: GridSummary {
            nx: heatmap.nx,
            ny: heatmap.ny,
            min: heatmap.min(),
            max: heatmap.max(),
            median: heatmap.median(),
        },
        contrast,
        peaks: peak_records,
        matched_errors,
        unmatched_sources,
        timings,
    };
    Ok(RunOutcome {
        report,
        heatmap,
        clean,
        data,
        projector,
        peaks,
    })
}

/// [`execute`] and write `heatmap.csv`, `heatmap.pgm`, `peaks.csv`,
/// `report.json` and `timings.json` into `cfg.output_dir`.
pub fn run_experiment(cfg: &RunConfig) -> Result<RunReport> {
    let outcome = execute(cfg)?;
    let dir = Path::new(&cfg.output_dir);
    emit::emit_heatmap(&outcome.heatmap, dir)?;
    emit::emit_report(&outcome.report, dir)?;
    Ok(outcome.report)
}
