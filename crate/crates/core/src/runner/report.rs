use serde::{Deserialize, Serialize};

use super::config::RunConfig;
use crate::forward::Admissibility;
use crate::imaging::ProjectorLaws;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeakRecord {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub indicator: f64,
    pub matched_error: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSummary {
    pub nx: usize,
    pub ny: usize,
    pub min: f64,
    pub max: f64,
    pub median: f64,
}

/// Wall-clock milliseconds per stage.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub forward_ms: f64,
    pub projector_ms: f64,
    pub scan_ms: f64,
    pub peaks_ms: f64,
    pub total_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub config: RunConfig,
    pub admissibility: Admissibility,
    pub rank_used: usize,
    pub singular_values_clean: Vec<f64>,
    pub singular_values_noisy: Option<Vec<f64>>,
    pub noise_generator: Option<String>,
    pub projector_laws: ProjectorLaws,
    pub grid: GridSummary,
    /// Largest indicator at a true source over the grid median.
    pub contrast: f64,
    /// Sorted by descending indicator.
    pub peaks: Vec<PeakRecord>,
    /// Distance from each true source (in config order) to its matched peak;
    /// sources without a peak are listed in `unmatched_sources`.
    pub matched_errors: Vec<Option<f64>>,
    pub unmatched_sources: Vec<usize>,
    pub timings: Option<Timings>,
}

impl RunReport {
    pub fn all_sources_within(&self, tol: f64) -> bool {
        self.matched_errors
            .iter()
            .all(|e| matches!(e, Some(d) if *d <= tol))
    }

    pub fn max_matched_error(&self) -> Option<f64> {
        self.matched_errors
            .iter()
            .try_fold(0.0f64, |acc, e| e.map(|d| acc.max(d)))
    }
}
