//! Inverse pipeline: signal-subspace projectors, the MUSIC indicator,
//! grid scanning, peak extraction and localization scoring.

mod matching;
mod peaks;
mod projector;
mod scan;

pub use matching::{localization_error, MatchedPair, Matching};
pub use peaks::{extract_peaks, Peak, DEFAULT_REL_THRESHOLD, MERGE_RADIUS_STEPS};
pub use projector::{
    pseudo_inverse_projector, select_rank, svd_range_projector, Projector, ProjectorLaws,
    ProjectorSource, RankPolicy,
};
pub use scan::{contrast, scan_grid, Heatmap, Region};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::wavecore::{plane_wave, DirectionSet, Point3, WaveConfig};

/// Lower clamp on `‖Πφ_z‖`; indicator values at or above `1/INDICATOR_FLOOR`
/// stand for "unbounded".
pub const INDICATOR_FLOOR: f64 = 1e-12;

/// Test vector `φ_z[j] = e^{−ik θ_j·z}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SteeringVector {
    entries: Vec<Complex64>,
}

impl SteeringVector {
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

pub fn steering_vector(z: &Point3, dirs: &DirectionSet, w: WaveConfig) -> SteeringVector {
    SteeringVector {
        entries: dirs.iter().map(|d| plane_wave(z, d, -w.k())).collect(),
    }
}

/// `I_z = 1 / max(‖Π φ_z‖, ε)`.
pub fn indicator(z: &Point3, proj: &Projector, dirs: &DirectionSet, w: WaveConfig) -> Result<f64> {
    if proj.dim() != dirs.len() {
        return Err(Error::DimensionMismatch {
            expected: proj.dim(),
            got: dirs.len(),
        });
    }
    let phi = steering_vector(z, dirs, w);
    Ok(indicator_of(proj, &phi))
}

pub(crate) fn indicator_of(proj: &Projector, phi: &SteeringVector) -> f64 {
    1.0 / proj.residual_norm(phi.entries()).max(INDICATOR_FLOOR)
}
