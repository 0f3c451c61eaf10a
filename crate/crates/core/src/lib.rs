//! Acoustic point scatterers: forward multiple scattering under plane-wave
//! incidence and MUSIC-type localization from far-field data.
//!
//! The forward side builds the interaction matrix of `M` point scatterers,
//! evaluates scattered and far fields in closed form, and synthesizes the
//! `N × N` far-field response matrix over a set of incidence/observation
//! directions. The inverse side projects test vectors onto the complement of
//! the data's signal subspace and scans the reciprocal residual over a grid.
//!
//! ```
//! use pointscatter::prelude::*;
//! use num_complex::Complex64;
//!
//! let scatterers = ScattererSet::new(
//!     vec![Point3::planar(1.0, 0.0), Point3::planar(-1.0, 0.5)],
//!     vec![Complex64::new(1.0, 1.0), Complex64::new(2.0, 0.5)],
//! )?;
//! let wave = WaveConfig::new(std::f64::consts::TAU)?;
//! let dirs = uniform_circle_directions(12)?;
//! let f = synthesize_far_field(&dirs, &scatterers, wave)?;
//! let proj = svd_range_projector(&f, RankPolicy::ExactRank { tolerance: 1e-8 })?;
//! assert_eq!(proj.rank_used(), 2);
//! assert!(indicator(&Point3::planar(1.0, 0.0), &proj, &dirs, wave)? > 1e8);
//! # Ok::<(), pointscatter::Error>(())
//! ```

pub mod error;
pub mod forward;
pub mod imaging;
pub mod linalg;
pub mod noise;
pub mod runner;
pub mod wavecore;

pub use error::{Error, Result};
pub use num_complex::Complex64;

pub mod prelude {
    pub use crate::error::{Error, Result};
    pub use crate::forward::{
        amplitude_matrix, born_far_field, build_interaction_matrix, check_admissible,
        far_field_pattern, foldy_lax_total_field, scattered_field, steering_matrix,
        synthesize_far_field, total_field, FarFieldMatrix, ForwardModel,
    };
    pub use crate::imaging::{
        contrast, extract_peaks, indicator, localization_error, pseudo_inverse_projector,
        scan_grid, steering_vector, svd_range_projector, Heatmap, Projector, RankPolicy, Region,
    };
    pub use crate::noise::{add_noise, NoiseSpec};
    pub use crate::wavecore::{
        fundamental_solution, plane_wave, uniform_circle_directions, Direction, DirectionSet,
        Point3, ScattererSet, WaveConfig,
    };
}
