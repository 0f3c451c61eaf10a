//! Seeded complex uniform measurement noise.
//!
//! Each entry is perturbed by `δ · max|F_ij| · (u₁ + i u₂)` with `u₁, u₂`
//! independent draws from `U[−1, 1]`. Draws are consumed in row-major order
//! (real part first), so the output is a pure function of `(F, δ, seed)`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forward::{FarFieldMatrix, FarFieldMeta};

/// Recorded in [`FarFieldMeta::generator`] and run reports.
pub const GENERATOR: &str = "ChaCha8Rng::seed_from_u64 / uniform f64 in [-1, 1]";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseSpec {
    delta: f64,
    seed: u64,
}

impl NoiseSpec {
    pub fn new(delta: f64, seed: u64) -> Result<Self> {
        if !(delta.is_finite() && delta >= 0.0) {
            return Err(Error::validation(format!(
                "noise factor must be finite and non-negative, got {delta}"
            )));
        }
        Ok(NoiseSpec { delta, seed })
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

pub fn add_noise(f: &FarFieldMatrix, spec: NoiseSpec) -> FarFieldMatrix {
    let scale = spec.delta * f.max_abs();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let (rows, cols) = f.entries.shape();
    let mut entries = f.entries.clone();
    for i in 0..rows {
        for j in 0..cols {
            let re: f64 = rng.random_range(-1.0..=1.0);
            let im: f64 = rng.random_range(-1.0..=1.0);
            if scale != 0.0 {
                entries[(i, j)] += Complex64::new(re, im) * scale;
            }
        }
    }
    FarFieldMatrix {
        entries,
        meta: FarFieldMeta {
            noisy: true,
            delta: spec.delta,
            seed: Some(spec.seed),
            generator: Some(GENERATOR.to_string()),
        },
    }
}
