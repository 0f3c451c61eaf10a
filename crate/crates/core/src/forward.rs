//! Forward multiple-scattering model for point scatterers.
//!
//! The closed form works with the interaction matrix `P(k, α)`:
//! off-diagonal entries are the Helmholtz kernel between scatterers, the
//! diagonal is `ik/4π − α_j`. With `A = −P⁻¹` the scattered field is
//! `u^s(x, d) = Σ_{m,j} A_{mj} e^{ik y_j·d} Φ_k(x, y_m)` and the far-field
//! pattern drops the kernel's radial factor. [`foldy_lax_total_field`] solves
//! the same problem through the Foldy-Lax self-consistency system instead and
//! shares no matrix with the closed form.

use std::f64::consts::PI;

use nalgebra::DVector;
use num_complex::Complex64;
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::wavecore::{
    kernel_at_distance, plane_wave, Direction, DirectionSet, Point3, ScattererSet, WaveConfig,
};

/// `P` is treated as singular when its reciprocal condition number is at or
/// below this value.
pub const ADMISSIBLE_RCOND: f64 = 1e-12;

/// Minimum `|α_j − ik/4π|` for the Foldy-Lax strength `g_j` to exist.
pub const POLE_TOL: f64 = 1e-12;

/// Above this many scatterers `A` is obtained by LU solves against the
/// identity instead of an explicit inverse.
const EXPLICIT_INVERSE_MAX: usize = 8;

/// The interaction matrix `P(k, α)`.
#[derive(Debug, Clone, PartialEq)]
pub struct InteractionMatrix {
    entries: CMatrix,
    k: f64,
}

impl InteractionMatrix {
    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.entries.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Admissibility {
    pub ok: bool,
    pub rcond: f64,
}

/// `A = −P⁻¹`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScatteringAmplitudeMatrix {
    entries: CMatrix,
}

impl ScatteringAmplitudeMatrix {
    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }
}

/// `H[m][l] = e^{ik y_m·θ_l}`, an `M × N` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SteeringMatrix {
    entries: CMatrix,
}

impl SteeringMatrix {
    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct FarFieldMeta {
    pub noisy: bool,
    pub delta: f64,
    pub seed: Option<u64>,
    /// Name of the generator that produced the perturbation, if any.
    pub generator: Option<String>,
}

/// `F[j][l] = u^∞(θ_j, θ_l)` over one direction set.
#[derive(Debug, Clone, PartialEq)]
pub struct FarFieldMatrix {
    pub entries: CMatrix,
    pub meta: FarFieldMeta,
}

impl FarFieldMatrix {
    pub fn clean(entries: CMatrix) -> Self {
        FarFieldMatrix {
            entries,
            meta: FarFieldMeta::default(),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn singular_values(&self) -> Vec<f64> {
        linalg::singular_values(&self.entries)
    }
}

pub fn build_interaction_matrix(s: &ScattererSet, w: WaveConfig) -> InteractionMatrix {
    let k = w.k();
    let pts = s.points();
    let diag = Complex64::new(0.0, k / (4.0 * PI));
    let entries = CMatrix::from_fn(s.len(), s.len(), |m, j| {
        if m == j {
            diag - s.alphas()[j]
        } else {
            kernel_at_distance(pts[m].distance(&pts[j]), k)
        }
    });
    InteractionMatrix { entries, k }
}

pub fn check_admissible(p: &InteractionMatrix) -> Admissibility {
    let rcond = linalg::rcond(&p.entries);
    Admissibility {
        ok: rcond > ADMISSIBLE_RCOND,
        rcond,
    }
}

pub fn amplitude_matrix(p: &InteractionMatrix) -> Result<ScatteringAmplitudeMatrix> {
    let adm = check_admissible(p);
    if !adm.ok {
        return Err(Error::Inadmissible { rcond: adm.rcond });
    }
    let n = p.len();
    let inv = if n <= EXPLICIT_INVERSE_MAX {
        p.entries.clone().try_inverse()
    } else {
        p.entries.clone().lu().solve(&linalg::identity(n))
    }
    .ok_or(Error::Inadmissible { rcond: adm.rcond })?;
    Ok(ScatteringAmplitudeMatrix { entries: -inv })
}

pub fn steering_matrix(s: &ScattererSet, dirs: &DirectionSet, w: WaveConfig) -> SteeringMatrix {
    let k = w.k();
    let entries = CMatrix::from_fn(s.len(), dirs.len(), |m, l| {
        plane_wave(&s.points()[m], &dirs.as_slice()[l], k)
    });
    SteeringMatrix { entries }
}

/// Foldy-Lax strength `g(k) = 1 / (α − ik/4π)`.
pub fn foldy_lax_strength(alpha: Complex64, k: f64) -> Result<Complex64> {
    let denom = alpha - Complex64::new(0.0, k / (4.0 * PI));
    if denom.norm() <= POLE_TOL {
        return Err(Error::FoldyLaxSingular);
    }
    Ok(denom.inv())
}

/// Closed-form scattering model with `A = −P⁻¹` precomputed.
#[derive(Debug, Clone)]
pub struct ForwardModel {
    scatterers: ScattererSet,
    wave: WaveConfig,
    admissibility: Admissibility,
    amplitude: ScatteringAmplitudeMatrix,
}

impl ForwardModel {
    pub fn new(scatterers: &ScattererSet, wave: WaveConfig) -> Result<Self> {
        let p = build_interaction_matrix(scatterers, wave);
        let admissibility = check_admissible(&p);
        let amplitude = amplitude_matrix(&p)?;
        Ok(ForwardModel {
            scatterers: scatterers.clone(),
            wave,
            admissibility,
            amplitude,
        })
    }

    pub fn scatterers(&self) -> &ScattererSet {
        &self.scatterers
    }

    pub fn wave(&self) -> WaveConfig {
        self.wave
    }

    pub fn admissibility(&self) -> Admissibility {
        self.admissibility
    }

    pub fn amplitude(&self) -> &ScatteringAmplitudeMatrix {
        &self.amplitude
    }

    /// `(A · e)_m` with `e_j = e^{ik y_j·d}`.
    fn excitation(&self, d: &Direction) -> Vec<Complex64> {
        let k = self.wave.k();
        let a = self.amplitude.entries();
        let phases: Vec<Complex64> = self
            .scatterers
            .points()
            .iter()
            .map(|y| plane_wave(y, d, k))
            .collect();
        (0..a.nrows())
            .map(|m| (0..a.ncols()).map(|j| a[(m, j)] * phases[j]).sum())
            .collect()
    }

    pub fn scattered_field(&self, x: &Point3, d: &Direction) -> Result<Complex64> {
        let k = self.wave.k();
        let pts = self.scatterers.points();
        if let Some(index) = pts.iter().position(|y| y.distance(x) == 0.0) {
            return Err(Error::SourcePoint { index });
        }
        let ex = self.excitation(d);
        Ok(pts
            .iter()
            .zip(&ex)
            .map(|(y, e)| e * kernel_at_distance(x.distance(y), k))
            .sum())
    }

    pub fn total_field(&self, x: &Point3, d: &Direction) -> Result<Complex64> {
        Ok(plane_wave(x, d, self.wave.k()) + self.scattered_field(x, d)?)
    }

    pub fn far_field_pattern(&self, obs: &Direction, d: &Direction) -> Complex64 {
        let k = self.wave.k();
        let ex = self.excitation(d);
        self.scatterers
            .points()
            .iter()
            .zip(&ex)
            .map(|(y, e)| e * plane_wave(y, obs, -k))
            .sum()
    }

    /// Far-field matrix over `dirs` (incidence along columns, observation
    /// along rows). Entries are computed independently, so the result does
    /// not depend on how rows are partitioned across threads.
    pub fn far_field_matrix(&self, dirs: &DirectionSet) -> FarFieldMatrix {
        let k = self.wave.k();
        let n = dirs.len();
        let pts = self.scatterers.points();
        let excitations: Vec<Vec<Complex64>> = dirs.iter().map(|d| self.excitation(d)).collect();
        let row = |j: usize| -> Vec<Complex64> {
            let obs = &dirs.as_slice()[j];
            let back: Vec<Complex64> = pts.iter().map(|y| plane_wave(y, obs, -k)).collect();
            excitations
                .iter()
                .map(|ex| ex.iter().zip(&back).map(|(e, b)| e * b).sum())
                .collect()
        };
        #[cfg(feature = "parallel")]
        let rows: Vec<Vec<Complex64>> = (0..n).into_par_iter().map(row).collect();
        #[cfg(not(feature = "parallel"))]
        let rows: Vec<Vec<Complex64>> = (0..n).map(row).collect();
        FarFieldMatrix::clean(CMatrix::from_fn(n, n, |j, l| rows[j][l]))
    }
}

pub fn scattered_field(
    x: &Point3,
    d: &Direction,
    s: &ScattererSet,
    w: WaveConfig,
) -> Result<Complex64> {
    ForwardModel::new(s, w)?.scattered_field(x, d)
}

pub fn total_field(
    x: &Point3,
    d: &Direction,
    s: &ScattererSet,
    w: WaveConfig,
) -> Result<Complex64> {
    ForwardModel::new(s, w)?.total_field(x, d)
}

pub fn far_field_pattern(
    obs: &Direction,
    d: &Direction,
    s: &ScattererSet,
    w: WaveConfig,
) -> Result<Complex64> {
    Ok(ForwardModel::new(s, w)?.far_field_pattern(obs, d))
}

pub fn synthesize_far_field(
    dirs: &DirectionSet,
    s: &ScattererSet,
    w: WaveConfig,
) -> Result<FarFieldMatrix> {
    Ok(ForwardModel::new(s, w)?.far_field_matrix(dirs))
}

/// Foldy-Lax coefficients `C_j`: the field exciting scatterer `j`.
pub fn foldy_lax_coefficients(
    d: &Direction,
    s: &ScattererSet,
    w: WaveConfig,
) -> Result<Vec<Complex64>> {
    let k = w.k();
    let pts = s.points();
    let g = s
        .alphas()
        .iter()
        .map(|&a| foldy_lax_strength(a, k))
        .collect::<Result<Vec<_>>>()?;
    let m = s.len();
    let j_mat = CMatrix::from_fn(m, m, |j, i| {
        if i == j {
            Complex64::new(1.0, 0.0)
        } else {
            -g[i] * kernel_at_distance(pts[j].distance(&pts[i]), k)
        }
    });
    if linalg::rcond(&j_mat) <= ADMISSIBLE_RCOND {
        return Err(Error::FoldyLaxSingular);
    }
    let rhs = DVector::from_iterator(m, pts.iter().map(|y| plane_wave(y, d, k)));
    let c = j_mat.lu().solve(&rhs).ok_or(Error::FoldyLaxSingular)?;
    Ok(c.iter().copied().collect())
}

/// Total field from the Foldy-Lax system, independent of [`total_field`].
pub fn foldy_lax_total_field(
    x: &Point3,
    d: &Direction,
    s: &ScattererSet,
    w: WaveConfig,
) -> Result<Complex64> {
    let k = w.k();
    let pts = s.points();
    if let Some(index) = pts.iter().position(|y| y.distance(x) == 0.0) {
        return Err(Error::SourcePoint { index });
    }
    let c = foldy_lax_coefficients(d, s, w)?;
    let mut u = plane_wave(x, d, k);
    for ((y, &alpha), cj) in pts.iter().zip(s.alphas()).zip(&c) {
        u += foldy_lax_strength(alpha, k)? * cj * kernel_at_distance(x.distance(y), k);
    }
    Ok(u)
}

/// Single-scattering far-field matrix
/// `F[j][l] = Σ_m τ_m e^{ik(y_m·θ_l − θ_j·y_m)}`.
///
/// Strengths default to the Foldy-Lax `g_m(k)` when `strengths` is `None`.
pub fn born_far_field(
    dirs: &DirectionSet,
    s: &ScattererSet,
    w: WaveConfig,
    strengths: Option<&[Complex64]>,
) -> Result<FarFieldMatrix> {
    let k = w.k();
    let tau: Vec<Complex64> = match strengths {
        Some(t) if t.len() != s.len() => {
            return Err(Error::DimensionMismatch {
                expected: s.len(),
                got: t.len(),
            })
        }
        Some(t) => t.to_vec(),
        None => s
            .alphas()
            .iter()
            .map(|&a| foldy_lax_strength(a, k))
            .collect::<Result<_>>()?,
    };
    let h = steering_matrix(s, dirs, w);
    let h = h.entries();
    let n = dirs.len();
    let entries = CMatrix::from_fn(n, n, |j, l| {
        (0..s.len())
            .map(|m| tau[m] * h[(m, l)] * h[(m, j)].conj())
            .sum()
    });
    Ok(FarFieldMatrix::clean(entries))
}
