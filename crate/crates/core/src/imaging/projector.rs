use nalgebra::DVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forward::FarFieldMatrix;
use crate::linalg::{self, CMatrix, SortedSvd};

/// How many leading singular vectors of `F` span the signal subspace.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "policy", rename_all = "kebab-case")]
pub enum RankPolicy {
    /// Keep `σ_i > tolerance · σ₁`.
    ExactRank {
        tolerance: f64,
    },
    FixedRank {
        rank: usize,
    },
    /// Split at the largest ratio `σ_i / σ_{i+1}` with `i ≤ cap`.
    LargestGap {
        cap: usize,
    },
}

impl RankPolicy {
    /// Fixed rank when the source count is known, otherwise largest gap
    /// below `N`.
    pub fn default_for(n: usize, known_sources: Option<usize>) -> Self {
        match known_sources {
            Some(m) => RankPolicy::FixedRank { rank: m },
            None => RankPolicy::LargestGap {
                cap: n.saturating_sub(1).max(1),
            },
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        match *self {
            RankPolicy::ExactRank { tolerance } if !(tolerance > 0.0 && tolerance < 1.0) => {
                Err(Error::validation(format!(
                    "exact-rank tolerance must lie in (0, 1), got {tolerance}"
                )))
            }
            RankPolicy::FixedRank { rank } if rank == 0 || rank > n => Err(Error::validation(
                format!("fixed rank must lie in 1..={n}, got {rank}"),
            )),
            RankPolicy::LargestGap { cap } if cap == 0 || cap > n => Err(Error::validation(
                format!("largest-gap cap must lie in 1..={n}, got {cap}"),
            )),
            _ => Ok(()),
        }
    }
}

/// Rank selected by `policy` from descending singular values.
pub fn select_rank(sv: &[f64], policy: RankPolicy) -> usize {
    match policy {
        RankPolicy::ExactRank { tolerance } => linalg::numerical_rank(sv, tolerance),
        RankPolicy::FixedRank { rank } => rank.min(sv.len()),
        RankPolicy::LargestGap { cap } => {
            let last = cap.min(sv.len().saturating_sub(1));
            // Values below the roundoff level count as that level, so gaps
            // inside the numerically-zero tail (often exact zeros) read as 1.
            let floor = (sv.first().copied().unwrap_or(0.0) * sv.len() as f64 * f64::EPSILON)
                .max(f64::MIN_POSITIVE);
            let mut best = (1, f64::NEG_INFINITY);
            for i in 1..=last {
                let ratio = sv[i - 1].max(floor) / sv[i].max(floor);
                if ratio > best.1 {
                    best = (i, ratio);
                }
            }
            best.0
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProjectorSource {
    #[serde(rename = "svd")]
    SvdRange,
    #[serde(rename = "pinv")]
    PseudoInverse,
}

/// Orthogonal projection onto the complement of the selected signal
/// subspace of `F`.
#[derive(Debug, Clone, PartialEq)]
pub struct Projector {
    matrix: CMatrix,
    rank_used: usize,
    policy: RankPolicy,
    source: ProjectorSource,
    singular_values: Vec<f64>,
}

/// Relative residuals of the projector laws.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProjectorLaws {
    /// `‖Π² − Π‖_F / ‖Π‖_F`
    pub idempotency: f64,
    /// `‖Π* − Π‖_F / ‖Π‖_F`
    pub self_adjointness: f64,
}

impl ProjectorLaws {
    pub fn hold(&self, tol: f64) -> bool {
        self.idempotency <= tol && self.self_adjointness <= tol
    }
}

impl Projector {
    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn rank_used(&self) -> usize {
        self.rank_used
    }

    pub fn policy(&self) -> RankPolicy {
        self.policy
    }

    pub fn source(&self) -> ProjectorSource {
        self.source
    }

    /// Singular values of the `F` this projector was built from.
    pub fn singular_values(&self) -> &[f64] {
        &self.singular_values
    }

    /// `‖Π v‖₂`.
    pub fn residual_norm(&self, v: &[Complex64]) -> f64 {
        let n = self.dim();
        debug_assert_eq!(v.len(), n);
        // Column-major storage: accumulate Π v column by column.
        let data = self.matrix.as_slice();
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for (col, &vj) in data.chunks_exact(n).zip(v) {
            for (o, &p) in out.iter_mut().zip(col) {
                *o += p * vj;
            }
        }
        out.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn laws(&self) -> ProjectorLaws {
        let p = &self.matrix;
        // Relative for genuine projectors; absolute when Π is (numerically) 0.
        let scale = linalg::frobenius(p).max(1.0);
        ProjectorLaws {
            idempotency: linalg::frobenius(&(p * p - p)) / scale,
            self_adjointness: linalg::frobenius(&(p.adjoint() - p)) / scale,
        }
    }

    /// `Π = I`: no signal subspace removed.
    pub fn trivial(n: usize) -> Self {
        Projector {
            matrix: linalg::identity(n),
            rank_used: 0,
            policy: RankPolicy::FixedRank { rank: 0 },
            source: ProjectorSource::SvdRange,
            singular_values: Vec::new(),
        }
    }

    /// `Π = 0`: the whole space declared signal.
    pub fn null(n: usize) -> Self {
        Projector {
            matrix: CMatrix::zeros(n, n),
            rank_used: n,
            policy: RankPolicy::FixedRank { rank: n },
            source: ProjectorSource::SvdRange,
            singular_values: Vec::new(),
        }
    }
}

fn decompose(f: &FarFieldMatrix, policy: RankPolicy) -> Result<(SortedSvd, usize)> {
    let n = f.dim();
    if f.entries.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: f.entries.ncols(),
        });
    }
    policy.validate(n)?;
    if f.max_abs() == 0.0 {
        return Err(Error::DegenerateData);
    }
    let svd = SortedSvd::new(&f.entries);
    let r = select_rank(&svd.singular_values, policy);
    Ok((svd, r))
}

/// `Π = I − Σ_{i≤r} q_i q_i*` from the leading left singular vectors.
pub fn svd_range_projector(f: &FarFieldMatrix, policy: RankPolicy) -> Result<Projector> {
    let (svd, r) = decompose(f, policy)?;
    let n = f.dim();
    let q = svd.u.columns(0, r);
    let matrix = linalg::identity(n) - q * q.adjoint();
    Ok(Projector {
        matrix,
        rank_used: r,
        policy,
        source: ProjectorSource::SvdRange,
        singular_values: svd.singular_values,
    })
}

/// `Q = I − F F†` with `F†` the pseudo-inverse truncated to the policy rank.
pub fn pseudo_inverse_projector(f: &FarFieldMatrix, policy: RankPolicy) -> Result<Projector> {
    let (svd, r) = decompose(f, policy)?;
    let n = f.dim();
    let inv_sigma = DVector::from_iterator(
        r,
        svd.singular_values[..r]
            .iter()
            .map(|&s| Complex64::new(1.0 / s, 0.0)),
    );
    let v_r = svd.v_t.rows(0, r).adjoint();
    let u_r_adj = svd.u.columns(0, r).adjoint();
    let pinv = v_r * CMatrix::from_diagonal(&inv_sigma) * u_r_adj;
    let matrix = linalg::identity(n) - &f.entries * pinv;
    Ok(Projector {
        matrix,
        rank_used: r,
        policy,
        source: ProjectorSource::PseudoInverse,
        singular_values: svd.singular_values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forward::synthesize_far_field;
    use crate::imaging::{indicator, steering_vector};
    use crate::noise::{add_noise, NoiseSpec};
    use crate::wavecore::{uniform_circle_directions, Point3, ScattererSet, WaveConfig};
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn three_sources() -> ScattererSet {
        ScattererSet::new(
            vec![
                Point3::planar(5.0, 0.0),
                Point3::planar(-5.0, 0.0),
                Point3::planar(3.0, 9.0),
            ],
            vec![c(1.0, 1.0), c(3.0, 5.0), c(-1.0, 5.0)],
        )
        .unwrap()
    }

    fn w() -> WaveConfig {
        WaveConfig::new(2.0 * PI).unwrap()
    }

    fn ones2() -> FarFieldMatrix {
        FarFieldMatrix::clean(CMatrix::from_element(2, 2, c(1.0, 0.0)))
    }

    fn assert_half_matrix(p: &Projector) {
        let expect = [[0.5, -0.5], [-0.5, 0.5]];
        for i in 0..2 {
            for j in 0..2 {
                assert!((p.matrix()[(i, j)] - c(expect[i][j], 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn rank_one_projectors() {
        let exact = RankPolicy::ExactRank { tolerance: 1e-8 };
        let p = svd_range_projector(&ones2(), exact).unwrap();
        assert_eq!(p.rank_used(), 1);
        assert_half_matrix(&p);
        let q = pseudo_inverse_projector(&ones2(), exact).unwrap();
        assert_eq!(q.rank_used(), 1);
        assert_half_matrix(&q);
    }

    #[test]
    fn zero_data_is_degenerate() {
        let zero = FarFieldMatrix::clean(CMatrix::zeros(3, 3));
        let pol = RankPolicy::FixedRank { rank: 1 };
        assert!(matches!(
            svd_range_projector(&zero, pol),
            Err(Error::DegenerateData)
        ));
        assert!(matches!(
            pseudo_inverse_projector(&zero, pol),
            Err(Error::DegenerateData)
        ));
    }

    #[test]
    fn policy_validation() {
        assert!(RankPolicy::ExactRank { tolerance: 0.0 }
            .validate(4)
            .is_err());
        assert!(RankPolicy::ExactRank { tolerance: 1.0 }
            .validate(4)
            .is_err());
        assert!(RankPolicy::FixedRank { rank: 0 }.validate(4).is_err());
        assert!(RankPolicy::FixedRank { rank: 5 }.validate(4).is_err());
        assert!(RankPolicy::LargestGap { cap: 5 }.validate(4).is_err());
        assert!(RankPolicy::LargestGap { cap: 4 }.validate(4).is_ok());
        assert_eq!(
            RankPolicy::default_for(20, None),
            RankPolicy::LargestGap { cap: 19 }
        );
        assert_eq!(
            RankPolicy::default_for(20, Some(3)),
            RankPolicy::FixedRank { rank: 3 }
        );
    }

    #[test]
    fn rank_selection_rules() {
        let sv = [10.0, 5.0, 4.0, 1e-3, 5e-4, 0.0];
        assert_eq!(
            select_rank(&sv, RankPolicy::ExactRank { tolerance: 1e-3 }),
            3
        );
        assert_eq!(select_rank(&sv, RankPolicy::FixedRank { rank: 2 }), 2);
        // σ₆ = 0 is floored at roundoff, so σ₅/σ₆ is still the widest gap.
        assert_eq!(select_rank(&sv, RankPolicy::LargestGap { cap: 5 }), 5);
        assert_eq!(select_rank(&sv, RankPolicy::LargestGap { cap: 4 }), 3);
        assert_eq!(select_rank(&[3.0], RankPolicy::LargestGap { cap: 1 }), 1);
    }

    #[test]
    fn largest_gap_ignores_the_roundoff_tail() {
        let sv = [19.0, 3.9, 2.3, 2.2e-15, 8.8e-16, 2.1e-16, 0.0, 0.0];
        assert_eq!(select_rank(&sv, RankPolicy::LargestGap { cap: 7 }), 3);
        assert_eq!(select_rank(&[0.0; 4], RankPolicy::LargestGap { cap: 3 }), 1);
    }

    #[test]
    fn clean_three_source_data_has_rank_three() {
        let dirs = uniform_circle_directions(20).unwrap();
        let f = synthesize_far_field(&dirs, &three_sources(), w()).unwrap();
        let exact = RankPolicy::ExactRank { tolerance: 1e-8 };
        let p = svd_range_projector(&f, exact).unwrap();
        assert_eq!(p.rank_used(), 3);
        let q = pseudo_inverse_projector(&f, exact).unwrap();
        for y in three_sources().points() {
            let phi = steering_vector(y, &dirs, w());
            assert!(q.residual_norm(phi.entries()) <= 1e-8);
            assert!(indicator(y, &q, &dirs, w()).unwrap() >= 1e8);
        }
        let path_gap = linalg::frobenius(&(p.matrix() - q.matrix()));
        assert!(path_gap <= 1e-10 * (20f64).sqrt());
        assert!(p.laws().hold(1e-10) && q.laws().hold(1e-10));
    }

    #[test]
    fn tiny_noise_fills_exact_rank() {
        let dirs = uniform_circle_directions(20).unwrap();
        let f = synthesize_far_field(&dirs, &three_sources(), w()).unwrap();
        let noisy = add_noise(&f, NoiseSpec::new(0.001, 1).unwrap());
        let p = svd_range_projector(&noisy, RankPolicy::ExactRank { tolerance: 1e-8 }).unwrap();
        assert_eq!(p.rank_used(), 20);
        assert!(linalg::frobenius(p.matrix()) < 1e-12);
    }

    #[test]
    fn projector_laws_hold_for_both_paths() {
        let dirs = uniform_circle_directions(16).unwrap();
        let f = synthesize_far_field(&dirs, &three_sources(), w()).unwrap();
        let noisy = add_noise(&f, NoiseSpec::new(0.05, 9).unwrap());
        for pol in [
            RankPolicy::ExactRank { tolerance: 1e-3 },
            RankPolicy::FixedRank { rank: 3 },
            RankPolicy::FixedRank { rank: 7 },
            RankPolicy::LargestGap { cap: 15 },
        ] {
            let p = svd_range_projector(&noisy, pol).unwrap();
            let q = pseudo_inverse_projector(&noisy, pol).unwrap();
            assert_eq!(p.rank_used(), q.rank_used());
            assert!(p.laws().hold(1e-10), "{pol:?} {:?}", p.laws());
            assert!(q.laws().hold(1e-10), "{pol:?} {:?}", q.laws());
            assert!(linalg::frobenius(&(p.matrix() - q.matrix())) <= 1e-10 * 4.0);
            // rank(I − Π) = r: trace of a projector equals its rank.
            let trace: Complex64 = (0..16).map(|i| p.matrix()[(i, i)]).sum();
            assert!((trace.re - (16 - p.rank_used()) as f64).abs() < 1e-9);
        }
    }

    #[test]
    fn source_serializes_to_short_names() {
        assert_eq!(
            serde_json::to_string(&ProjectorSource::SvdRange).unwrap(),
            "\"svd\""
        );
        assert_eq!(
            serde_json::to_string(&ProjectorSource::PseudoInverse).unwrap(),
            "\"pinv\""
        );
    }
}
