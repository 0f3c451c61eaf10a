//! Thin helpers over nalgebra's complex SVD.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;

/// Full SVD `F = U Σ V*` with singular values sorted in descending order.
#[derive(Debug, Clone)]
pub struct SortedSvd {
    pub u: CMatrix,
    pub singular_values: Vec<f64>,
    /// Rows are the right singular vectors (conjugated), i.e. `V*`.
    pub v_t: CMatrix,
}

impl SortedSvd {
    pub fn new(m: &CMatrix) -> Self {
        let svd = m.clone().svd(true, true);
        let u = svd.u.expect("u requested");
        let v_t = svd.v_t.expect("v_t requested");
        let sv: Vec<f64> = svd.singular_values.iter().copied().collect();

        let mut order: Vec<usize> = (0..sv.len()).collect();
        order.sort_by(|&a, &b| sv[b].total_cmp(&sv[a]));

        let u = CMatrix::from_fn(u.nrows(), order.len(), |i, j| u[(i, order[j])]);
        let v_t = CMatrix::from_fn(order.len(), v_t.ncols(), |i, j| v_t[(order[i], j)]);
        let singular_values = order.iter().map(|&i| sv[i]).collect();
        SortedSvd {
            u,
            singular_values,
            v_t,
        }
    }
}

/// Descending singular values.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Count of singular values strictly above `rel_tol · σ₁`.
pub fn numerical_rank(sv: &[f64], rel_tol: f64) -> usize {
    match sv.first() {
        Some(&s1) if s1 > 0.0 => sv.iter().filter(|&&s| s > rel_tol * s1).count(),
        _ => 0,
    }
}

/// Reciprocal 2-norm condition number `σ_min / σ_max` (0 for a zero matrix).
pub fn rcond(m: &CMatrix) -> f64 {
    let sv = singular_values(m);
    match (sv.first(), sv.last()) {
        (Some(&hi), Some(&lo)) if hi > 0.0 => lo / hi,
        _ => 0.0,
    }
}

pub fn frobenius(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorted_svd_reconstructs() {
        let m = CMatrix::from_fn(4, 4, |i, j| {
            Complex64::new(
                (i * 3 + j) as f64 * 0.37 - 1.0,
                ((i + 2 * j) % 5) as f64 - 2.0,
            )
        });
        let svd = SortedSvd::new(&m);
        for w in svd.singular_values.windows(2) {
            assert!(w[0] >= w[1]);
        }
        let sigma = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            4,
            svd.singular_values.iter().map(|&s| Complex64::new(s, 0.0)),
        ));
        let back = &svd.u * sigma * &svd.v_t;
        assert!(frobenius(&(back - &m)) < 1e-12 * frobenius(&m));
    }

    #[test]
    fn rank_and_rcond() {
        let ones = CMatrix::from_element(3, 3, Complex64::new(1.0, 0.0));
        let sv = singular_values(&ones);
        assert_eq!(numerical_rank(&sv, 1e-10), 1);
        assert!(rcond(&ones) < 1e-15);
        assert_eq!(numerical_rank(&[], 1e-10), 0);
        assert_eq!(rcond(&identity(3)), 1.0);
    }
}
