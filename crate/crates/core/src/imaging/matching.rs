use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::wavecore::Point3;

/// Exact minimum-cost assignment is used when the smaller list has at most
/// this many entries; beyond it a greedy closest-pair match takes over.
const EXACT_LIMIT: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MatchedPair {
    pub estimate: usize,
    pub truth: usize,
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Matching {
    /// Sorted by truth index.
    pub pairs: Vec<MatchedPair>,
    pub unmatched_estimates: Vec<usize>,
    pub unmatched_truth: Vec<usize>,
}

impl Matching {
    /// Per-pair distances in truth order.
    pub fn errors(&self) -> Vec<f64> {
        self.pairs.iter().map(|p| p.distance).collect()
    }

    pub fn max_error(&self) -> Option<f64> {
        self.pairs.iter().map(|p| p.distance).reduce(f64::max)
    }

    /// Estimate index matched to each truth index.
    pub fn estimate_for_truth(&self, truth: usize) -> Option<&MatchedPair> {
        self.pairs.iter().find(|p| p.truth == truth)
    }

    pub fn pair_for_estimate(&self, estimate: usize) -> Option<&MatchedPair> {
        self.pairs.iter().find(|p| p.estimate == estimate)
    }
}

/// One-to-one assignment between `estimates` and `truth` minimizing the
/// total distance. When the counts differ the surplus entries of the longer
/// list are reported as unmatched.
pub fn localization_error(estimates: &[Point3], truth: &[Point3]) -> Result<Matching> {
    if estimates.is_empty() || truth.is_empty() {
        return Err(Error::validation(
            "localization needs non-empty estimate and truth lists",
        ));
    }
    // Assign every element of the shorter list (rows) to a distinct element
    // of the longer one (cols).
    let swap = estimates.len() > truth.len();
    let (rows, cols) = if swap {
        (truth, estimates)
    } else {
        (estimates, truth)
    };
    let cost: Vec<Vec<f64>> = rows
        .iter()
        .map(|r| cols.iter().map(|c| r.distance(c)).collect())
        .collect();
    let assign = if rows.len() <= EXACT_LIMIT {
        exact_assignment(&cost, cols.len())
    } else {
        greedy_assignment(&cost, cols.len())
    };

    let mut pairs: Vec<MatchedPair> = assign
        .iter()
        .enumerate()
        .map(|(r, &c)| {
            let (estimate, truth) = if swap { (c, r) } else { (r, c) };
            MatchedPair {
                estimate,
                truth,
                distance: cost[r][c],
            }
        })
        .collect();
    pairs.sort_by_key(|p| p.truth);

    let unmatched_estimates = (0..estimates.len())
        .filter(|&e| !pairs.iter().any(|p| p.estimate == e))
        .collect();
    let unmatched_truth = (0..truth.len())
        .filter(|&t| !pairs.iter().any(|p| p.truth == t))
        .collect();
    Ok(Matching {
        pairs,
        unmatched_estimates,
        unmatched_truth,
    })
}

/// Dynamic programme over columns and subsets of rows: after column `c`,
/// `best[mask]` is the cheapest placement of the rows in `mask` onto
/// columns `0..=c`. Equivalent to exhaustive search over injections.
fn exact_assignment(cost: &[Vec<f64>], ncols: usize) -> Vec<usize> {
    let nrows = cost.len();
    let full = 1usize << nrows;
    let mut best = vec![f64::INFINITY; full];
    best[0] = 0.0;
    // choice[c][mask]: row placed on column c in the optimum for `mask`
    // after column c, or None when column c stays unused.
    let mut choice = vec![vec![None::<usize>; full]; ncols];
    for (c, choice_c) in choice.iter_mut().enumerate() {
        let prev = best.clone();
        for mask in 0..full {
            if prev[mask].is_infinite() {
                continue;
            }
            for (r, row) in cost.iter().enumerate() {
                let bit = 1 << r;
                if mask & bit != 0 {
                    continue;
                }
                let v = prev[mask] + row[c];
                if v < best[mask | bit] {
                    best[mask | bit] = v;
                    choice_c[mask | bit] = Some(r);
                }
            }
        }
    }
    let mut assign = vec![0; nrows];
    let mut mask = full - 1;
    for c in (0..ncols).rev() {
        if let Some(r) = choice[c][mask] {
            assign[r] = c;
            mask &= !(1 << r);
        }
    }
    debug_assert_eq!(mask, 0);
    assign
}

fn greedy_assignment(cost: &[Vec<f64>], ncols: usize) -> Vec<usize> {
    let mut all: Vec<(f64, usize, usize)> = cost
        .iter()
        .enumerate()
        .flat_map(|(r, row)| row.iter().enumerate().map(move |(c, &d)| (d, r, c)))
        .collect();
    all.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut assign = vec![usize::MAX; cost.len()];
    let mut used = vec![false; ncols];
    for (_, r, c) in all {
        if assign[r] == usize::MAX && !used[c] {
            assign[r] = c;
            used[c] = true;
        }
    }
    assign
}
