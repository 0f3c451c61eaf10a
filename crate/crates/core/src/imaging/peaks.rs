use serde::{Deserialize, Serialize};

use super::Heatmap;
use crate::error::{Error, Result};
use crate::wavecore::Point3;

/// Maxima closer than this many grid steps are merged.
pub const MERGE_RADIUS_STEPS: f64 = 3.0;
pub const DEFAULT_REL_THRESHOLD: f64 = 0.2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Peak {
    pub point: Point3,
    pub indicator: f64,
    pub ix: usize,
    pub iy: usize,
}

/// Strict 8-neighbourhood local maxima at or above `rel_threshold · max`,
/// sorted by descending indicator (row-major order among ties), with
/// maxima within [`MERGE_RADIUS_STEPS`] of a stronger one dropped. At most
/// `expected` peaks are returned when given.
pub fn extract_peaks(
    h: &Heatmap,
    expected: Option<usize>,
    rel_threshold: f64,
) -> Result<Vec<Peak>> {
    if h.is_empty() {
        return Err(Error::validation("heatmap is empty"));
    }
    if !(rel_threshold > 0.0 && rel_threshold <= 1.0) {
        return Err(Error::validation(format!(
            "relative threshold must lie in (0, 1], got {rel_threshold}"
        )));
    }
    let floor = rel_threshold * h.max();
    let mut candidates = Vec::new();
    for iy in 0..h.ny {
        for ix in 0..h.nx {
            let v = h.value(ix, iy);
            if v >= floor && is_strict_max(h, ix, iy) {
                candidates.push(Peak {
                    point: h.node(ix, iy),
                    indicator: v,
                    ix,
                    iy,
                });
            }
        }
    }
    // Stable sort keeps row-major order among equal values.
    candidates.sort_by(|a, b| b.indicator.total_cmp(&a.indicator));

    let radius2 = MERGE_RADIUS_STEPS * MERGE_RADIUS_STEPS + 1e-9;
    let mut kept: Vec<Peak> = Vec::new();
    for c in candidates {
        let near = kept.iter().any(|k| {
            let dx = k.ix as f64 - c.ix as f64;
            let dy = k.iy as f64 - c.iy as f64;
            dx * dx + dy * dy <= radius2
        });
        if !near {
            kept.push(c);
        }
    }
    if let Some(n) = expected {
        kept.truncate(n);
    }
    Ok(kept)
}

fn is_strict_max(h: &Heatmap, ix: usize, iy: usize) -> bool {
    let v = h.value(ix, iy);
    for dy in -1i64..=1 {
        for dx in -1i64..=1 {
            if dx == 0 && dy == 0 {
                continue;
            }
            let (nx, ny) = (ix as i64 + dx, iy as i64 + dy);
            if nx < 0 || ny < 0 || nx >= h.nx as i64 || ny >= h.ny as i64 {
                continue;
            }
            if h.value(nx as usize, ny as usize) >= v {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::imaging::Region;

    fn grid(nx: usize, ny: usize, f: impl Fn(usize, usize) -> f64) -> Heatmap {
        let mut values = Vec::new();
        for iy in 0..ny {
            for ix in 0..nx {
                values.push(f(ix, iy));
            }
        }
        Heatmap {
            region: Region {
                xmin: 0.0,
                xmax: (nx - 1) as f64,
                ymin: 0.0,
                ymax: (ny - 1) as f64,
            },
            step: 1.0,
            plane_z: 0.0,
            nx,
            ny,
            values,
        }
    }

    #[test]
    fn single_interior_maximum() {
        let h = grid(7, 5, |x, y| {
            10.0 - ((x as f64 - 4.0).powi(2) + (y as f64 - 2.0).powi(2))
        });
        let peaks = extract_peaks(&h, None, 0.2).unwrap();
        assert_eq!(peaks.len(), 1);
        assert_eq!((peaks[0].ix, peaks[0].iy), (4, 2));
        assert_eq!(peaks[0].point, Point3::planar(4.0, 2.0));
    }

    #[test]
    fn equal_maxima_ordered_row_major() {
        let h = grid(12, 3, |x, y| {
            if y == 1 && (x == 1 || x == 8) {
                5.0
            } else {
                1.0
            }
        });
        let peaks = extract_peaks(&h, Some(2), 0.2).unwrap();
        assert_eq!(peaks.len(), 2);
        assert_eq!((peaks[0].ix, peaks[1].ix), (1, 8));
        let one = extract_peaks(&h, Some(1), 0.2).unwrap();
        assert_eq!(one[0].ix, 1);
    }

    #[test]
    fn close_maxima_merge_to_larger() {
        let h = grid(12, 3, |x, y| match (x, y) {
            (2, 1) => 4.0,
            (5, 1) => 6.0,
            (9, 1) => 5.0,
            _ => 1.0,
        });
        let peaks = extract_peaks(&h, None, 0.2).unwrap();
        let xs: Vec<usize> = peaks.iter().map(|p| p.ix).collect();
        // x = 2 lies exactly three steps from the stronger x = 5.
        assert_eq!(xs, vec![5, 9]);
    }

    #[test]
    fn threshold_and_plateaus() {
        let h = grid(9, 3, |x, y| match (x, y) {
            (1, 1) => 10.0,
            (7, 1) => 1.5,
            _ => 1.0,
        });
        assert_eq!(extract_peaks(&h, None, 0.2).unwrap().len(), 1);
        assert_eq!(extract_peaks(&h, None, 0.1).unwrap().len(), 2);
        let flat = grid(4, 4, |_, _| 3.0);
        assert!(extract_peaks(&flat, None, 0.5).unwrap().is_empty());
    }

    #[test]
    fn invalid_inputs() {
        let mut h = grid(2, 2, |_, _| 1.0);
        assert!(extract_peaks(&h, None, 0.0).is_err());
        assert!(extract_peaks(&h, None, 1.5).is_err());
        h.values.clear();
        assert!(extract_peaks(&h, None, 0.2).is_err());
    }
}
