#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{indicator_of, steering_vector, Projector};
use crate::error::{Error, Result};
use crate::wavecore::{DirectionSet, Point3, WaveConfig};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Region {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl Region {
    pub const DEFAULT: Region = Region {
        xmin: -10.0,
        xmax: 10.0,
        ymin: -10.0,
        ymax: 10.0,
    };

    pub fn from_array(r: [f64; 4]) -> Self {
        Region {
            xmin: r[0],
            xmax: r[1],
            ymin: r[2],
            ymax: r[3],
        }
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.xmin, self.xmax, self.ymin, self.ymax]
    }
}

/// Node count along one axis: `floor((max − min)/step) + 1`, with a small
/// allowance so that `20/0.1` counts 201 nodes despite rounding.
fn axis_len(min: f64, max: f64, step: f64) -> usize {
    ((max - min) / step + 1e-9).floor() as usize + 1
}

/// Indicator values on a planar grid, row-major with rows along `y`
/// (row 0 at `ymin`) and columns along `x`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Heatmap {
    pub region: Region,
    pub step: f64,
    pub plane_z: f64,
    pub nx: usize,
    pub ny: usize,
    pub values: Vec<f64>,
}

impl Heatmap {
    pub fn x(&self, ix: usize) -> f64 {
        self.region.xmin + ix as f64 * self.step
    }

    pub fn y(&self, iy: usize) -> f64 {
        self.region.ymin + iy as f64 * self.step
    }

    pub fn node(&self, ix: usize, iy: usize) -> Point3 {
        Point3 {
            x: self.x(ix),
            y: self.y(iy),
            z: self.plane_z,
        }
    }

    pub fn value(&self, ix: usize, iy: usize) -> f64 {
        self.values[iy * self.nx + ix]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn median(&self) -> f64 {
        let mut v = self.values.clone();
        v.sort_by(f64::total_cmp);
        let n = v.len();
        if n == 0 {
            return f64::NAN;
        }
        if n % 2 == 1 {
            v[n / 2]
        } else {
            0.5 * (v[n / 2 - 1] + v[n / 2])
        }
    }
}

/// Evaluates the indicator at every node of `region` (spacing `step`) in the
/// plane `z = plane_z`. Each node is independent, so the output is identical
/// whatever the thread count.
pub fn scan_grid(
    region: Region,
    step: f64,
    plane_z: f64,
    proj: &Projector,
    dirs: &DirectionSet,
    w: WaveConfig,
) -> Result<Heatmap> {
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::validation(format!(
            "step must be positive, got {step}"
        )));
    }
    let r = region;
    let finite = [r.xmin, r.xmax, r.ymin, r.ymax, plane_z]
        .iter()
        .all(|v| v.is_finite());
    if !finite || r.xmax < r.xmin || r.ymax < r.ymin {
        return Err(Error::validation(format!(
            "empty or invalid scan region {r:?}"
        )));
    }
    if proj.dim() != dirs.len() {
        return Err(Error::DimensionMismatch {
            expected: proj.dim(),
            got: dirs.len(),
        });
    }
    let mut h = Heatmap {
        region,
        step,
        plane_z,
        nx: axis_len(r.xmin, r.xmax, step),
        ny: axis_len(r.ymin, r.ymax, step),
        values: Vec::new(),
    };
    let eval = |i: usize| {
        let z = h.node(i % h.nx, i / h.nx);
        indicator_of(proj, &steering_vector(&z, dirs, w))
    };
    let total = h.nx * h.ny;
    #[cfg(feature = "parallel")]
    let values = (0..total).into_par_iter().map(eval).collect();
    #[cfg(not(feature = "parallel"))]
    let values = (0..total).map(eval).collect();
    h.values = values;
    Ok(h)
}

/// Largest indicator over `truth` divided by the grid median.
pub fn contrast(
    h: &Heatmap,
    truth: &[Point3],
    proj: &Projector,
    dirs: &DirectionSet,
    w: WaveConfig,
) -> Result<f64> {
    let mut best = f64::NEG_INFINITY;
    for z in truth {
        best = best.max(super::indicator(z, proj, dirs, w)?);
    }
    Ok(best / h.median())
}
