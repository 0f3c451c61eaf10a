//! Geometric and wave primitives.
//!
//! Lengths are dimensionless; the wavelength `2π/k` sets the physical scale.
//! Everything here is a plain value type, so all functions are safe to call
//! from any number of threads.

use std::f64::consts::PI;
use std::ops::Sub;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on `‖u‖ = 1` for [`Direction`].
pub const UNIT_TOL: f64 = 1e-12;

/// A point in R³.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const ORIGIN: Point3 = Point3 {
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        if !(x.is_finite() && y.is_finite() && z.is_finite()) {
            return Err(Error::validation(format!(
                "point ({x}, {y}, {z}) has a non-finite coordinate"
            )));
        }
        Ok(Point3 { x, y, z })
    }

    /// Planar point embedded at `z = 0`.
    pub const fn planar(x: f64, y: f64) -> Self {
        Point3 { x, y, z: 0.0 }
    }

    pub fn dot(&self, d: &Direction) -> f64 {
        self.x * d.ux + self.y * d.uy + self.z * d.uz
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn distance(&self, other: &Point3) -> f64 {
        (*self - *other).norm()
    }

    pub fn translate(&self, t: [f64; 3]) -> Point3 {
        Point3 {
            x: self.x + t[0],
            y: self.y + t[1],
            z: self.z + t[2],
        }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

impl Sub for Point3 {
    type Output = Point3;

    fn sub(self, rhs: Point3) -> Point3 {
        Point3 {
            x: self.x - rhs.x,
            y: self.y - rhs.y,
            z: self.z - rhs.z,
        }
    }
}

/// A unit vector on S².
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Direction {
    pub ux: f64,
    pub uy: f64,
    pub uz: f64,
}

impl Direction {
    /// Normalizes `(x, y, z)`; zero or non-finite input is rejected.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let n = (x * x + y * y + z * z).sqrt();
        if !n.is_finite() || n == 0.0 {
            return Err(Error::validation(format!(
                "direction ({x}, {y}, {z}) cannot be normalized"
            )));
        }
        Ok(Direction {
            ux: x / n,
            uy: y / n,
            uz: z / n,
        })
    }

    /// Direction of a non-zero point, i.e. `x̂ = x/|x|`.
    pub fn of_point(p: &Point3) -> Result<Self> {
        Direction::new(p.x, p.y, p.z)
    }

    /// In-plane unit vector at polar angle `phi`.
    pub fn from_angle(phi: f64) -> Self {
        Direction {
            ux: phi.cos(),
            uy: phi.sin(),
            uz: 0.0,
        }
    }

    pub fn dot(&self, other: &Direction) -> f64 {
        self.ux * other.ux + self.uy * other.uy + self.uz * other.uz
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }
}

/// Wavenumber `k = ω/c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveConfig {
    k: f64,
}

impl WaveConfig {
    pub fn new(k: f64) -> Result<Self> {
        if !(k.is_finite() && k > 0.0) {
            return Err(Error::validation(format!(
                "wavenumber must be positive and finite, got {k}"
            )));
        }
        Ok(WaveConfig { k })
    }

    pub fn k(&self) -> f64 {
        self.k
    }
}

/// Point scatterers `y_m` with scattering coefficients `α_m`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScattererSet {
    points: Vec<Point3>,
    alphas: Vec<Complex64>,
}

impl ScattererSet {
    pub fn new(points: Vec<Point3>, alphas: Vec<Complex64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::validation("scatterer set must not be empty"));
        }
        if points.len() != alphas.len() {
            return Err(Error::validation(format!(
                "{} positions but {} scattering coefficients",
                points.len(),
                alphas.len()
            )));
        }
        for (j, p) in points.iter().enumerate() {
            Point3::new(p.x, p.y, p.z)?;
            for (m, q) in points.iter().enumerate().take(j) {
                if p.distance(q) == 0.0 {
                    return Err(Error::validation(format!(
                        "scatterers {m} and {j} coincide"
                    )));
                }
            }
        }
        for (j, a) in alphas.iter().enumerate() {
            if !(a.re.is_finite() && a.im.is_finite()) {
                return Err(Error::validation(format!("alpha[{j}] is not finite")));
            }
            if a.im < 0.0 {
                return Err(Error::validation(format!(
                    "alpha[{j}] = {a} has negative imaginary part"
                )));
            }
        }
        Ok(ScattererSet { points, alphas })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point3] {
        &self.points
    }

    pub fn alphas(&self) -> &[Complex64] {
        &self.alphas
    }

    /// Same coefficients, every position shifted by `t`.
    pub fn translated(&self, t: [f64; 3]) -> Self {
        ScattererSet {
            points: self.points.iter().map(|p| p.translate(t)).collect(),
            alphas: self.alphas.clone(),
        }
    }
}

/// Incidence/observation directions `θ_1..θ_N`.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectionSet {
    dirs: Vec<Direction>,
}

impl DirectionSet {
    pub fn new(dirs: Vec<Direction>) -> Result<Self> {
        if dirs.is_empty() {
            return Err(Error::validation("direction set must not be empty"));
        }
        for (j, d) in dirs.iter().enumerate() {
            if (d.norm() - 1.0).abs() > UNIT_TOL {
                return Err(Error::validation(format!(
                    "direction {j} is not a unit vector"
                )));
            }
            if dirs[..j].iter().any(|e| e == d) {
                return Err(Error::validation(format!("direction {j} is repeated")));
            }
        }
        Ok(DirectionSet { dirs })
    }

    pub fn len(&self) -> usize {
        self.dirs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dirs.is_empty()
    }

    pub fn as_slice(&self) -> &[Direction] {
        &self.dirs
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Direction> {
        self.dirs.iter()
    }
}

/// Helmholtz fundamental solution `Φ_k(x, y) = e^{ik|x−y|} / (4π|x−y|)`.
pub fn fundamental_solution(x: &Point3, y: &Point3, k: f64) -> Result<Complex64> {
    let r = x.distance(y);
    if r == 0.0 {
        return Err(Error::SingularKernel);
    }
    Ok(kernel_at_distance(r, k))
}

#[inline]
pub(crate) fn kernel_at_distance(r: f64, k: f64) -> Complex64 {
    Complex64::from_polar(1.0 / (4.0 * PI * r), k * r)
}

/// Incident plane wave `e^{ik x·d}`.
pub fn plane_wave(x: &Point3, d: &Direction, k: f64) -> Complex64 {
    Complex64::cis(k * x.dot(d))
}

/// `n` equally spaced directions on the unit circle in the `z = 0` plane,
/// starting at `(1, 0, 0)`.
pub fn uniform_circle_directions(n: usize) -> Result<DirectionSet> {
    if n == 0 {
        return Err(Error::validation("direction count must be at least 1"));
    }
    let dirs = (0..n)
        .map(|j| Direction::from_angle(2.0 * PI * j as f64 / n as f64))
        .collect();
    DirectionSet::new(dirs)
}
