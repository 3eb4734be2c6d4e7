//! Model spaces of constant curvature 0, +1 and -1.
//!
//! Points of all three spaces are stored as [`Point4`]. Component 0 is the
//! "pole" axis: always zero for Euclidean points, the height above the
//! equatorial hyperplane on the unit 3-sphere, and the time coordinate on
//! the upper sheet of the hyperboloid `-t² + x² + y² + z² = -1`.
//! Components 1..=3 are spatial.

use std::fmt;
use std::str::FromStr;

use nalgebra::Vector4;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Point4 = Vector4<f64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Geometry {
    Euclidean,
    Spherical,
    Hyperbolic,
}

impl Geometry {
    pub const ALL: [Geometry; 3] = [Geometry::Euclidean, Geometry::Spherical, Geometry::Hyperbolic];

    pub fn from_curvature(k: i32) -> Result<Self> {
        match k {
            0 => Ok(Geometry::Euclidean),
            1 => Ok(Geometry::Spherical),
            -1 => Ok(Geometry::Hyperbolic),
            other => Err(Error::Parse(format!("curvature must be 0, +1 or -1, got {other}"))),
        }
    }

    pub fn curvature(self) -> i32 {
        match self {
            Geometry::Euclidean => 0,
            Geometry::Spherical => 1,
            Geometry::Hyperbolic => -1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Geometry::Euclidean => "euclidean",
            Geometry::Spherical => "spherical",
            Geometry::Hyperbolic => "hyperbolic",
        }
    }

    /// `x`, `sin x` or `sinh x`.
    pub fn sine(self, x: f64) -> f64 {
        match self {
            Geometry::Euclidean => x,
            Geometry::Spherical => x.sin(),
            Geometry::Hyperbolic => x.sinh(),
        }
    }

    /// `cos x` or `cosh x`; the Euclidean value is 1.
    pub fn cosine(self, x: f64) -> f64 {
        match self {
            Geometry::Euclidean => 1.0,
            Geometry::Spherical => x.cos(),
            Geometry::Hyperbolic => x.cosh(),
        }
    }

    /// Tangent of a half length: `x/2`, `tan(x/2)` or `tanh(x/2)`.
    pub fn half_tan(self, x: f64) -> f64 {
        match self {
            Geometry::Euclidean => 0.5 * x,
            Geometry::Spherical => (0.5 * x).tan(),
            Geometry::Hyperbolic => (0.5 * x).tanh(),
        }
    }

    /// Inverse of [`Geometry::half_tan`].
    pub fn half_atan(self, t: f64) -> f64 {
        match self {
            Geometry::Euclidean => 2.0 * t,
            Geometry::Spherical => 2.0 * t.atan(),
            Geometry::Hyperbolic => 2.0 * t.atanh(),
        }
    }

    /// Whether `len` is an admissible edge length in this space.
    pub fn admits_length(self, len: f64) -> bool {
        len.is_finite() && len > 0.0 && (self != Geometry::Spherical || len < std::f64::consts::PI)
    }

    /// Base point: origin, north pole, or hyperboloid apex.
    pub fn base_point(self) -> Point4 {
        match self {
            Geometry::Euclidean => Point4::zeros(),
            _ => Point4::new(1.0, 0.0, 0.0, 0.0),
        }
    }

    /// Ambient bilinear form restricted to the model.
    pub fn inner(self, u: &Point4, v: &Point4) -> f64 {
        match self {
            Geometry::Euclidean => u[1] * v[1] + u[2] * v[2] + u[3] * v[3],
            Geometry::Spherical => u.dot(v),
            Geometry::Hyperbolic => -u[0] * v[0] + u[1] * v[1] + u[2] * v[2] + u[3] * v[3],
        }
    }

    /// Geodesic distance between two model points.
    pub fn distance(self, p: &Point4, q: &Point4) -> f64 {
        let diff = p - q;
        match self {
            Geometry::Euclidean => self.inner(&diff, &diff).sqrt(),
            Geometry::Spherical => 2.0 * diff.norm().atan2((p + q).norm()),
            Geometry::Hyperbolic => 2.0 * (0.5 * self.inner(&diff, &diff).max(0.0).sqrt()).asinh(),
        }
    }

    /// Point at distance `r` from the base point in the spatial unit direction `dir`.
    pub fn exp_from_base(self, r: f64, dir: [f64; 3]) -> Point4 {
        let (h, s) = match self {
            Geometry::Euclidean => (0.0, r),
            Geometry::Spherical => (r.cos(), r.sin()),
            Geometry::Hyperbolic => (r.cosh(), r.sinh()),
        };
        Point4::new(h, s * dir[0], s * dir[1], s * dir[2])
    }

    /// Unit tangent vector at `p` pointing along the geodesic towards `q`.
    pub fn tangent_towards(self, p: &Point4, q: &Point4) -> Point4 {
        let v = match self {
            Geometry::Euclidean => q - p,
            // p has self-inner +1 (sphere) or -1 (hyperboloid)
            Geometry::Spherical => q - p * self.inner(p, q),
            Geometry::Hyperbolic => q + p * self.inner(p, q),
        };
        let n = self.inner(&v, &v).max(0.0).sqrt();
        v / n
    }

    /// Residual of the model constraint (unit norm, hyperboloid sheet); zero for Euclidean points.
    pub fn model_residual(self, p: &Point4) -> f64 {
        match self {
            Geometry::Euclidean => p[0].abs(),
            Geometry::Spherical => (p.dot(p) - 1.0).abs(),
            Geometry::Hyperbolic => (self.inner(p, p) + 1.0).abs() + if p[0] > 0.0 { 0.0 } else { 1.0 },
        }
    }
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Geometry {
    type Err = Error;

    /// Accepts the names (`euclidean`, `spherical`, `hyperbolic`, case-insensitive,
    /// or their first letter) and the curvatures `0`, `1`, `+1`, `-1`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        match t.as_str() {
            "euclidean" | "e" | "0" => Ok(Geometry::Euclidean),
            "spherical" | "s" | "1" | "+1" => Ok(Geometry::Spherical),
            "hyperbolic" | "h" | "-1" => Ok(Geometry::Hyperbolic),
            _ => Err(Error::Parse(format!("unknown geometry {s:?}"))),
        }
    }
}
