//! Tetrahedron volumes.
//!
//! Euclidean volumes come from the Cayley–Menger determinant or from two
//! faces and their dihedral angle. Spherical and hyperbolic volumes integrate
//! the Schläfli differential `dV = ±½ Σ ℓ_i dθ_i` (`+` spherical, `-`
//! hyperbolic) along the family obtained by varying the `y` edge with the
//! other five fixed, starting from a flattened member of zero volume.
//!
//! The anchor is the end of the `y` range where the dihedral angle at `x`
//! tends to `0` (spherical) or `π` (hyperbolic). In the spherical case the
//! `φ → π` end may be an antipodal configuration with nonzero limiting
//! volume, while `φ → 0` always collapses.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::Geometry;
use crate::quadrature::{self, QuadratureOptions};
use crate::tetra::{self, DihedralAngles, Edge, EdgeLengths, Tetrahedron, FACES};
use crate::trig;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VolumeEstimate {
    pub value: f64,
    pub error_estimate: f64,
}

impl VolumeEstimate {
    fn exact(value: f64) -> Self {
        Self { value, error_estimate: 0.0 }
    }
}

/// `√(det/288)` of the Cayley–Menger matrix; a determinant that is zero to
/// within rounding gives volume zero.
pub fn volume_euclidean_cm(e: &EdgeLengths) -> Result<f64> {
    let data = tetra::gram_data_for(Geometry::Euclidean, e);
    let scale = e.as_array().iter().fold(0.0f64, |m, l| m.max(*l)).powi(6);
    if data.determinant < -tetra::GRAM_TOL * scale {
        return Err(Error::NonexistentTetrahedron(format!(
            "Cayley–Menger determinant {:e} is negative",
            data.determinant
        )));
    }
    Ok((data.determinant.max(0.0) / 288.0).sqrt())
}

/// `V = 2 A₁ A₂ sin θ / (3 ℓ)` for the two faces meeting along `edge`.
pub fn volume_euclidean_two_face(t: &Tetrahedron, edge: Edge) -> Result<f64> {
    if t.geometry() != Geometry::Euclidean {
        return Err(Error::Domain("two-face volume is Euclidean only".into()));
    }
    let areas: Vec<f64> = FACES.iter().filter(|f| f.contains(&edge)).map(|f| t.face_area_euclidean(f)).collect();
    let theta = t.dihedral_angles().get(edge);
    Ok(2.0 * areas[0] * areas[1] * theta.sin() / (3.0 * t.edges().get(edge)))
}

/// Range `(y_min, y_max)` of `y` for which the other five edges (taken from
/// `e`; its `y` is ignored) form a tetrahedron. The ends are the flattened
/// configurations with dihedral angle `0` and `π` at `x`.
pub fn flattening_interval(g: Geometry, e: &EdgeLengths) -> Result<(f64, f64)> {
    for edge in [Edge::X, Edge::A, Edge::B, Edge::C, Edge::D] {
        if !g.admits_length(e.get(edge)) {
            return Err(Error::NoValidRange(format!("edge {edge} = {} is not admissible", e.get(edge))));
        }
    }
    for face in &FACES[..2] {
        let [p, q, r] = face.map(|ed| e.get(ed));
        if trig::triangle_margin(g, p, q, r) <= 0.0 {
            return Err(Error::NoValidRange(format!(
                "face ({},{},{}) does not exist",
                face[0], face[1], face[2]
            )));
        }
    }
    let theta_k = trig::angles_unchecked(g, e.b, e.x, e.a)[0];
    let theta_l = trig::angles_unchecked(g, e.c, e.x, e.d)[0];
    let k = g.exp_from_base(e.a, [theta_k.cos(), theta_k.sin(), 0.0]);
    let near = g.exp_from_base(e.d, [theta_l.cos(), theta_l.sin(), 0.0]);
    let far = g.exp_from_base(e.d, [theta_l.cos(), -theta_l.sin(), 0.0]);
    let (lo, hi) = (g.distance(&k, &near), g.distance(&k, &far));
    if !(hi > lo) {
        return Err(Error::NoValidRange(format!("empty interval [{lo}, {hi}]")));
    }
    Ok((lo, hi))
}

/// `y_max`, the length of `y` at which the tetrahedron flattens with dihedral
/// angle `π` at `x`.
pub fn flattening_parameter(g: Geometry, e: &EdgeLengths) -> Result<f64> {
    flattening_interval(g, e).map(|(_, hi)| hi)
}

/// `y_max` by bisection on the existence test, starting from the
/// right-angled hinge. Slower and (at tangential roots) less precise than
/// [`flattening_parameter`]; kept as an independent route.
pub fn flattening_parameter_bisect(g: Geometry, e: &EdgeLengths) -> Result<f64> {
    let (lo_end, hi_end) = flattening_interval(g, e)?;
    let exists = |y: f64| tetra::validate_with_tolerance(g, &e.with(Edge::Y, y), 0.0).is_ok();
    // hinge angle π/2 lies inside the interval
    let theta_k = trig::angles_unchecked(g, e.b, e.x, e.a)[0];
    let theta_l = trig::angles_unchecked(g, e.c, e.x, e.d)[0];
    let k = g.exp_from_base(e.a, [theta_k.cos(), theta_k.sin(), 0.0]);
    let l = g.exp_from_base(e.d, [theta_l.cos(), 0.0, theta_l.sin()]);
    let mut lo = g.distance(&k, &l);
    if !exists(lo) {
        lo = 0.5 * (lo_end + hi_end);
    }
    let mut hi = (e.a + e.d).min(e.b + e.c);
    if g == Geometry::Spherical {
        hi = hi.min(PI);
    }
    while hi - lo > 1e-15 * hi {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if exists(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Richardson-extrapolated central difference of a vector-valued function.
fn derivative6(f: impl Fn(f64) -> [f64; 6], x: f64, h: f64) -> [f64; 6] {
    let d = |h: f64| {
        let (p, m) = (f(x + h), f(x - h));
        std::array::from_fn::<f64, 6, _>(|i| (p[i] - m[i]) / (2.0 * h))
    };
    let (coarse, fine) = (d(h), d(0.5 * h));
    std::array::from_fn(|i| (4.0 * fine[i] - coarse[i]) / 3.0)
}

fn schlafli_sign(g: Geometry) -> f64 {
    if g == Geometry::Hyperbolic {
        -1.0
    } else {
        1.0
    }
}

/// Half-sum `½ Σ ℓ_i θ'_i`.
fn half_sum(e: &EdgeLengths, dtheta: &[f64; 6]) -> f64 {
    0.5 * e.as_array().iter().zip(dtheta).map(|(l, d)| l * d).sum::<f64>()
}

const HINGE_MARGIN: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathSample {
    pub t: f64,
    pub angles: DihedralAngles,
    pub dvol_dt: f64,
}

/// Integration variable along the `y` family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PathVariable {
    /// The dihedral angle `φ` at `x`; the integrand is smooth up to both
    /// flattened ends and angles come from the hinge embedding.
    #[default]
    HingeAngle,
    /// The length `y` itself, with `t = anchor ± u²` when
    /// [`QuadratureOptions::substitute_endpoint`] is set; angles come from
    /// the vertex links. Only the anchor end is desingularized, so targets
    /// close to the opposite flattening lose accuracy.
    Length,
}

/// The one-parameter family `Δ_t` with `y = t` and the other edges fixed.
#[derive(Debug, Clone, PartialEq)]
pub struct SchlafliPath {
    pub geometry: Geometry,
    /// Fixed edges; the `y` slot holds the target length.
    pub base: EdgeLengths,
    pub y_min: f64,
    pub y_max: f64,
}

impl SchlafliPath {
    pub fn new(g: Geometry, e: &EdgeLengths) -> Result<Self> {
        if g == Geometry::Euclidean {
            return Err(Error::Domain("Schläfli integration needs nonzero curvature".into()));
        }
        let (y_min, y_max) = flattening_interval(g, e)?;
        Ok(Self { geometry: g, base: *e, y_min, y_max })
    }

    /// Flattened end where the volume vanishes.
    pub fn anchor(&self) -> f64 {
        match self.geometry {
            Geometry::Spherical => self.y_min,
            _ => self.y_max,
        }
    }

    /// Dihedral angle at `x` of the anchor: `0` or `π`.
    pub fn anchor_hinge(&self) -> f64 {
        match self.geometry {
            Geometry::Spherical => 0.0,
            _ => PI,
        }
    }

    pub fn target(&self) -> f64 {
        self.base.y
    }

    pub fn edges_at(&self, t: f64) -> EdgeLengths {
        self.base.with(Edge::Y, t)
    }

    /// Dihedral angles of `Δ_t`, without validation.
    pub fn angles_at(&self, t: f64) -> DihedralAngles {
        tetra::dihedral_angles_from_links(self.geometry, &self.edges_at(t))
    }

    /// Member of the family with dihedral angle `phi` at `x`: its `y` length
    /// and dihedral angles.
    pub fn at_hinge(&self, phi: f64) -> (f64, DihedralAngles) {
        let emb = tetra::embed_with_hinge(self.geometry, &self.base, phi);
        let [_, _, k, l] = emb.vertices;
        let mut angles = emb.dihedral_angles(self.geometry);
        angles.phi = phi;
        (self.geometry.distance(&k, &l), angles)
    }

    /// Direction from the anchor into the interval: `+1` or `-1`.
    fn orientation(&self) -> f64 {
        if self.geometry == Geometry::Spherical {
            1.0
        } else {
            -1.0
        }
    }

    pub fn t_of_u(&self, u: f64) -> f64 {
        self.anchor() + self.orientation() * u * u
    }

    pub fn u_end(&self) -> f64 {
        (self.orientation() * (self.target() - self.anchor())).max(0.0).sqrt()
    }

    /// `dV/dt = ±½ Σ ℓ_i dθ_i/dt` at an interior `t`.
    pub fn dvol_dt(&self, t: f64) -> f64 {
        let room = (t - self.y_min).min(self.y_max - t);
        let h = (1e-4 * t).min(0.25 * room);
        let d = derivative6(|s| self.angles_at(s).as_array(), t, h);
        schlafli_sign(self.geometry) * half_sum(&self.edges_at(t), &d)
    }

    /// `dV/du` in the substituted variable.
    pub fn dvol_du(&self, u: f64) -> f64 {
        let h = (1e-3 * self.u_end()).min(0.25 * u);
        let d = derivative6(|v| self.angles_at(self.t_of_u(v)).as_array(), u, h);
        schlafli_sign(self.geometry) * half_sum(&self.edges_at(self.t_of_u(u)), &d)
    }

    /// `dV/dφ` along the family, `φ` the dihedral angle at `x`.
    pub fn dvol_dphi(&self, phi: f64) -> f64 {
        // deep panels near a flattened end can round onto it
        let phi = phi.clamp(HINGE_MARGIN, PI - HINGE_MARGIN);
        let h = 1e-3f64.min(0.25 * phi).min(0.25 * (PI - phi));
        let d = derivative6(|v| self.at_hinge(v).1.as_array(), phi, h);
        let (y, _) = self.at_hinge(phi);
        schlafli_sign(self.geometry) * half_sum(&self.edges_at(y), &d)
    }

    /// `n` evenly spaced samples strictly between the anchor and the target.
    pub fn samples(&self, n: usize) -> Vec<PathSample> {
        let (a, b) = (self.anchor(), self.target());
        (1..=n)
            .map(|i| {
                let t = a + (b - a) * i as f64 / (n + 1) as f64;
                PathSample { t, angles: self.angles_at(t), dvol_dt: self.dvol_dt(t) }
            })
            .collect()
    }

    /// Volume of the target tetrahedron.
    pub fn integrate(&self, opts: &QuadratureOptions, variable: PathVariable) -> Result<VolumeEstimate> {
        let r = match variable {
            PathVariable::HingeAngle => {
                let target = tetra::dihedral_angles_from_links(self.geometry, &self.base).phi;
                quadrature::integrate(|phi| self.dvol_dphi(phi), self.anchor_hinge(), target, opts)?
            }
            PathVariable::Length if opts.substitute_endpoint => {
                quadrature::integrate(|u| self.dvol_du(u), 0.0, self.u_end(), opts)?
            }
            PathVariable::Length => quadrature::integrate(|t| self.dvol_dt(t), self.anchor(), self.target(), opts)?,
        };
        Ok(VolumeEstimate { value: r.value, error_estimate: r.error_estimate })
    }
}

pub fn volume_schlafli(t: &Tetrahedron, opts: &QuadratureOptions) -> Result<VolumeEstimate> {
    SchlafliPath::new(t.geometry(), t.edges())?.integrate(opts, PathVariable::HingeAngle)
}

/// `∂V/∂ℓ` along one edge: `±½ Σ ℓ_i ∂θ_i/∂ℓ` (and `½ Σ`, which vanishes,
/// for κ = 0), with angle derivatives from Richardson-extrapolated central
/// differences.
pub fn schlafli_form(t: &Tetrahedron, direction: Edge) -> Result<f64> {
    let g = t.geometry();
    let e = *t.edges();
    let l = e.get(direction);
    let h = 1e-4 * l;
    for s in [-h, h] {
        tetra::validate(g, &e.with(direction, l + s)).map_err(|_| Error::NearDegenerate)?;
    }
    let d = derivative6(
        |v| tetra::dihedral_angles_from_links(g, &e.with(direction, v)).as_array(),
        l,
        h,
    );
    Ok(schlafli_sign(g) * half_sum(&e, &d))
}

/// Cayley–Menger for κ = 0, Schläfli integration with default options otherwise.
pub fn volume(t: &Tetrahedron) -> Result<VolumeEstimate> {
    volume_with(t, &QuadratureOptions::default())
}

pub fn volume_with(t: &Tetrahedron, opts: &QuadratureOptions) -> Result<VolumeEstimate> {
    match t.geometry() {
        Geometry::Euclidean => volume_euclidean_cm(t.edges()).map(VolumeEstimate::exact),
        _ => volume_schlafli(t, opts),
    }
}
