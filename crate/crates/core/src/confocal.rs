//! Confocal conics and quadrics, elliptic coordinates and Ivory's lemma.
//!
//! A family is given by the squared semi-axes `A_1 > … > A_n` (and `A_{n+1}`
//! when κ ≠ 0). Its members are
//!
//! ```text
//! κ = 0:   Σ x_i² / (A_i - λ) = 1
//! κ = +1:  Σ_{i≤n} x_i² / (A_i - λ) - x_{n+1}² / (A_{n+1} + λ) = 0   on Σ x_i² = 1
//! κ = -1:  Σ_{i≤n} x_i² / (A_i - λ) - x_{n+1}² / (A_{n+1} - λ) = 0   on Σ_{i≤n} x_i² - x_{n+1}² = -1
//! ```
//!
//! Both curved cases are written as `Σ ε_i x_i² / (B_i - λ) = 0` with
//! `B_i = A_i` for `i ≤ n`, and `(ε, B) = (+1, -A_{n+1})` on the sphere,
//! `(-1, A_{n+1})` on the hyperboloid. Points are coordinate vectors
//! `(x_1, …, x_n[, x_{n+1}])`; the last coordinate is the pole (time) axis.
//!
//! The degenerate family obtained by rotating a planar family about its focal
//! axis is handled in focal coordinates by [`RotationalBox`].

use nalgebra::{DVector, Vector3};

use crate::error::{Error, Result};
use crate::geometry::{Geometry, Point4};
use crate::tetra::{Tetrahedron, Vertex};
use crate::trig;

const POLE_TOL: f64 = 1e-14;
const DEGENERATE_COORD: f64 = 1e-12;

pub type Coords = DVector<f64>;

#[derive(Debug, Clone, PartialEq)]
pub struct ConfocalFamily {
    pub geometry: Geometry,
    pub dimension: usize,
    /// `A_1, …, A_n` and, for κ ≠ 0, `A_{n+1}`.
    pub axes: Vec<f64>,
}

impl ConfocalFamily {
    pub fn new(g: Geometry, axes: &[f64]) -> Result<Self> {
        let extra = usize::from(g != Geometry::Euclidean);
        let n = axes.len().checked_sub(extra).unwrap_or(0);
        if !(2..=3).contains(&n) {
            return Err(Error::Domain(format!(
                "a {g} family in dimension 2 or 3 needs {} or {} axes, got {}",
                2 + extra,
                3 + extra,
                axes.len()
            )));
        }
        if axes.iter().any(|a| !a.is_finite()) {
            return Err(Error::Domain("axes must be finite".into()));
        }
        if axes[..n].windows(2).any(|w| !(w[0] > w[1])) {
            return Err(Error::Domain(format!("axes {:?} must be strictly decreasing", &axes[..n])));
        }
        match g {
            Geometry::Spherical if !(axes[n] + axes[n - 1] > 0.0) => {
                return Err(Error::Domain("spherical family needs A_n + A_(n+1) > 0".into()))
            }
            Geometry::Hyperbolic if !(axes[n] > axes[0]) => {
                return Err(Error::Domain("hyperbolic family needs A_(n+1) > A_1 (proper foci)".into()))
            }
            _ => {}
        }
        Ok(Self { geometry: g, dimension: n, axes: axes.to_vec() })
    }

    /// Number of ambient coordinates.
    pub fn coordinates(&self) -> usize {
        self.axes.len()
    }

    /// Poles `B_i` of the unified form.
    pub fn poles(&self) -> Vec<f64> {
        let n = self.dimension;
        let mut b = self.axes.clone();
        if self.geometry == Geometry::Spherical {
            b[n] = -b[n];
        }
        b
    }

    /// Signs `ε_i` of the unified form.
    pub fn signs(&self) -> Vec<f64> {
        let mut e = vec![1.0; self.coordinates()];
        if self.geometry == Geometry::Hyperbolic {
            e[self.dimension] = -1.0;
        }
        e
    }

    /// Open parameter interval of the `k`-th coordinate (`k = 0` is the
    /// ellipsoid band).
    pub fn band(&self, k: usize) -> (f64, f64) {
        let n = self.dimension;
        let a = &self.axes;
        if k > 0 {
            return (a[n - k], a[n - 1 - k]);
        }
        let lo = if self.geometry == Geometry::Spherical { -a[n] } else { f64::NEG_INFINITY };
        (lo, a[n - 1])
    }

    fn band_of(&self, lambda: f64) -> Option<usize> {
        (0..self.dimension).find(|&k| {
            let (lo, hi) = self.band(k);
            lambda > lo && lambda < hi
        })
    }

    /// `P(λ) = Π(B_i - λ) · (lhs - rhs)`, a polynomial of degree `n`.
    fn polynomial(&self, p: &Coords, lambda: f64) -> f64 {
        let b = self.poles();
        let e = self.signs();
        let prod_except = |i: usize| {
            b.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, bk)| bk - lambda).product::<f64>()
        };
        let sum: f64 = (0..b.len()).map(|i| e[i] * p[i] * p[i] * prod_except(i)).sum();
        if self.geometry == Geometry::Euclidean {
            sum - b.iter().map(|bk| bk - lambda).product::<f64>()
        } else {
            sum
        }
    }

    /// Distance in the ambient model.
    pub fn distance(&self, p: &Coords, q: &Coords) -> f64 {
        self.geometry.distance(&self.to_model(p), &self.to_model(q))
    }

    /// Model point (pole/time coordinate first) of a coordinate vector.
    pub fn to_model(&self, p: &Coords) -> Point4 {
        let n = self.dimension;
        let pole = if self.geometry == Geometry::Euclidean { 0.0 } else { p[n] };
        Point4::new(pole, p[0], p[1], if n == 3 { p[2] } else { 0.0 })
    }

    /// Residual of the sphere / hyperboloid constraint.
    pub fn model_residual(&self, p: &Coords) -> f64 {
        let e = self.signs();
        match self.geometry {
            Geometry::Euclidean => 0.0,
            Geometry::Spherical => (p.norm_squared() - 1.0).abs(),
            Geometry::Hyperbolic => ((0..p.len()).map(|i| e[i] * p[i] * p[i]).sum::<f64>() + 1.0).abs(),
        }
    }
}

fn check_pole(f: &ConfocalFamily, lambda: f64) -> Result<()> {
    let b = f.poles();
    let scale = b.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    if !lambda.is_finite() || b.iter().any(|bi| (bi - lambda).abs() <= POLE_TOL * scale) {
        return Err(Error::PoleParameter(lambda));
    }
    Ok(())
}

/// Left-hand side minus right-hand side of the defining equation of `Q(λ)` at `p`.
pub fn quadric_point_residual(f: &ConfocalFamily, lambda: f64, p: &Coords) -> Result<f64> {
    check_pole(f, lambda)?;
    let b = f.poles();
    let e = f.signs();
    let lhs: f64 = (0..b.len()).map(|i| e[i] * p[i] * p[i] / (b[i] - lambda)).sum();
    Ok(if f.geometry == Geometry::Euclidean { lhs - 1.0 } else { lhs })
}

/// The `n` parameters of the family members through a point, one per band.
#[derive(Debug, Clone, PartialEq)]
pub struct EllipticCoordinates {
    pub lambdas: Vec<f64>,
}

fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    let flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn elliptic_coordinates(f: &ConfocalFamily, p: &Coords) -> Result<EllipticCoordinates> {
    if p.len() != f.coordinates() {
        return Err(Error::Domain(format!("expected {} coordinates, got {}", f.coordinates(), p.len())));
    }
    let scale = p.amax().max(1.0);
    if p.iter().any(|v| v.abs() <= DEGENERATE_COORD * scale) {
        return Err(Error::DegeneratePoint);
    }
    if f.geometry == Geometry::Euclidean && f.dimension == 2 {
        let (a1, a2) = (f.axes[0], f.axes[1]);
        let (x2, y2) = (p[0] * p[0], p[1] * p[1]);
        let b = a1 + a2 - x2 - y2;
        let c = a1 * a2 - x2 * a2 - y2 * a1;
        let disc = (b * b - 4.0 * c).max(0.0).sqrt();
        let big = 0.5 * (b + b.signum() * disc);
        let (r1, r2) = (big, c / big);
        return Ok(EllipticCoordinates { lambdas: vec![r1.min(r2), r1.max(r2)] });
    }
    let poly = |l: f64| f.polynomial(p, l);
    let lambdas = (0..f.dimension)
        .map(|k| {
            let (mut lo, hi) = f.band(k);
            if lo.is_infinite() {
                let mut step = 1.0f64.max(hi.abs());
                lo = hi - step;
                while (poly(lo) > 0.0) == (poly(hi) > 0.0) {
                    step *= 2.0;
                    lo = hi - step;
                    if !lo.is_finite() {
                        return Err(Error::DegeneratePoint);
                    }
                }
            }
            Ok(bisect(lo, hi, poly))
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(EllipticCoordinates { lambdas })
}

/// Point in the positive orthant with the given elliptic coordinates (one
/// per band, ellipsoid band first), multiplied coordinatewise by `signs`.
pub fn point_from_elliptic(f: &ConfocalFamily, lambdas: &[f64], signs: &[f64]) -> Result<Coords> {
    let b = f.poles();
    let m = b.len();
    let mut x = Coords::zeros(m);
    for i in 0..m {
        let num: f64 = lambdas.iter().map(|l| l - b[i]).product();
        let den: f64 = (0..m).filter(|&k| k != i).map(|k| b[k] - b[i]).product();
        let sq = match f.geometry {
            Geometry::Spherical => num / den,
            Geometry::Euclidean => -num / den,
            Geometry::Hyperbolic => -num / den * f.signs()[i],
        };
        if !(sq > 0.0) {
            return Err(Error::EmptyBox(format!("parameters {lambdas:?} give x_{}² = {sq}", i + 1)));
        }
        x[i] = signs.get(i).copied().unwrap_or(1.0) * sq.sqrt();
    }
    Ok(x)
}

/// Box bounded by two members of each band.
#[derive(Debug, Clone, PartialEq)]
pub struct Box {
    pub family: ConfocalFamily,
    /// `(λ_1, λ_1', λ_2, λ_2', …)`, two values per band, ellipsoid band first.
    pub lambdas: Vec<f64>,
    /// Orthant of the box: one `±1` per coordinate.
    pub signs: Vec<f64>,
}

impl Box {
    pub fn new(family: ConfocalFamily, lambdas: &[f64], signs: Option<&[f64]>) -> Result<Self> {
        let n = family.dimension;
        if lambdas.len() != 2 * n {
            return Err(Error::EmptyBox(format!("need {} parameters, got {}", 2 * n, lambdas.len())));
        }
        for k in 0..n {
            let (lo, hi) = family.band(k);
            let (l, l2) = (lambdas[2 * k], lambdas[2 * k + 1]);
            for v in [l, l2] {
                if !(v > lo && v < hi) {
                    return Err(Error::EmptyBox(format!("parameter {v} outside band ({lo}, {hi})")));
                }
            }
            if l == l2 {
                return Err(Error::EmptyBox(format!("layer {} has zero thickness", k + 1)));
            }
        }
        let m = family.coordinates();
        let signs = signs.map(<[f64]>::to_vec).unwrap_or_else(|| vec![1.0; m]);
        if signs.len() != m || signs.iter().any(|s| *s != 1.0 && *s != -1.0) {
            return Err(Error::Domain(format!("need {m} signs of ±1")));
        }
        if family.geometry == Geometry::Hyperbolic && signs[n] < 0.0 {
            return Err(Error::Domain("hyperbolic points lie on the upper sheet".into()));
        }
        Ok(Self { family, lambdas: lambdas.to_vec(), signs })
    }

    /// Parameters of corner `mask`: bit `k` selects `λ_k'` over `λ_k`.
    pub fn corner_parameters(&self, mask: usize) -> Vec<f64> {
        (0..self.family.dimension).map(|k| self.lambdas[2 * k + ((mask >> k) & 1)]).collect()
    }

    pub fn num_corners(&self) -> usize {
        1 << self.family.dimension
    }
}

/// The `2^n` corners, indexed by [`Box::corner_parameters`] masks.
pub fn box_vertices(b: &Box) -> Result<Vec<Coords>> {
    (0..b.num_corners())
        .map(|mask| point_from_elliptic(&b.family, &b.corner_parameters(mask), &b.signs))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct IvoryReport {
    pub vertices: Vec<Coords>,
    /// Great diagonals, joining corner `m` to corner `!m`.
    pub diagonals: Vec<f64>,
    pub max_difference: f64,
}

pub fn ivory_check(b: &Box) -> Result<IvoryReport> {
    let vertices = box_vertices(b)?;
    let full = b.num_corners() - 1;
    let diagonals: Vec<f64> =
        (0..b.num_corners() / 2).map(|m| b.family.distance(&vertices[m], &vertices[full ^ m])).collect();
    Ok(IvoryReport { max_difference: spread(&diagonals), vertices, diagonals })
}

fn spread(v: &[f64]) -> f64 {
    let max = v.iter().fold(f64::MIN, |m, x| m.max(*x));
    let min = v.iter().fold(f64::MAX, |m, x| m.min(*x));
    max - min
}

/// Diagonal linear map sending `Q(λ)` onto `Q(λ')`: entries `√((B_i-λ')/(B_i-λ))`.
pub fn ivory_affine_map(f: &ConfocalFamily, lambda: f64, lambda_prime: f64) -> Result<Vec<f64>> {
    check_pole(f, lambda)?;
    check_pole(f, lambda_prime)?;
    match (f.band_of(lambda), f.band_of(lambda_prime)) {
        (Some(p), Some(q)) if p == q => {}
        _ => return Err(Error::BandMismatch(lambda, lambda_prime)),
    }
    Ok(f.poles().iter().map(|b| ((b - lambda_prime) / (b - lambda)).sqrt()).collect())
}

pub fn apply_diagonal(d: &[f64], p: &Coords) -> Coords {
    Coords::from_iterator(p.len(), p.iter().zip(d).map(|(x, s)| x * s))
}

/// Cosine of the angle between the normals of `Q(λ)` and `Q(μ)` at a common
/// point (zero for members of different bands).
pub fn intersection_cosine(f: &ConfocalFamily, lambda: f64, mu: f64, p: &Coords) -> Result<f64> {
    check_pole(f, lambda)?;
    check_pole(f, mu)?;
    let b = f.poles();
    let e = f.signs();
    let grad = |l: f64| Coords::from_iterator(p.len(), (0..p.len()).map(|i| p[i] / (b[i] - l)));
    let (g1, g2) = (grad(lambda), grad(mu));
    // ambient form: Euclidean, or Minkowski with the sign pattern ε
    let form = |u: &Coords, v: &Coords| (0..u.len()).map(|i| e[i] * u[i] * v[i]).sum::<f64>();
    // gradients of the cone equations are tangent to the model at p
    let (n1, n2) = (form(&g1, &g1), form(&g2, &g2));
    Ok(form(&g1, &g2) / (n1 * n2).sqrt())
}

/// Foci of a planar family, on the first axis, as coordinate vectors.
pub fn foci(f: &ConfocalFamily) -> Result<(Coords, Coords)> {
    if f.dimension != 2 {
        return Err(Error::Domain("foci are defined for planar families".into()));
    }
    let a = &f.axes;
    let focus = |sign: f64| match f.geometry {
        Geometry::Euclidean => Coords::from_vec(vec![sign * (a[0] - a[1]).sqrt(), 0.0]),
        Geometry::Spherical => {
            let r = ((a[0] - a[1]) / (a[1] + a[2])).sqrt().atan();
            Coords::from_vec(vec![sign * r.sin(), 0.0, r.cos()])
        }
        Geometry::Hyperbolic => {
            let r = ((a[0] - a[1]) / (a[2] - a[1])).sqrt().atanh();
            Coords::from_vec(vec![sign * r.sinh(), 0.0, r.cosh()])
        }
    };
    Ok((focus(1.0), focus(-1.0)))
}

/// `(k_1 k_2, k_1 / k_2)` with `k_i = tan(∠X F_i F_j / 2)`.
pub fn tangent_invariants(g: Geometry, f1: &Point4, f2: &Point4, p: &Point4) -> Result<(f64, f64)> {
    let x = g.distance(f1, f2);
    let r1 = g.distance(p, f1);
    let r2 = g.distance(p, f2);
    if trig::triangle_margin(g, x, r1, r2) <= trig::DEGENERACY_TOL {
        return Err(Error::DegenerateConfiguration);
    }
    // corners opposite r2 (at F1) and r1 (at F2)
    let [k1, k2, _] = trig::half_angle_tangents_unchecked(g, r2, r1, x);
    Ok((k1 * k2, k1 / k2))
}

/// Box of the degenerate rotational family about the axis through the foci
/// `F1` (base point) and `F2` (at distance `focal_distance` on the first
/// axis). A point is described by `σ = |XF1| + |XF2|` (ellipsoids),
/// `δ = |XF1| - |XF2|` (hyperboloid sheets) and its rotation angle `ω`
/// about the axis (half-planes).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationalBox {
    pub geometry: Geometry,
    pub focal_distance: f64,
    pub sigma: [f64; 2],
    pub delta: [f64; 2],
    pub omega: [f64; 2],
}

/// Point of the rotational family with focal sum `sigma`, difference `delta`
/// and rotation angle `omega`, as a model point.
pub fn rotational_point(g: Geometry, focal_distance: f64, sigma: f64, delta: f64, omega: f64) -> Result<Point4> {
    let r1 = 0.5 * (sigma + delta);
    let r2 = 0.5 * (sigma - delta);
    if !(g.admits_length(r1) && g.admits_length(r2))
        || trig::triangle_margin(g, focal_distance, r1, r2) <= trig::DEGENERACY_TOL
    {
        return Err(Error::ConstructionFailure(format!(
            "no point at distances {r1}, {r2} from foci {focal_distance} apart"
        )));
    }
    let theta = trig::angles_unchecked(g, r2, r1, focal_distance)[0];
    Ok(g.exp_from_base(r1, [theta.cos(), theta.sin() * omega.cos(), theta.sin() * omega.sin()]))
}

impl RotationalBox {
    /// Corner `mask`: bit 0 picks `σ`, bit 1 picks `δ`, bit 2 picks `ω`.
    pub fn vertex(&self, mask: usize) -> Result<Point4> {
        rotational_point(
            self.geometry,
            self.focal_distance,
            self.sigma[mask & 1],
            self.delta[(mask >> 1) & 1],
            self.omega[(mask >> 2) & 1],
        )
    }

    pub fn vertices(&self) -> Result<Vec<Point4>> {
        (0..8).map(|m| self.vertex(m)).collect()
    }

    /// The four great diagonals.
    pub fn diagonals(&self) -> Result<Vec<f64>> {
        let v = self.vertices()?;
        Ok((0..4).map(|m| self.geometry.distance(&v[m], &v[7 ^ m])).collect())
    }

    pub fn diagonal_spread(&self) -> Result<f64> {
        self.diagonals().map(|d| spread(&d))
    }
}

/// Dihedral angle at `x` read off the standard embedding.
fn hinge_angle(t: &Tetrahedron) -> f64 {
    let l = t.vertex(Vertex::L);
    l[3].atan2(l[2])
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartnerPoints {
    pub k_bar: Point4,
    pub l_bar: Point4,
    /// `|K̄L̄|`, equal to `y` by Ivory's lemma.
    pub distance: f64,
    /// Box of the rotational family having `KL` and `K̄L̄` as great diagonals.
    pub rotational_box: RotationalBox,
}

/// `L̄` in the plane of `F1F2K` on the side of `K` with `|F1L̄| = s-c`,
/// `|F2L̄| = s-d`, and `K̄` in the plane of `F1F2L` on the side of `L` with
/// `|F1K̄| = s-b`, `|F2K̄| = s-a`.
pub fn regge_partner_points(t: &Tetrahedron) -> Result<PartnerPoints> {
    let g = t.geometry();
    let e = t.edges();
    let phi = hinge_angle(t);
    let rbox = RotationalBox {
        geometry: g,
        focal_distance: e.x,
        sigma: [e.a + e.b, e.c + e.d],
        delta: [e.a - e.b, e.d - e.c],
        omega: [0.0, phi],
    };
    // K = corner 0, L = corner 7, K̄ = (σ₂, δ₁, ω₂) = 5, L̄ = (σ₁, δ₂, ω₁) = 2
    let k_bar = rbox.vertex(0b101)?;
    let l_bar = rbox.vertex(0b010)?;
    Ok(PartnerPoints { k_bar, l_bar, distance: g.distance(&k_bar, &l_bar), rotational_box: rbox })
}

/// Transverse heights in the Euclidean volume argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeightIdentity {
    pub h_k: f64,
    pub h_l: f64,
    pub h_k_bar: f64,
    pub h_l_bar: f64,
    /// Axial and transverse factors of the map sending the ellipsoid through
    /// `K` to the one through `K̄` (and the one through `L̄` to the one through `L`).
    pub p: f64,
    pub q: f64,
    /// Image of `K` under that map; lies on the hyperboloid sheet of `K`.
    pub k_prime: Vector3<f64>,
}

impl HeightIdentity {
    /// `max(|h_K̄ - q h_K|, |h_L - q h_L̄|, |h_K h_L - h_K̄ h_L̄|)`.
    pub fn residual(&self) -> f64 {
        (self.h_k_bar - self.q * self.h_k)
            .abs()
            .max((self.h_l - self.q * self.h_l_bar).abs())
            .max((self.h_k * self.h_l - self.h_k_bar * self.h_l_bar).abs())
    }
}

pub fn euclidean_height_identity(t: &Tetrahedron) -> Result<HeightIdentity> {
    if t.geometry() != Geometry::Euclidean {
        return Err(Error::Domain("height identity is Euclidean".into()));
    }
    let e = t.edges();
    let pts = regge_partner_points(t)?;
    let f = 0.5 * e.x;
    let centered = |p: &Point4| Vector3::new(p[1] - f, p[2], p[3]);
    let height = |v: &Vector3<f64>| v[1].hypot(v[2]);
    let (k, l) = (centered(t.vertex(Vertex::K)), centered(t.vertex(Vertex::L)));
    let (kb, lb) = (centered(&pts.k_bar), centered(&pts.l_bar));
    let minor = |sigma: f64| (0.25 * sigma * sigma - f * f).sqrt();
    let (s1, s2) = (e.a + e.b, e.c + e.d);
    let p = s2 / s1;
    let q = minor(s2) / minor(s1);
    Ok(HeightIdentity {
        h_k: height(&k),
        h_l: height(&l),
        h_k_bar: height(&kb),
        h_l_bar: height(&lb),
        p,
        q,
        k_prime: Vector3::new(p * k[0], q * k[1], q * k[2]),
    })
}
