//! Triangle solvers in the three constant-curvature planes.
//!
//! The workhorses are the half-angle formulas
//!
//! ```text
//! tan(α/2) = sqrt( S(s-b) S(s-c) / (S(s) S(s-a)) ),   S = id, sin, sinh
//! ```
//!
//! and, for κ = ±1, the dual half-side formulas in terms of the semi-angle-sum σ.
//! Multiplying or dividing two of them gives the four bijections
//! (side sum ↔ half-angle product, side difference ↔ half-angle ratio, and the
//! dual pair for angles), each of which is inverted here in closed form.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Geometry;

/// Relative threshold below which `s - a` (and friends) count as zero.
pub const DEGENERACY_TOL: f64 = 1e-12;
/// Square-root arguments in `[-SQRT_CLAMP, 0)` are rounded up to zero.
pub const SQRT_CLAMP: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriangleSides {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriangleAngles {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SemiQuantities {
    pub s: f64,
    pub sigma: f64,
}

impl TriangleSides {
    pub fn new(a: f64, b: f64, c: f64) -> Self {
        Self { a, b, c }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.a, self.b, self.c]
    }

    /// Cyclic rotation so that `vertex` becomes the first corner.
    fn rotated(&self, vertex: usize) -> [f64; 3] {
        let v = self.as_array();
        [v[vertex % 3], v[(vertex + 1) % 3], v[(vertex + 2) % 3]]
    }
}

impl TriangleAngles {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Self {
        Self { alpha, beta, gamma }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.alpha, self.beta, self.gamma]
    }

    pub fn sum(&self) -> f64 {
        self.alpha + self.beta + self.gamma
    }
}

pub fn semi_quantities(sides: &TriangleSides, angles: &TriangleAngles) -> SemiQuantities {
    SemiQuantities {
        s: 0.5 * (sides.a + sides.b + sides.c),
        sigma: 0.5 * angles.sum(),
    }
}

fn clamped_sqrt(x: f64, what: &str) -> Result<f64> {
    if x >= 0.0 {
        Ok(x.sqrt())
    } else if x >= -SQRT_CLAMP {
        Ok(0.0)
    } else {
        Err(Error::Domain(format!("negative square-root argument {x:e} in {what}")))
    }
}

/// Smallest of `s - a`, `s - b`, `s - c` (and `π - s` for κ = +1) relative to
/// the longest side. Negative when a triangle inequality fails.
pub fn triangle_margin(g: Geometry, a: f64, b: f64, c: f64) -> f64 {
    let max = a.max(b).max(c);
    let mut worst = (0.5 * (b + c - a)).min(0.5 * (c + a - b)).min(0.5 * (a + b - c));
    if g == Geometry::Spherical {
        worst = worst.min(PI - 0.5 * (a + b + c));
    }
    worst / max
}

/// Checks positivity, the strict triangle inequalities, and (κ=+1) the
/// perimeter bound, rejecting near-degenerate triangles.
pub fn validate_sides(g: Geometry, sides: &TriangleSides) -> Result<()> {
    let v = sides.as_array();
    if let Some(bad) = v.iter().find(|&&l| !g.admits_length(l)) {
        return Err(Error::Domain(format!("side length {bad} is not admissible in {g} geometry")));
    }
    let worst = triangle_margin(g, v[0], v[1], v[2]);
    if worst < 0.0 {
        Err(Error::Domain(format!("sides {v:?} violate the triangle inequality")))
    } else if worst < DEGENERACY_TOL {
        Err(Error::DegenerateTriangle(format!("sides {v:?} are within tolerance of degenerate")))
    } else {
        Ok(())
    }
}

/// Half-angle tangents at the three corners without any validity checks.
///
/// Corner `i` is opposite side `i`. Arguments that round slightly negative are
/// clamped at zero, so near-degenerate inputs give `0` or `inf` rather than NaN.
pub fn half_angle_tangents_unchecked(g: Geometry, a: f64, b: f64, c: f64) -> [f64; 3] {
    let s = g.sine(0.5 * (a + b + c));
    let sa = g.sine(0.5 * (b + c - a)).max(0.0);
    let sb = g.sine(0.5 * (c + a - b)).max(0.0);
    let sc = g.sine(0.5 * (a + b - c)).max(0.0);
    let s = s.max(0.0);
    [
        (sb * sc / (s * sa)).sqrt(),
        (sc * sa / (s * sb)).sqrt(),
        (sa * sb / (s * sc)).sqrt(),
    ]
}

/// Angles of a triangle from its sides without validity checks; see
/// [`half_angle_tangents_unchecked`].
pub fn angles_unchecked(g: Geometry, a: f64, b: f64, c: f64) -> [f64; 3] {
    half_angle_tangents_unchecked(g, a, b, c).map(|t| 2.0 * t.atan())
}

/// `tan(angle/2)` at the corner opposite side `vertex` (0 = a, 1 = b, 2 = c).
pub fn half_angle_tangent(g: Geometry, sides: &TriangleSides, vertex: usize) -> Result<f64> {
    if vertex > 2 {
        return Err(Error::Domain(format!("triangle vertex index {vertex} out of range")));
    }
    validate_sides(g, sides)?;
    let [a, b, c] = sides.rotated(vertex);
    let s = g.sine(0.5 * (a + b + c));
    let sa = g.sine(0.5 * (b + c - a));
    let sb = g.sine(0.5 * (c + a - b));
    let sc = g.sine(0.5 * (a + b - c));
    clamped_sqrt(sb * sc / (s * sa), "half-angle formula")
}

pub fn solve_angles_from_sides(g: Geometry, sides: &TriangleSides) -> Result<TriangleAngles> {
    validate_sides(g, sides)?;
    let [alpha, beta, gamma] = angles_unchecked(g, sides.a, sides.b, sides.c);
    Ok(TriangleAngles { alpha, beta, gamma })
}

/// Checks that three angles belong to a triangle of geometry `g`.
///
/// For κ = 0 the sum must be π to within `1e-9`; for κ = ±1 the half-side
/// radicands must be positive, which encodes both the excess/defect sign and
/// the polar triangle inequalities.
pub fn validate_angles(g: Geometry, angles: &TriangleAngles) -> Result<()> {
    let v = angles.as_array();
    if v.iter().any(|&t| !(t.is_finite() && t > 0.0 && t < PI)) {
        return Err(Error::Domain(format!("angles {v:?} must lie in (0, π)")));
    }
    let sum = angles.sum();
    match g {
        Geometry::Euclidean => {
            if (sum - PI).abs() > 1e-9 {
                return Err(Error::Domain(format!("Euclidean angle sum {sum} is not π")));
            }
        }
        Geometry::Spherical => {
            if sum <= PI {
                return Err(Error::Domain(format!("spherical angle sum {sum} is not above π")));
            }
        }
        Geometry::Hyperbolic => {
            if sum >= PI {
                return Err(Error::Domain(format!("hyperbolic angle sum {sum} is not below π")));
            }
        }
    }
    if g != Geometry::Euclidean {
        let cs = half_side_cosines(angles);
        let sign = if g == Geometry::Spherical { -1.0 } else { 1.0 };
        let radicands = [sign * cs[0], cs[1], cs[2], cs[3]];
        let max = v.iter().cloned().fold(0.0, f64::max);
        if radicands.iter().any(|&r| r <= DEGENERACY_TOL * max) {
            return Err(Error::Domain(format!("angles {v:?} do not bound a {g} triangle")));
        }
    }
    Ok(())
}

/// `[cos σ, cos(σ-α), cos(σ-β), cos(σ-γ)]`.
fn half_side_cosines(angles: &TriangleAngles) -> [f64; 4] {
    let [al, be, ga] = angles.as_array();
    [
        (0.5 * (al + be + ga)).cos(),
        (0.5 * (be + ga - al)).cos(),
        (0.5 * (ga + al - be)).cos(),
        (0.5 * (al + be - ga)).cos(),
    ]
}

/// `tan(a/2)` (κ=+1) or `tanh(a/2)` (κ=-1) of the side opposite corner `side`
/// of the unique triangle with the given angles.
pub fn half_side_tangent(g: Geometry, angles: &TriangleAngles, side: usize) -> Result<f64> {
    if g == Geometry::Euclidean {
        return Err(Error::Domain("angles do not determine a Euclidean triangle".into()));
    }
    if side > 2 {
        return Err(Error::Domain(format!("triangle side index {side} out of range")));
    }
    validate_angles(g, angles)?;
    let c = half_side_cosines(angles);
    let (own, o1, o2) = (c[1 + side], c[1 + (side + 1) % 3], c[1 + (side + 2) % 3]);
    let sign = if g == Geometry::Spherical { -1.0 } else { 1.0 };
    clamped_sqrt(sign * c[0] * own / (o1 * o2), "half-side formula")
}

/// Sides of the triangle with the given angles (κ = ±1 only).
pub fn solve_sides_from_angles(g: Geometry, angles: &TriangleAngles) -> Result<TriangleSides> {
    let mut out = [0.0; 3];
    for (i, slot) in out.iter_mut().enumerate() {
        *slot = g.half_atan(half_side_tangent(g, angles, i)?);
    }
    Ok(TriangleSides::new(out[0], out[1], out[2]))
}

/// Side-angle-side closure: two sides and the included angle γ.
///
/// The third side is measured between explicit model points, which stays
/// accurate for both very small and nearly antipodal configurations.
pub fn solve_sas(g: Geometry, a: f64, b: f64, gamma: f64) -> Result<(TriangleSides, TriangleAngles)> {
    if !g.admits_length(a) || !g.admits_length(b) {
        return Err(Error::Domain(format!("sides {a}, {b} are not admissible in {g} geometry")));
    }
    if !(gamma > 0.0 && gamma < PI) {
        return Err(Error::Domain(format!("included angle {gamma} must lie in (0, π)")));
    }
    let p = g.exp_from_base(b, [1.0, 0.0, 0.0]);
    let q = g.exp_from_base(a, [gamma.cos(), gamma.sin(), 0.0]);
    let c = g.distance(&p, &q);
    let sides = TriangleSides::new(a, b, c);
    let [alpha, beta, _] = angles_unchecked(g, a, b, c);
    Ok((sides, TriangleAngles::new(alpha, beta, gamma)))
}

/// `tan(α/2)·tan(β/2)` for a triangle with base `c` and `a + b = a_plus_b`.
pub fn side_sum_product(g: Geometry, c: f64, a_plus_b: f64) -> Result<f64> {
    check_base(g, c)?;
    if !(a_plus_b > c) {
        return Err(Error::Domain(format!("a + b = {a_plus_b} must exceed c = {c}")));
    }
    if g == Geometry::Spherical && a_plus_b + c >= 2.0 * PI {
        return Err(Error::Domain(format!("perimeter {} is not below 2π", a_plus_b + c)));
    }
    Ok(g.sine(0.5 * (a_plus_b - c)) / g.sine(0.5 * (a_plus_b + c)))
}

/// Inverse of [`side_sum_product`]: the side sum `a + b` for a given product.
pub fn side_sum_from_product(g: Geometry, c: f64, product: f64) -> Result<f64> {
    check_base(g, c)?;
    let k = product;
    let in_range = match g {
        Geometry::Euclidean => k > 0.0 && k < 1.0,
        Geometry::Spherical => k > 0.0 && k.is_finite(),
        Geometry::Hyperbolic => k > 0.0 && k < (-c).exp(),
    };
    if !in_range {
        return Err(Error::Domain(format!("product {k} is not attainable for base {c} in {g} geometry")));
    }
    Ok(match g {
        Geometry::Euclidean => c * (1.0 + k) / (1.0 - k),
        // tan((a+b)/2) = tan(c/2)(1+k)/(1-k); (a+b)/2 may exceed π/2
        Geometry::Spherical => 2.0 * ((0.5 * c).tan() * (1.0 + k)).atan2(1.0 - k),
        Geometry::Hyperbolic => 2.0 * ((0.5 * c).tanh() * (1.0 + k) / (1.0 - k)).atanh(),
    })
}

/// `tan(α/2)/tan(β/2)` for a triangle with base `c` and `a - b = a_minus_b`.
pub fn side_diff_ratio(g: Geometry, c: f64, a_minus_b: f64) -> Result<f64> {
    check_base(g, c)?;
    if !(a_minus_b.abs() < c) {
        return Err(Error::Domain(format!("|a - b| = {} must be below c = {c}", a_minus_b.abs())));
    }
    Ok(g.sine(0.5 * (c + a_minus_b)) / g.sine(0.5 * (c - a_minus_b)))
}

/// Inverse of [`side_diff_ratio`].
pub fn side_diff_from_ratio(g: Geometry, c: f64, ratio: f64) -> Result<f64> {
    check_base(g, c)?;
    if !(ratio > 0.0 && ratio.is_finite()) {
        return Err(Error::Domain(format!("ratio {ratio} must be positive")));
    }
    let r = (ratio - 1.0) / (ratio + 1.0);
    Ok(g.half_atan(g.half_tan(c) * r))
}

fn check_base(g: Geometry, c: f64) -> Result<()> {
    if g.admits_length(c) {
        Ok(())
    } else {
        Err(Error::Domain(format!("base {c} is not admissible in {g} geometry")))
    }
}

fn check_dual(g: Geometry, gamma: f64) -> Result<()> {
    if g == Geometry::Euclidean {
        return Err(Error::Domain("the angle bijections need κ = ±1".into()));
    }
    if !(gamma > 0.0 && gamma < PI) {
        return Err(Error::Domain(format!("angle {gamma} must lie in (0, π)")));
    }
    Ok(())
}

/// Half-side tangent product `T(a/2)·T(b/2)` of a triangle with angle γ and
/// `α + β = angle_sum`; `T` is `tan` (κ=+1) or `tanh` (κ=-1).
pub fn side_product_from_angle_sum(g: Geometry, gamma: f64, angle_sum: f64) -> Result<f64> {
    check_dual(g, gamma)?;
    let q = angle_sum;
    let valid = match g {
        Geometry::Spherical => q > PI - gamma && q < PI + gamma,
        _ => q > 0.0 && q < PI - gamma,
    };
    if !valid {
        return Err(Error::Domain(format!("angle sum {q} is not attainable with γ = {gamma} in {g} geometry")));
    }
    let num = (0.5 * (q + gamma)).cos();
    let den = (0.5 * (q - gamma)).cos();
    Ok(if g == Geometry::Spherical { -num / den } else { num / den })
}

/// Inverse of [`side_product_from_angle_sum`]: `α + β` from the half-side product.
pub fn angle_sum_from_side_product(g: Geometry, gamma: f64, side_product: f64) -> Result<f64> {
    check_dual(g, gamma)?;
    let p = side_product;
    let tg = (0.5 * gamma).tan();
    match g {
        Geometry::Spherical if p > 0.0 && p.is_finite() => {
            // tan(q/2) tan(γ/2) = (1+P)/(1-P)
            Ok(2.0 * (1.0 + p).atan2((1.0 - p) * tg))
        }
        Geometry::Hyperbolic if p > 0.0 && p < 1.0 => Ok(2.0 * ((1.0 - p) / ((1.0 + p) * tg)).atan()),
        _ => Err(Error::Domain(format!("side product {p} is not attainable with γ = {gamma} in {g} geometry"))),
    }
}

/// Half-side tangent ratio `T(a/2)/T(b/2)` for angle γ and `α - β = angle_diff`.
pub fn side_ratio_from_angle_diff(g: Geometry, gamma: f64, angle_diff: f64) -> Result<f64> {
    check_dual(g, gamma)?;
    if !(angle_diff.abs() < PI - gamma) {
        return Err(Error::Domain(format!("|α - β| = {} must be below π - γ", angle_diff.abs())));
    }
    Ok((0.5 * (gamma - angle_diff)).cos() / (0.5 * (gamma + angle_diff)).cos())
}

/// Inverse of [`side_ratio_from_angle_diff`].
pub fn angle_diff_from_side_ratio(g: Geometry, gamma: f64, ratio: f64) -> Result<f64> {
    check_dual(g, gamma)?;
    if !(ratio > 0.0 && ratio.is_finite()) {
        return Err(Error::Domain(format!("ratio {ratio} must be positive")));
    }
    Ok(2.0 * ((ratio - 1.0) / ((ratio + 1.0) * (0.5 * gamma).tan())).atan())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const E: Geometry = Geometry::Euclidean;
    const S: Geometry = Geometry::Spherical;
    const H: Geometry = Geometry::Hyperbolic;

    /// Cosine-law solver used as an independent oracle.
    fn cosine_law_angles(g: Geometry, a: f64, b: f64, c: f64) -> [f64; 3] {
        let ang = |a: f64, b: f64, c: f64| match g {
            Geometry::Euclidean => ((b * b + c * c - a * a) / (2.0 * b * c)).acos(),
            Geometry::Spherical => ((a.cos() - b.cos() * c.cos()) / (b.sin() * c.sin())).acos(),
            Geometry::Hyperbolic => ((b.cosh() * c.cosh() - a.cosh()) / (b.sinh() * c.sinh())).acos(),
        };
        [ang(a, b, c), ang(b, c, a), ang(c, a, b)]
    }

    #[test]
    fn equilateral_and_octant() {
        let t = solve_angles_from_sides(E, &TriangleSides::new(1.0, 1.0, 1.0)).unwrap();
        for x in t.as_array() {
            assert_relative_eq!(x, PI / 3.0, epsilon = 1e-15);
        }
        let h = PI / 2.0;
        let t = solve_angles_from_sides(S, &TriangleSides::new(h, h, h)).unwrap();
        for x in t.as_array() {
            assert_relative_eq!(x, h, epsilon = 1e-15);
        }
    }

    #[test]
    fn right_triangle_345() {
        let t = solve_angles_from_sides(E, &TriangleSides::new(3.0, 4.0, 5.0)).unwrap();
        assert_relative_eq!(t.alpha, (0.75f64).atan(), epsilon = 1e-15);
        assert_relative_eq!(t.beta, (4.0f64 / 3.0).atan(), epsilon = 1e-15);
        assert_relative_eq!(t.gamma, PI / 2.0, epsilon = 1e-15);
        let k = half_angle_tangent(E, &TriangleSides::new(3.0, 4.0, 5.0), 0).unwrap();
        assert_relative_eq!(k, 1.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn half_angle_tangent_anchors() {
        let eq = TriangleSides::new(1.0, 1.0, 1.0);
        for v in 0..3 {
            assert_relative_eq!(half_angle_tangent(E, &eq, v).unwrap(), 1.0 / 3f64.sqrt(), epsilon = 1e-15);
        }
        let h = PI / 2.0;
        assert_relative_eq!(half_angle_tangent(S, &TriangleSides::new(h, h, h), 1).unwrap(), 1.0, epsilon = 1e-15);
        assert!(half_angle_tangent(E, &eq, 3).is_err());
    }

    #[test]
    fn degenerate_triangles_rejected() {
        assert!(matches!(
            solve_angles_from_sides(E, &TriangleSides::new(1.0, 1.0, 2.0)),
            Err(Error::DegenerateTriangle(_))
        ));
        assert!(matches!(
            solve_angles_from_sides(E, &TriangleSides::new(1.0, 1.0, 3.0)),
            Err(Error::Domain(_))
        ));
        // spherical lune: perimeter 2π
        assert!(solve_angles_from_sides(S, &TriangleSides::new(2.0, 2.0, 2.0 * PI - 4.0)).is_err());
        assert!(solve_angles_from_sides(S, &TriangleSides::new(3.2, 1.0, 1.0)).is_err());
    }

    #[test]
    fn cosine_law_agreement() {
        for (g, sides) in [
            (E, [0.7, 1.1, 1.3]),
            (S, [0.7, 1.1, 1.3]),
            (S, [2.5, 2.0, 1.0]),
            (H, [0.7, 1.1, 1.3]),
            (H, [3.0, 2.5, 1.2]),
        ] {
            let t = solve_angles_from_sides(g, &TriangleSides::new(sides[0], sides[1], sides[2])).unwrap();
            let o = cosine_law_angles(g, sides[0], sides[1], sides[2]);
            for (x, y) in t.as_array().iter().zip(o) {
                assert_relative_eq!(*x, y, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn sas_anchors() {
        let (s, _) = solve_sas(E, 1.0, 1.0, PI / 2.0).unwrap();
        assert_relative_eq!(s.c, 2f64.sqrt(), epsilon = 1e-15);
        let (s, a) = solve_sas(S, PI / 2.0, PI / 2.0, PI / 2.0).unwrap();
        assert_relative_eq!(s.c, PI / 2.0, epsilon = 1e-15);
        assert_relative_eq!(a.alpha, PI / 2.0, epsilon = 1e-14);
        let (s, _) = solve_sas(H, 1.0, 1.0, PI / 2.0).unwrap();
        let expect = (1f64.cosh().powi(2)).acosh();
        assert_relative_eq!(s.c, expect, epsilon = 1e-14);
        assert_relative_eq!(s.c, 1.513374006596504, epsilon = 1e-12);
        assert!(solve_sas(S, PI, 1.0, 1.0).is_err());
    }

    #[test]
    fn half_side_anchors() {
        let h = PI / 2.0;
        let oct = TriangleAngles::new(h, h, h);
        for i in 0..3 {
            assert_relative_eq!(half_side_tangent(S, &oct, i).unwrap(), 1.0, epsilon = 1e-15);
        }
        assert!(half_side_tangent(E, &oct, 0).is_err());

        // hyperbolic equilateral with angles π/4: dual cosine law
        // cosh a = (cos α + cos² α) / sin² α
        let q = PI / 4.0;
        let a = ((q.cos() + q.cos().powi(2)) / q.sin().powi(2)).acosh();
        let t = half_side_tangent(H, &TriangleAngles::new(q, q, q), 0).unwrap();
        assert_relative_eq!(t, (0.5 * a).tanh(), epsilon = 1e-14);

        // spherical equilateral with angles 2π/3: cos a = (cos α + cos² α) / sin² α
        let q = 2.0 * PI / 3.0;
        let a = ((q.cos() + q.cos().powi(2)) / q.sin().powi(2)).acos();
        let t = half_side_tangent(S, &TriangleAngles::new(q, q, q), 2).unwrap();
        assert_relative_eq!(t, (0.5 * a).tan(), epsilon = 1e-14);
    }

    #[test]
    fn sum_product_anchors() {
        assert_relative_eq!(side_sum_product(E, 1.0, 2.0).unwrap(), 1.0 / 3.0, epsilon = 1e-15);
        assert_relative_eq!(side_sum_product(S, PI / 2.0, 2.0 * PI / 3.0).unwrap(), 2.0 - 3f64.sqrt(), epsilon = 1e-15);
        assert_relative_eq!(side_sum_product(E, 5.0, 7.0).unwrap(), 1.0 / 6.0, epsilon = 1e-15);
        assert!(side_sum_product(E, 1.0, 1.0).is_err());
        assert!(side_sum_from_product(E, 1.0, 1.0).is_err());
        assert!(side_sum_from_product(H, 1.0, 0.5).is_err());
    }

    #[test]
    fn diff_ratio_anchors() {
        for g in Geometry::ALL {
            assert_relative_eq!(side_diff_ratio(g, 1.0, 0.0).unwrap(), 1.0, epsilon = 1e-15);
        }
        assert_relative_eq!(side_diff_ratio(E, 5.0, -1.0).unwrap(), 2.0 / 3.0, epsilon = 1e-15);
        assert_relative_eq!(side_diff_ratio(E, 1.0, 0.5).unwrap(), 3.0, epsilon = 1e-15);
        assert!(side_diff_ratio(E, 1.0, 1.0).is_err());
    }

    #[test]
    fn angle_sum_anchors() {
        assert_relative_eq!(angle_sum_from_side_product(S, PI / 2.0, 1.0).unwrap(), PI, epsilon = 1e-15);
        let (_, t) = solve_sas(S, 0.8, 0.8, PI / 2.0).unwrap();
        let q = angle_sum_from_side_product(S, PI / 2.0, 0.4f64.tan().powi(2)).unwrap();
        assert_relative_eq!(q, t.alpha + t.beta, epsilon = 1e-13);
        let (_, t) = solve_sas(H, 1.0, 1.0, PI / 3.0).unwrap();
        let q = angle_sum_from_side_product(H, PI / 3.0, 0.5f64.tanh().powi(2)).unwrap();
        assert_relative_eq!(q, t.alpha + t.beta, epsilon = 1e-13);
        assert!(angle_sum_from_side_product(E, 1.0, 0.5).is_err());
        assert!(angle_sum_from_side_product(H, 1.0, 1.5).is_err());
    }

    #[test]
    fn polar_duality() {
        // the polar of (a, b, c; α, β, γ) has sides π-α.. and angles π-a..
        let sides = TriangleSides::new(1.1, 0.8, 1.4);
        let ang = solve_angles_from_sides(S, &sides).unwrap();
        let polar = TriangleAngles::new(PI - sides.a, PI - sides.b, PI - sides.c);
        for i in 0..3 {
            let hs = half_side_tangent(S, &polar, i).unwrap();
            let polar_side = PI - ang.as_array()[i];
            assert_relative_eq!(hs, (0.5 * polar_side).tan(), epsilon = 1e-13);
        }
    }
}
