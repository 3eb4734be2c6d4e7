//! Labeled tetrahedra: validation, embedding, dihedral/face/solid angles.
//!
//! Vertices are `F1, F2, K, L` with
//!
//! ```text
//! x = |F1F2|, y = |KL|, a = |F1K|, b = |F2K|, c = |F2L|, d = |F1L|
//! ```
//!
//! so the opposite pairs are `(x, y)`, `(a, c)`, `(b, d)` and the faces are
//! `(x,a,b)`, `(x,c,d)`, `(y,a,d)`, `(y,b,c)`.

use std::f64::consts::PI;
use std::fmt;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Geometry, Point4};
use crate::trig;

/// Relative tolerance of the Gram / Cayley–Menger existence test.
pub const GRAM_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Vertex {
    F1,
    F2,
    K,
    L,
}

impl Vertex {
    pub const ALL: [Vertex; 4] = [Vertex::F1, Vertex::F2, Vertex::K, Vertex::L];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Vertex::F1 => "F1",
            Vertex::F2 => "F2",
            Vertex::K => "K",
            Vertex::L => "L",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Edge {
    X,
    Y,
    A,
    B,
    C,
    D,
}

impl Edge {
    /// Edges in the canonical `x, y, a, b, c, d` order.
    pub const ALL: [Edge; 6] = [Edge::X, Edge::Y, Edge::A, Edge::B, Edge::C, Edge::D];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Edge::X => "x",
            Edge::Y => "y",
            Edge::A => "a",
            Edge::B => "b",
            Edge::C => "c",
            Edge::D => "d",
        }
    }

    pub fn endpoints(self) -> (Vertex, Vertex) {
        use Vertex::*;
        match self {
            Edge::X => (F1, F2),
            Edge::Y => (K, L),
            Edge::A => (F1, K),
            Edge::B => (F2, K),
            Edge::C => (F2, L),
            Edge::D => (F1, L),
        }
    }

    pub fn opposite(self) -> Edge {
        match self {
            Edge::X => Edge::Y,
            Edge::Y => Edge::X,
            Edge::A => Edge::C,
            Edge::C => Edge::A,
            Edge::B => Edge::D,
            Edge::D => Edge::B,
        }
    }

    pub fn between(u: Vertex, v: Vertex) -> Option<Edge> {
        Edge::ALL.into_iter().find(|e| {
            let (p, q) = e.endpoints();
            (p == u && q == v) || (p == v && q == u)
        })
    }

    pub fn contains(self, v: Vertex) -> bool {
        let (p, q) = self.endpoints();
        p == v || q == v
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The four faces as edge triples, in the order `(x,a,b)`, `(x,c,d)`, `(y,a,d)`, `(y,b,c)`.
pub const FACES: [[Edge; 3]; 4] = [
    [Edge::X, Edge::A, Edge::B],
    [Edge::X, Edge::C, Edge::D],
    [Edge::Y, Edge::A, Edge::D],
    [Edge::Y, Edge::B, Edge::C],
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdgeLengths {
    pub x: f64,
    pub y: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl EdgeLengths {
    pub fn new(x: f64, y: f64, a: f64, b: f64, c: f64, d: f64) -> Self {
        Self { x, y, a, b, c, d }
    }

    pub fn uniform(l: f64) -> Self {
        Self::new(l, l, l, l, l, l)
    }

    pub fn from_array(v: [f64; 6]) -> Self {
        Self::new(v[0], v[1], v[2], v[3], v[4], v[5])
    }

    pub fn as_array(&self) -> [f64; 6] {
        [self.x, self.y, self.a, self.b, self.c, self.d]
    }

    pub fn get(&self, e: Edge) -> f64 {
        self.as_array()[e.index()]
    }

    pub fn with(&self, e: Edge, value: f64) -> Self {
        let mut v = self.as_array();
        v[e.index()] = value;
        Self::from_array(v)
    }

    pub fn between(&self, u: Vertex, v: Vertex) -> f64 {
        Edge::between(u, v).map_or(0.0, |e| self.get(e))
    }
}

impl fmt::Display for EdgeLengths {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{},{},{}", self.x, self.y, self.a, self.b, self.c, self.d)
    }
}

/// Interior dihedral angles, one per edge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DihedralAngles {
    pub phi: f64,
    pub psi: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
}

impl DihedralAngles {
    pub fn from_array(v: [f64; 6]) -> Self {
        Self { phi: v[0], psi: v[1], alpha: v[2], beta: v[3], gamma: v[4], delta: v[5] }
    }

    pub fn as_array(&self) -> [f64; 6] {
        [self.phi, self.psi, self.alpha, self.beta, self.gamma, self.delta]
    }

    pub fn get(&self, e: Edge) -> f64 {
        self.as_array()[e.index()]
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.as_array()
            .iter()
            .zip(other.as_array())
            .map(|(p, q)| (p - q).abs())
            .fold(0.0, f64::max)
    }
}

/// Vertex coordinates in the ambient model, indexed by [`Vertex::index`].
#[derive(Debug, Clone, PartialEq)]
pub struct Embedding {
    pub vertices: [Point4; 4],
}

/// Vertex Gram matrix (κ = ±1) or Cayley–Menger matrix (κ = 0) with its
/// determinant and cofactor matrix.
#[derive(Debug, Clone)]
pub struct GramData {
    pub matrix: DMatrix<f64>,
    pub determinant: f64,
    pub cofactors: DMatrix<f64>,
    /// Vertex carried by each non-border row.
    pub vertex_order: [Vertex; 4],
}

impl GramData {
    /// Row of `v` in [`GramData::matrix`].
    pub fn row_of(&self, v: Vertex) -> usize {
        let border = usize::from(self.matrix.nrows() == 5);
        border + self.vertex_order.iter().position(|&w| w == v).unwrap_or(0)
    }

    /// Sign the determinant has for a nondegenerate tetrahedron.
    pub fn valid_sign(g: Geometry) -> f64 {
        if g == Geometry::Hyperbolic {
            -1.0
        } else {
            1.0
        }
    }

    fn scale(&self) -> f64 {
        let max_entry = self.matrix.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let max_cof = self.cofactors.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        max_entry * max_cof
    }
}

/// Cayley–Menger layout with rows border, K, F1, F2, L:
///
/// ```text
/// | 0  1   1   1   1  |
/// | 1  0   a²  b²  y² |
/// | 1  a²  0   x²  d² |
/// | 1  b²  x²  0   c² |
/// | 1  y²  d²  c²  0  |
/// ```
pub const CM_ORDER: [Vertex; 4] = [Vertex::K, Vertex::F1, Vertex::F2, Vertex::L];

fn cofactor_matrix(m: &DMatrix<f64>) -> DMatrix<f64> {
    let n = m.nrows();
    DMatrix::from_fn(n, n, |i, j| {
        let minor = m.clone().remove_row(i).remove_column(j);
        let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
        sign * minor.determinant()
    })
}

/// Gram or Cayley–Menger data straight from edge lengths.
pub fn gram_data_for(g: Geometry, e: &EdgeLengths) -> GramData {
    match g {
        Geometry::Euclidean => {
            let mut m = DMatrix::zeros(5, 5);
            for i in 1..5 {
                m[(0, i)] = 1.0;
                m[(i, 0)] = 1.0;
            }
            for (i, &u) in CM_ORDER.iter().enumerate() {
                for (j, &v) in CM_ORDER.iter().enumerate() {
                    let l = e.between(u, v);
                    m[(i + 1, j + 1)] = l * l;
                }
            }
            let cofactors = cofactor_matrix(&m);
            GramData { determinant: m.determinant(), matrix: m, cofactors, vertex_order: CM_ORDER }
        }
        _ => {
            let entry = |l: f64| {
                if g == Geometry::Spherical {
                    l.cos()
                } else {
                    -l.cosh()
                }
            };
            let m = DMatrix::from_fn(4, 4, |i, j| {
                if i == j {
                    entry(0.0)
                } else {
                    entry(e.between(Vertex::ALL[i], Vertex::ALL[j]))
                }
            });
            let cofactors = cofactor_matrix(&m);
            GramData { determinant: m.determinant(), matrix: m, cofactors, vertex_order: Vertex::ALL }
        }
    }
}

fn face_label(face: &[Edge; 3]) -> String {
    format!("({},{},{})", face[0], face[1], face[2])
}

#[derive(Debug, Clone)]
pub struct Tetrahedron {
    geometry: Geometry,
    edges: EdgeLengths,
    embedding: Embedding,
}

/// Validates six edge lengths and embeds the tetrahedron; see [`validate_with_tolerance`].
pub fn validate(g: Geometry, e: &EdgeLengths) -> Result<Tetrahedron> {
    validate_with_tolerance(g, e, GRAM_TOL)
}

/// Validation with an explicit degeneracy tolerance.
///
/// Faces are checked first (triangle inequalities, spherical perimeter), then
/// the sign of the Gram / Cayley–Menger determinant. Given valid faces, a
/// positive CM determinant (κ=0), a positive definite Gram matrix (κ=+1) and a
/// Gram matrix of signature (3,1) (κ=-1) each reduce to a determinant sign.
/// `tol = 0` accepts everything that strictly exists.
pub fn validate_with_tolerance(g: Geometry, e: &EdgeLengths, tol: f64) -> Result<Tetrahedron> {
    for edge in Edge::ALL {
        let l = e.get(edge);
        if !g.admits_length(l) {
            return Err(Error::NonexistentTetrahedron(format!(
                "edge {edge} = {l} is not an admissible {g} length"
            )));
        }
    }
    for face in &FACES {
        let m = trig::triangle_margin(g, e.get(face[0]), e.get(face[1]), e.get(face[2]));
        let label = face_label(face);
        if m < 0.0 {
            return Err(Error::NonexistentTetrahedron(format!("face {label} violates triangle inequality")));
        }
        if m <= tol.min(trig::DEGENERACY_TOL) {
            return Err(Error::DegenerateTetrahedron(format!("face {label} is degenerate")));
        }
    }
    let gram = gram_data_for(g, e);
    let signed = GramData::valid_sign(g) * gram.determinant;
    let threshold = tol * gram.scale();
    let what = if g == Geometry::Euclidean { "Cayley–Menger" } else { "Gram" };
    if signed < -threshold {
        return Err(Error::NonexistentTetrahedron(format!(
            "{what} determinant {:e} has the wrong sign",
            gram.determinant
        )));
    }
    if !(signed > threshold) {
        return Err(Error::DegenerateTetrahedron(format!(
            "{what} determinant {:e} is within tolerance of zero",
            gram.determinant
        )));
    }
    Ok(Tetrahedron { geometry: g, edges: *e, embedding: embed(g, e) })
}

/// Face angle at `at` in the triangle with sides `s1`, `s2` meeting there and
/// `opp` opposite, unchecked.
fn corner_angle(g: Geometry, opp: f64, s1: f64, s2: f64) -> f64 {
    trig::angles_unchecked(g, opp, s1, s2)[0]
}

fn embed(g: Geometry, e: &EdgeLengths) -> Embedding {
    let theta_k = corner_angle(g, e.b, e.x, e.a);
    let theta_l = corner_angle(g, e.c, e.x, e.d);
    let omega = corner_angle(g, e.y, e.a, e.d);
    let phi = corner_angle(Geometry::Spherical, omega, theta_k, theta_l);
    embed_with_hinge(g, e, phi)
}

/// Standard embedding of the tetrahedron with edges `x, a, b, c, d` from `e`
/// and dihedral angle `phi` at `x`; the `y` slot of `e` is ignored.
///
/// `F1` is the base point, `F2` lies on the first axis, `K` in the plane of
/// the first two axes and `L` on the positive side of the third.
pub fn embed_with_hinge(g: Geometry, e: &EdgeLengths, phi: f64) -> Embedding {
    let theta_k = corner_angle(g, e.b, e.x, e.a);
    let theta_l = corner_angle(g, e.c, e.x, e.d);
    let f1 = g.base_point();
    let f2 = g.exp_from_base(e.x, [1.0, 0.0, 0.0]);
    let k = g.exp_from_base(e.a, [theta_k.cos(), theta_k.sin(), 0.0]);
    let l = g.exp_from_base(
        e.d,
        [theta_l.cos(), theta_l.sin() * phi.cos(), theta_l.sin() * phi.sin()],
    );
    Embedding { vertices: [f1, f2, k, l] }
}

/// Isometry taking `p` to the base point: a translation (κ = 0) or the
/// reflection in the bisector of `p` and the base point.
fn to_base(g: Geometry, p: &Point4) -> impl Fn(&Point4) -> Point4 + '_ {
    let base = g.base_point();
    let v = p - base;
    let vv = g.inner(&v, &v);
    move |w: &Point4| {
        if g == Geometry::Euclidean {
            w - p
        } else if vv == 0.0 {
            *w
        } else {
            w - v * (2.0 * g.inner(w, &v) / vv)
        }
    }
}

impl Embedding {
    /// Dihedral angles from vertex coordinates.
    ///
    /// Each edge is measured at an endpoint moved to the base point, where the
    /// tangent space is ordinary 3-space. Only `F1`, `F2` and `K` are moved,
    /// and those isometries fix the third spatial axis, so the out-of-plane
    /// coordinate of `L` keeps its relative precision and angles near `0` or
    /// `π` stay accurate.
    pub fn dihedral_angles(&self, g: Geometry) -> DihedralAngles {
        let mut out = [0.0; 6];
        for ed in Edge::ALL {
            let (p, q) = ed.endpoints();
            let (p, q) = if p == Vertex::L { (q, p) } else { (p, q) };
            let (r, s) = complement(ed);
            let map = to_base(g, &self.vertices[p.index()]);
            let dir = |v: Vertex| {
                let w = map(&self.vertices[v.index()]);
                let spatial = w.fixed_rows::<3>(1).into_owned();
                spatial / spatial.norm()
            };
            let (wq, wr, ws) = (dir(q), dir(r), dir(s));
            let n1 = wq.cross(&wr);
            let n2 = wq.cross(&ws);
            out[ed.index()] = n1.cross(&n2).norm().atan2(n1.dot(&n2));
        }
        DihedralAngles::from_array(out)
    }
}

/// The six face angles at a vertex, keyed by unordered edge pair.
fn link_sides(g: Geometry, e: &EdgeLengths, v: Vertex) -> [(Edge, Edge, f64); 3] {
    let incident: Vec<Edge> = Edge::ALL.into_iter().filter(|ed| ed.contains(v)).collect();
    let pair = |i: usize, j: usize| {
        let (e1, e2) = (incident[i], incident[j]);
        let far = |ed: Edge| {
            let (p, q) = ed.endpoints();
            if p == v {
                q
            } else {
                p
            }
        };
        let opp = Edge::between(far(e1), far(e2)).expect("distinct far vertices");
        (e1, e2, corner_angle(g, e.get(opp), e.get(e1), e.get(e2)))
    };
    [pair(0, 1), pair(1, 2), pair(0, 2)]
}

/// Dihedral angles computed vertex by vertex from spherical links: the link
/// of a vertex is the spherical triangle whose sides are the three face
/// angles there, and its angles are the dihedral angles of the incident edges.
///
/// Unchecked, and well conditioned near flattening; each edge is read from
/// the link of its first endpoint.
pub fn dihedral_angles_from_links(g: Geometry, e: &EdgeLengths) -> DihedralAngles {
    let mut out = [f64::NAN; 6];
    for v in Vertex::ALL {
        let sides = link_sides(g, e, v);
        // link vertex for edge ed is opposite the side not involving ed
        for ed in Edge::ALL.into_iter().filter(|ed| ed.endpoints().0 == v) {
            let opp = sides.iter().find(|(p, q, _)| *p != ed && *q != ed).expect("three sides").2;
            let adj: Vec<f64> = sides.iter().filter(|(p, q, _)| *p == ed || *q == ed).map(|s| s.2).collect();
            out[ed.index()] = corner_angle(Geometry::Spherical, opp, adj[0], adj[1]);
        }
    }
    DihedralAngles::from_array(out)
}

/// The two vertices not on edge `e`.
fn complement(e: Edge) -> (Vertex, Vertex) {
    let (p, q) = e.endpoints();
    let mut rest = Vertex::ALL.into_iter().filter(|&v| v != p && v != q);
    (rest.next().unwrap(), rest.next().unwrap())
}

fn acos_clamped(x: f64) -> f64 {
    x.clamp(-1.0, 1.0).acos()
}

impl Tetrahedron {
    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    pub fn edges(&self) -> &EdgeLengths {
        &self.edges
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    pub fn vertex(&self, v: Vertex) -> &Point4 {
        &self.embedding.vertices[v.index()]
    }

    pub fn gram_data(&self) -> GramData {
        gram_data_for(self.geometry, &self.edges)
    }

    /// Largest relative discrepancy between embedded distances and edge lengths.
    pub fn embedding_residual(&self) -> f64 {
        Edge::ALL
            .into_iter()
            .map(|ed| {
                let (p, q) = ed.endpoints();
                let d = self.geometry.distance(self.vertex(p), self.vertex(q));
                (d - self.edges.get(ed)).abs() / self.edges.get(ed)
            })
            .fold(0.0, f64::max)
    }

    /// Interior dihedral angles: outward face normals for κ = 0, inverse Gram
    /// matrix for κ = ±1.
    pub fn dihedral_angles(&self) -> DihedralAngles {
        match self.geometry {
            Geometry::Euclidean => self.dihedral_angles_euclidean_normals(),
            _ => self.dihedral_angles_from_cofactors(),
        }
    }

    fn dihedral_angles_euclidean_normals(&self) -> DihedralAngles {
        let pt = |v: Vertex| self.vertex(v).fixed_rows::<3>(1).into_owned();
        let mut out = [0.0; 6];
        for ed in Edge::ALL {
            let (p, q) = ed.endpoints();
            let (r, s) = complement(ed);
            let (p3, q3, r3, s3) = (pt(p), pt(q), pt(r), pt(s));
            let axis = q3 - p3;
            // outward normal of the face (p,q,r) points away from s, and vice versa
            let mut n1 = axis.cross(&(r3 - p3));
            if n1.dot(&(s3 - p3)) > 0.0 {
                n1 = -n1;
            }
            let mut n2 = axis.cross(&(s3 - p3));
            if n2.dot(&(r3 - p3)) > 0.0 {
                n2 = -n2;
            }
            let between = n1.cross(&n2).norm().atan2(n1.dot(&n2));
            out[ed.index()] = PI - between;
        }
        DihedralAngles::from_array(out)
    }

    /// `cos θ_e = -G⁻¹_rs / sqrt(G⁻¹_rr G⁻¹_ss)` where `r, s` are the vertices
    /// off the edge `e`. For κ = 0 the bordered Cayley–Menger cofactors give
    /// `cos θ_e = C_rs / sqrt(C_rr C_ss)`.
    pub fn dihedral_angles_from_cofactors(&self) -> DihedralAngles {
        let gram = self.gram_data();
        let sign = match self.geometry {
            Geometry::Euclidean => -1.0,
            _ => gram.determinant.signum(),
        };
        let mut out = [0.0; 6];
        for ed in Edge::ALL {
            let (r, s) = complement(ed);
            let (i, j) = (gram.row_of(r), gram.row_of(s));
            let c = &gram.cofactors;
            let cos = -sign * c[(i, j)] / (c[(i, i)] * c[(j, j)]).sqrt();
            out[ed.index()] = acos_clamped(cos);
        }
        DihedralAngles::from_array(out)
    }

    /// Angle at the common vertex of two edges, inside their common face.
    pub fn face_angle(&self, e1: Edge, e2: Edge) -> Result<f64> {
        let shared = Vertex::ALL.into_iter().find(|&v| e1 != e2 && e1.contains(v) && e2.contains(v));
        let v = shared.ok_or(Error::InvalidPair(e1.name(), e2.name()))?;
        let far = |ed: Edge| {
            let (p, q) = ed.endpoints();
            if p == v {
                q
            } else {
                p
            }
        };
        let opp = Edge::between(far(e1), far(e2)).ok_or(Error::InvalidPair(e1.name(), e2.name()))?;
        let e = &self.edges;
        Ok(corner_angle(self.geometry, e.get(opp), e.get(e1), e.get(e2)))
    }

    /// Solid angle at `v`: the area of its spherical link, i.e. the sum of the
    /// three incident dihedral angles minus π.
    pub fn solid_angle(&self, v: Vertex) -> f64 {
        self.solid_angle_with(&self.dihedral_angles(), v)
    }

    pub fn solid_angle_with(&self, angles: &DihedralAngles, v: Vertex) -> f64 {
        Edge::ALL.into_iter().filter(|e| e.contains(v)).map(|e| angles.get(e)).sum::<f64>() - PI
    }

    /// Area of the face with the given edges (Euclidean only, Heron's formula).
    pub fn face_area_euclidean(&self, face: &[Edge; 3]) -> f64 {
        let [p, q, r] = face.map(|e| self.edges.get(e));
        heron(p, q, r)
    }
}

/// Triangle area from its sides, in the cancellation-resistant ordering.
pub fn heron(a: f64, b: f64, c: f64) -> f64 {
    let mut v = [a, b, c];
    v.sort_by(|p, q| q.total_cmp(p));
    let [a, b, c] = v;
    let prod = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
    0.25 * prod.max(0.0).sqrt()
}
