//! The Regge transform and a verifier for its invariants.
//!
//! On edges, `(x, y, a, b, c, d) ↦ (x, y, s-a, s-b, s-c, s-d)` with
//! `s = (a+b+c+d)/2`. The partner keeps the labeling: `s-a` is again the
//! `F1K` edge, and so on.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Geometry;
use crate::tetra::{self, DihedralAngles, Edge, EdgeLengths, Tetrahedron, Vertex};
use crate::volume;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReggeEdges {
    pub source: EdgeLengths,
    pub s: f64,
    pub partner: EdgeLengths,
}

pub fn regge_edges(e: &EdgeLengths) -> Result<ReggeEdges> {
    let s = 0.5 * (e.a + e.b + e.c + e.d);
    let partner = EdgeLengths::new(e.x, e.y, s - e.a, s - e.b, s - e.c, s - e.d);
    for edge in [Edge::A, Edge::B, Edge::C, Edge::D] {
        let v = partner.get(edge);
        if !(v > 0.0) {
            return Err(Error::NonpositivePartnerLength(edge.name(), v));
        }
    }
    Ok(ReggeEdges { source: *e, s, partner })
}

/// `σ = (α+β+γ+δ)/2`.
pub fn angle_semisum(d: &DihedralAngles) -> f64 {
    0.5 * (d.alpha + d.beta + d.gamma + d.delta)
}

pub fn regge_angles(d: &DihedralAngles) -> DihedralAngles {
    let sigma = angle_semisum(d);
    DihedralAngles {
        phi: d.phi,
        psi: d.psi,
        alpha: sigma - d.alpha,
        beta: sigma - d.beta,
        gamma: sigma - d.gamma,
        delta: sigma - d.delta,
    }
}

/// Logs of tangents of the half face-angles that the edges `a, b, c, d`
/// make with the `x` edge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct LogTangentQuadruple {
    pub A: f64,
    pub B: f64,
    pub C: f64,
    pub D: f64,
}

impl LogTangentQuadruple {
    pub fn as_array(&self) -> [f64; 4] {
        [self.A, self.B, self.C, self.D]
    }

    pub fn from_array(v: [f64; 4]) -> Self {
        Self { A: v[0], B: v[1], C: v[2], D: v[3] }
    }

    pub fn sum(&self) -> f64 {
        self.A + self.B + self.C + self.D
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.as_array()
            .iter()
            .zip(other.as_array())
            .map(|(p, q)| (p - q).abs())
            .fold(0.0, f64::max)
    }
}

pub fn log_tangent_quadruple(t: &Tetrahedron) -> LogTangentQuadruple {
    let lt = |e: Edge| {
        let angle = t.face_angle(e, Edge::X).expect("edge adjacent to x");
        (0.5 * angle).tan().ln()
    };
    LogTangentQuadruple::from_array([Edge::A, Edge::B, Edge::C, Edge::D].map(lt))
}

/// `Ā = (-A+B+C+D)/2` and its analogues.
pub fn predicted_log_tangents(q: &LogTangentQuadruple) -> LogTangentQuadruple {
    let half = 0.5 * q.sum();
    LogTangentQuadruple::from_array(q.as_array().map(|v| half - v))
}

/// Vertex of the partner whose solid angle equals that of `v` in the source.
pub fn paired_vertex(v: Vertex) -> Vertex {
    match v {
        Vertex::F1 => Vertex::F2,
        Vertex::F2 => Vertex::F1,
        Vertex::K => Vertex::L,
        Vertex::L => Vertex::K,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Angles, log-tangents and solid angles (absolute).
    pub angle: f64,
    /// Volume residual (relative above `1e-6`, absolute below).
    pub volume: f64,
}

impl Tolerances {
    pub fn default_for(g: Geometry) -> Self {
        match g {
            Geometry::Euclidean => Self { angle: 1e-9, volume: 1e-9 },
            _ => Self { angle: 1e-8, volume: 1e-5 },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    pub partner_exists: bool,
    pub phi: f64,
    pub psi: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub logtan: f64,
    pub solid_angles: f64,
    pub volume: f64,
    pub angle_tolerance: f64,
    pub volume_tolerance: f64,
}

impl Residuals {
    pub fn max_angle(&self) -> f64 {
        [self.phi, self.psi, self.alpha, self.beta, self.gamma, self.delta, self.logtan, self.solid_angles]
            .into_iter()
            .fold(0.0, f64::max)
    }

    pub fn passes(&self) -> bool {
        self.partner_exists && self.max_angle() < self.angle_tolerance && self.volume < self.volume_tolerance
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReggeReport {
    pub geometry: Geometry,
    pub edges: EdgeLengths,
    pub partner_edges: EdgeLengths,
    pub dihedrals: DihedralAngles,
    pub partner_dihedrals: DihedralAngles,
    pub residuals: Residuals,
    pub volume: f64,
    pub partner_volume: f64,
    /// Combined quadrature error estimate of both volumes; 0 for exact formulas.
    pub volume_error_estimate: f64,
    pub verdict: Verdict,
}

/// Residual between two volumes, relative when the volume is not tiny.
pub fn volume_residual(v: f64, v_bar: f64) -> f64 {
    let diff = (v_bar - v).abs();
    if v.abs() > 1e-6 {
        diff / v.abs()
    } else {
        diff
    }
}

/// Builds the partner and measures every invariant the transform should preserve.
pub fn verify_regge(t: &Tetrahedron, tol: Tolerances) -> Result<ReggeReport> {
    let g = t.geometry();
    let re = regge_edges(t.edges()).map_err(|e| Error::PartnerNonexistent(e.to_string()))?;
    let partner = tetra::validate(g, &re.partner).map_err(|e| Error::PartnerNonexistent(e.to_string()))?;

    let ang = t.dihedral_angles();
    let ang_bar = partner.dihedral_angles();
    let predicted = regge_angles(&ang);
    let diff = |e: Edge| (ang_bar.get(e) - predicted.get(e)).abs();

    let logtan = log_tangent_quadruple(&partner).max_abs_diff(&predicted_log_tangents(&log_tangent_quadruple(t)));
    let solid_angles = Vertex::ALL
        .into_iter()
        .map(|v| (t.solid_angle_with(&ang, v) - partner.solid_angle_with(&ang_bar, paired_vertex(v))).abs())
        .fold(0.0, f64::max);

    let vol = volume::volume(t)?;
    let vol_bar = volume::volume(&partner)?;

    let residuals = Residuals {
        partner_exists: true,
        phi: diff(Edge::X),
        psi: diff(Edge::Y),
        alpha: diff(Edge::A),
        beta: diff(Edge::B),
        gamma: diff(Edge::C),
        delta: diff(Edge::D),
        logtan,
        solid_angles,
        volume: volume_residual(vol.value, vol_bar.value),
        angle_tolerance: tol.angle,
        volume_tolerance: tol.volume,
    };
    Ok(ReggeReport {
        geometry: g,
        edges: *t.edges(),
        partner_edges: re.partner,
        dihedrals: ang,
        partner_dihedrals: ang_bar,
        residuals,
        volume: vol.value,
        partner_volume: vol_bar.value,
        volume_error_estimate: vol.error_estimate + vol_bar.error_estimate,
        verdict: if residuals.passes() { Verdict::Pass } else { Verdict::Fail },
    })
}
