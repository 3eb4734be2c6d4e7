use thiserror::Error;

/// Errors raised by the geometry kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate triangle: {0}")]
    DegenerateTriangle(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("nonexistent tetrahedron: {0}")]
    NonexistentTetrahedron(String),

    #[error("degenerate tetrahedron: {0}")]
    DegenerateTetrahedron(String),

    #[error("edges {0} and {1} do not share a vertex")]
    InvalidPair(&'static str, &'static str),

    #[error("Regge partner length s-{0} = {1} is not positive")]
    NonpositivePartnerLength(&'static str, f64),

    #[error("Regge partner failed validation: {0}")]
    PartnerNonexistent(String),

    #[error("quadric parameter {0} hits a pole of the family")]
    PoleParameter(f64),

    #[error("point lies on the degeneracy set of the elliptic coordinates")]
    DegeneratePoint,

    #[error("empty box: {0}")]
    EmptyBox(String),

    #[error("parameters {0} and {1} lie in different bands")]
    BandMismatch(f64, f64),

    #[error("point is collinear with the foci")]
    DegenerateConfiguration,

    #[error("construction failure: {0}")]
    ConstructionFailure(String),

    #[error("no valid range for the deformation parameter: {0}")]
    NoValidRange(String),

    #[error("quadrature did not reach tolerance {tolerance:e} (estimate {estimate:e})")]
    QuadratureFailure { tolerance: f64, estimate: f64 },

    #[error("tetrahedron is too close to flattening for finite differences")]
    NearDegenerate,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
