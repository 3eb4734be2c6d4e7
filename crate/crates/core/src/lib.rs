//! Tetrahedra in Euclidean, spherical and hyperbolic 3-space, the Regge
//! transform on their edge lengths, confocal quadrics with Ivory's lemma,
//! and volumes via Cayley–Menger determinants or the Schläfli differential.

pub mod confocal;
pub mod error;
pub mod geometry;
pub mod parse;
pub mod quadrature;
pub mod regge;
pub mod tetra;
pub mod trig;
pub mod volume;

pub use error::{Error, Result};
pub use geometry::{Geometry, Point4};
