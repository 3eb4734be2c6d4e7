#![allow(dead_code)]

use std::f64::consts::FRAC_PI_2;

use proptest::prelude::*;
use regge_core::tetra::{self, EdgeLengths, Tetrahedron};
use regge_core::Geometry;

/// Edge-length sampling window used for random tetrahedra.
pub fn edge_range(g: Geometry) -> (f64, f64) {
    match g {
        Geometry::Euclidean => (0.5, 1.5),
        Geometry::Spherical => (FRAC_PI_2 - 0.3, FRAC_PI_2 + 0.3),
        Geometry::Hyperbolic => (0.3, 1.5),
    }
}

/// Rejection-sampled valid tetrahedra.
pub fn tetrahedron(g: Geometry) -> impl Strategy<Value = Tetrahedron> {
    let (lo, hi) = edge_range(g);
    prop::array::uniform6(lo..hi)
        .prop_filter_map("not a tetrahedron", move |v| tetra::validate(g, &EdgeLengths::from_array(v)).ok())
}

pub fn any_geometry() -> impl Strategy<Value = Geometry> {
    prop_oneof![Just(Geometry::Euclidean), Just(Geometry::Spherical), Just(Geometry::Hyperbolic)]
}

pub fn any_tetrahedron() -> impl Strategy<Value = Tetrahedron> {
    any_geometry().prop_flat_map(tetrahedron)
}

/// Config without on-disk regression files.
pub fn cases(n: u32) -> ProptestConfig {
    ProptestConfig { cases: n, failure_persistence: None, ..ProptestConfig::default() }
}
