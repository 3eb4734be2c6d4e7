mod common;

use std::f64::consts::PI;

use common::{any_tetrahedron, tetrahedron};
use nalgebra::Vector3;
use proptest::prelude::*;
use regge_core::tetra::{self, Edge, EdgeLengths, Vertex};
use regge_core::{trig, Geometry};

/// Interior dihedral angle along `p q` between the faces through `r` and `s`,
/// from plain vector algebra.
fn euclidean_dihedral(p: Vector3<f64>, q: Vector3<f64>, r: Vector3<f64>, s: Vector3<f64>) -> f64 {
    let axis = (q - p).normalize();
    let perp = |v: Vector3<f64>| {
        let w = v - p;
        w - axis * w.dot(&axis)
    };
    let (u, v) = (perp(r), perp(s));
    (u.dot(&v) / (u.norm() * v.norm())).clamp(-1.0, 1.0).acos()
}

/// Dihedral angles at least 0.3 away from 0 and π, faces far from flat.
fn well_shaped(t: &tetra::Tetrahedron) -> bool {
    let e = t.edges();
    let faces_ok = tetra::FACES.iter().all(|f| {
        let [p, q, r] = f.map(|ed| e.get(ed));
        trig::triangle_margin(t.geometry(), p, q, r) > 0.1
    });
    faces_ok && t.dihedral_angles().as_array().iter().all(|a| *a > 0.3 && *a < PI - 0.3)
}

proptest! {
    #![proptest_config(common::cases(200))]

    #[test]
    fn embedding_reproduces_edges(t in any_tetrahedron()) {
        let g = t.geometry();
        for e in Edge::ALL {
            let (u, v) = e.endpoints();
            let d = g.distance(t.vertex(u), t.vertex(v));
            let want = t.edges().get(e);
            prop_assert!((d - want).abs() <= 1e-12 * want, "{e}: {d} vs {want}");
        }
    }

    #[test]
    fn vertices_lie_on_the_model(t in any_tetrahedron()) {
        let g = t.geometry();
        for v in Vertex::ALL {
            let p = t.vertex(v);
            prop_assert!(g.model_residual(p) < 1e-12);
            if g == Geometry::Hyperbolic {
                prop_assert!(p[0] > 0.0);
            }
        }
    }

    #[test]
    fn angles_are_interior(t in any_tetrahedron()) {
        for a in t.dihedral_angles().as_array() {
            prop_assert!(a > 0.0 && a < PI);
        }
    }

    #[test]
    fn swapping_f1_f2_and_k_l_relabels_angles(t in any_tetrahedron()) {
        let e = t.edges();
        let swapped = EdgeLengths::new(e.x, e.y, e.b, e.a, e.d, e.c);
        let s = tetra::validate(t.geometry(), &swapped).unwrap();
        let (d, ds) = (t.dihedral_angles(), s.dihedral_angles());
        let pairs = [(Edge::X, Edge::X), (Edge::Y, Edge::Y), (Edge::A, Edge::B), (Edge::B, Edge::A), (Edge::C, Edge::D), (Edge::D, Edge::C)];
        for (p, q) in pairs {
            prop_assert!((d.get(p) - ds.get(q)).abs() < 1e-10, "{p} vs {q}");
        }
    }

    #[test]
    fn angle_routes_agree(t in any_tetrahedron()) {
        let g = t.geometry();
        let d = t.dihedral_angles();
        prop_assert!(d.max_abs_diff(&t.dihedral_angles_from_cofactors()) < 1e-10);
        prop_assert!(d.max_abs_diff(&tetra::dihedral_angles_from_links(g, t.edges())) < 1e-9);
        prop_assert!(d.max_abs_diff(&t.embedding().dihedral_angles(g)) < 1e-9);
    }

    #[test]
    fn euclidean_angles_match_vector_algebra(t in tetrahedron(Geometry::Euclidean)) {
        let p = |v: Vertex| { let q = t.vertex(v); Vector3::new(q[1], q[2], q[3]) };
        let d = t.dihedral_angles();
        for e in Edge::ALL {
            let (u, v) = e.endpoints();
            let (r, s) = e.opposite().endpoints();
            let want = euclidean_dihedral(p(u), p(v), p(r), p(s));
            prop_assert!((d.get(e) - want).abs() < 1e-10, "{e}");
        }
    }

    #[test]
    fn angles_vary_continuously(t in any_tetrahedron().prop_filter("near flat", well_shaped), dir in prop::array::uniform6(-1.0f64..1.0)) {
        let g = t.geometry();
        let base = t.edges().as_array();
        let step = 1e-4;
        let norm = dir.iter().map(|d| d * d).sum::<f64>().sqrt();
        let mut prev = t.dihedral_angles();
        for k in 1..=100 {
            let mut v = base;
            for i in 0..6 {
                v[i] += step * k as f64 * dir[i];
            }
            let Ok(next) = tetra::validate(g, &EdgeLengths::from_array(v)) else { break };
            if !well_shaped(&next) {
                break;
            }
            let cur = next.dihedral_angles();
            prop_assert!(cur.max_abs_diff(&prev) < 10.0 * step * norm);
            prev = cur;
        }
    }
}

#[test]
fn rejects_broken_faces_in_every_geometry() {
    for g in Geometry::ALL {
        let e = EdgeLengths::new(0.5, 0.5, 0.5, 1.2, 0.5, 0.5);
        assert!(matches!(tetra::validate(g, &e), Err(regge_core::Error::NonexistentTetrahedron(_))), "{g}");
    }
}
