mod common;

use common::{any_geometry, any_tetrahedron, cases, tetrahedron};
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;
use regge_core::confocal::{self, Coords, ConfocalFamily};
use regge_core::regge;
use regge_core::tetra::Vertex;
use regge_core::{Geometry, Point4};

/// Random family in dimension `n` with well-separated axes.
fn family(g: Geometry, n: usize) -> impl Strategy<Value = ConfocalFamily> {
    prop::collection::vec(0.2f64..1.5, n + 1).prop_map(move |gaps| {
        // decreasing A_1 > … > A_n > 0
        let mut axes: Vec<f64> = Vec::new();
        let mut a = 0.1 + gaps[n];
        for gap in gaps.iter().take(n) {
            axes.push(a);
            a += gap;
        }
        axes.reverse();
        match g {
            Geometry::Euclidean => {}
            Geometry::Spherical => axes.push(0.3 + gaps[0]),
            Geometry::Hyperbolic => axes.push(axes[0] + 0.2 + gaps[0]),
        }
        ConfocalFamily::new(g, &axes).unwrap()
    })
}

/// A parameter well inside band `k`, at relative position `w`.
fn in_band(f: &ConfocalFamily, k: usize, w: f64) -> f64 {
    let (lo, hi) = f.band(k);
    let lo = if lo.is_finite() { lo } else { hi - 3.0 };
    lo + (0.02 + 0.96 * w) * (hi - lo)
}

fn random_box(f: ConfocalFamily, w: &[f64]) -> confocal::Box {
    let n = f.dimension;
    let mut lambdas = Vec::new();
    for k in 0..n {
        let (p, q) = (w[2 * k], w[2 * k + 1]);
        let q = if (p - q).abs() < 0.05 { (p + 0.5) % 1.0 } else { q };
        lambdas.push(in_band(&f, k, p));
        lambdas.push(in_band(&f, k, q));
    }
    confocal::Box::new(f, &lambdas, None).unwrap()
}

fn box_strategy(n: usize) -> impl Strategy<Value = confocal::Box> {
    any_geometry()
        .prop_flat_map(move |g| (family(g, n), prop::collection::vec(0.0f64..1.0, 2 * n)))
        .prop_map(|(f, w)| random_box(f, &w))
}

/// Point with the given elliptic coordinates by solving the equations of
/// the quadrics, which are linear in the squared coordinates.
fn solve_corner(f: &ConfocalFamily, lambdas: &[f64]) -> Coords {
    let b = f.poles();
    let e = f.signs();
    let m = b.len();
    let mut a = DMatrix::zeros(m, m);
    let mut rhs = DVector::zeros(m);
    for (row, l) in lambdas.iter().enumerate() {
        for i in 0..m {
            a[(row, i)] = e[i] / (b[i] - l);
        }
        if f.geometry == Geometry::Euclidean {
            rhs[row] = 1.0;
        }
    }
    if f.geometry != Geometry::Euclidean {
        let last = m - 1;
        for i in 0..m {
            a[(last, i)] = e[i];
        }
        rhs[last] = if f.geometry == Geometry::Spherical { 1.0 } else { -1.0 };
    }
    let sq = a.lu().solve(&rhs).unwrap();
    Coords::from_iterator(m, sq.iter().map(|v| v.sqrt()))
}

fn to_model(f: &ConfocalFamily, p: &Coords) -> Point4 {
    f.to_model(p)
}

proptest! {
    #![proptest_config(cases(200))]

    #[test]
    fn great_diagonals_are_equal(b in box_strategy(2)) {
        let r = confocal::ivory_check(&b).unwrap();
        prop_assert!(r.max_difference < 1e-9, "{:?}", r.diagonals);
    }

    #[test]
    fn great_diagonals_are_equal_in_space(b in box_strategy(3)) {
        let r = confocal::ivory_check(&b).unwrap();
        prop_assert!(r.max_difference < 1e-9, "{:?}", r.diagonals);
    }

    #[test]
    fn corners_solve_the_quadric_equations(b in prop_oneof![box_strategy(2), box_strategy(3)]) {
        let corners = confocal::box_vertices(&b).unwrap();
        for (mask, c) in corners.iter().enumerate() {
            let params = b.corner_parameters(mask);
            let want = solve_corner(&b.family, &params);
            prop_assert!((c - &want).amax() < 1e-10);
            prop_assert!(b.family.model_residual(c) < 1e-12);
            for l in &params {
                prop_assert!(confocal::quadric_point_residual(&b.family, *l, c).unwrap().abs() < 1e-10);
            }
            let back = confocal::elliptic_coordinates(&b.family, c).unwrap();
            for (p, q) in back.lambdas.iter().zip(&params) {
                prop_assert!((p - q).abs() < 1e-9 * q.abs().max(1.0));
            }
        }
    }

    #[test]
    fn diagonal_maps_move_corners_between_layers(b in prop_oneof![box_strategy(2), box_strategy(3)]) {
        let corners = confocal::box_vertices(&b).unwrap();
        for k in 0..b.family.dimension {
            let d = confocal::ivory_affine_map(&b.family, b.lambdas[2 * k + 1], b.lambdas[2 * k]).unwrap();
            for mask in (0..b.num_corners()).filter(|m| m & (1 << k) != 0) {
                let image = confocal::apply_diagonal(&d, &corners[mask]);
                prop_assert!((image - &corners[mask ^ (1 << k)]).amax() < 1e-10);
            }
        }
    }

    #[test]
    fn quadrics_of_different_type_are_orthogonal(b in box_strategy(2)) {
        let f = &b.family;
        let (poles, eps) = (f.poles(), f.signs());
        for (mask, c) in confocal::box_vertices(&b).unwrap().iter().enumerate() {
            let [l, m] = [b.corner_parameters(mask)[0], b.corner_parameters(mask)[1]];
            // gradients of the defining functions, compared in the ambient form
            let grad = |lam: f64| (0..c.len()).map(|i| 2.0 * eps[i] * c[i] / (poles[i] - lam)).collect::<Vec<_>>();
            let (g1, g2) = (grad(l), grad(m));
            let form = |u: &[f64], v: &[f64]| (0..u.len()).map(|i| eps[i] * u[i] * v[i]).sum::<f64>();
            let cos = form(&g1, &g2) / (form(&g1, &g1) * form(&g2, &g2)).sqrt();
            prop_assert!(cos.abs() < 1e-8);
            prop_assert!(confocal::intersection_cosine(f, l, m, c).unwrap().abs() < 1e-8);
        }
    }

    #[test]
    fn tangent_invariants_are_constant_on_conics(f in any_geometry().prop_flat_map(|g| family(g, 2)), w in 0.0f64..1.0) {
        let g = f.geometry;
        let (f1, f2) = confocal::foci(&f).unwrap();
        let (m1, m2) = (to_model(&f, &f1), to_model(&f, &f2));
        let signs = vec![1.0; f.coordinates()];
        let fixed = [in_band(&f, 0, w), in_band(&f, 1, w)];
        let along = |k: usize| -> Vec<(f64, f64)> {
            (0..100)
                .map(|i| {
                    let mut params = fixed;
                    params[1 - k] = in_band(&f, 1 - k, i as f64 / 99.0);
                    let p = confocal::point_from_elliptic(&f, &params, &signs).unwrap();
                    confocal::tangent_invariants(g, &m1, &m2, &to_model(&f, &p)).unwrap()
                })
                .collect()
        };
        let spread = |v: Vec<f64>| v.iter().cloned().fold(f64::MIN, f64::max) - v.iter().cloned().fold(f64::MAX, f64::min);
        // ellipse: product of half-angle tangents, hyperbola: their ratio
        prop_assert!(spread(along(0).into_iter().map(|p| p.0).collect()) < 1e-10);
        prop_assert!(spread(along(1).into_iter().map(|p| p.1).collect()) < 1e-10);
    }
}

/// Angle at `p` between geodesics to `q` and `r`.
fn angle_at(g: Geometry, p: &Point4, q: &Point4, r: &Point4) -> f64 {
    let (u, v) = (g.tangent_towards(p, q), g.tangent_towards(p, r));
    let dot = g.inner(&u, &v);
    let cross = (g.inner(&u, &u) * g.inner(&v, &v) - dot * dot).max(0.0).sqrt();
    cross.atan2(dot)
}

proptest! {
    #![proptest_config(cases(200))]

    #[test]
    fn foci_see_conic_points_with_constant_tangent_product(f in any_geometry().prop_flat_map(|g| family(g, 2)), w in 0.0f64..1.0) {
        let g = f.geometry;
        let (f1, f2) = confocal::foci(&f).unwrap();
        let (m1, m2) = (to_model(&f, &f1), to_model(&f, &f2));
        let lam = in_band(&f, 0, w);
        let products: Vec<f64> = (0..20)
            .map(|i| {
                let p = confocal::point_from_elliptic(&f, &[lam, in_band(&f, 1, i as f64 / 19.0)], &vec![1.0; f.coordinates()]).unwrap();
                let p = to_model(&f, &p);
                (0.5 * angle_at(g, &m1, &m2, &p)).tan() * (0.5 * angle_at(g, &m2, &m1, &p)).tan()
            })
            .collect();
        for p in &products {
            prop_assert!((p - products[0]).abs() < 1e-9);
        }
    }

    #[test]
    fn partner_vertices_span_the_edge_y(t in any_tetrahedron()) {
        let g = t.geometry();
        let e = t.edges();
        let pts = confocal::regge_partner_points(&t).unwrap();
        prop_assert!((pts.distance - e.y).abs() < 1e-9);
        let s = regge::regge_edges(e).unwrap().s;
        let (f1, f2) = (t.vertex(Vertex::F1), t.vertex(Vertex::F2));
        let checks = [
            (g.distance(f1, &pts.l_bar), s - e.c),
            (g.distance(f2, &pts.l_bar), s - e.d),
            (g.distance(f1, &pts.k_bar), s - e.b),
            (g.distance(f2, &pts.k_bar), s - e.a),
        ];
        for (got, want) in checks {
            prop_assert!((got - want).abs() < 1e-10, "{got} vs {want}");
        }
        let rbox = pts.rotational_box;
        prop_assert!(rbox.diagonal_spread().unwrap() < 1e-9);
        prop_assert!((rbox.vertex(0).unwrap() - t.vertex(Vertex::K)).amax() < 1e-10);
        prop_assert!((rbox.vertex(7).unwrap() - t.vertex(Vertex::L)).amax() < 1e-10);
    }

    #[test]
    fn transverse_heights_balance(t in tetrahedron(Geometry::Euclidean)) {
        let h = confocal::euclidean_height_identity(&t).unwrap();
        prop_assert!(h.residual() < 1e-10);
        let pts = confocal::regge_partner_points(&t).unwrap();
        let height = |p: &Point4| p[2].hypot(p[3]);
        let lhs = height(t.vertex(Vertex::K)) * height(t.vertex(Vertex::L));
        let rhs = height(&pts.k_bar) * height(&pts.l_bar);
        prop_assert!((lhs - rhs).abs() < 1e-10);
    }
}
