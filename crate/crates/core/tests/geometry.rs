use proptest::prelude::*;

use simplex_mirror::linalg::complement_basis;
use simplex_mirror::hull::{hull_projection_ratio, hull_ratio, hull_volume, mirrored_point_set};
use simplex_mirror::optimizer::random_directions;
use simplex_mirror::{build_simplex, f_value, ratio_formula, support_from_direction, upper_facets, Vector};

fn reflect_normal(v: &Vector, u: &Vector) -> Vector {
    v.axpy(-2.0 * v.dot(u), u)
}

/// Facets of `conv(S, S^H)`: the upper facets of `S`, their mirror images, and
/// one facet orthogonal to `H` over each facet of the shadow of `S` on `H`.
#[test]
fn mirrored_hull_facets() {
    for n in 2..=5 {
        let s = build_simplex(n).unwrap();
        for u in random_directions(n, 40, 100 + n as u64) {
            let h = support_from_direction(&s, &u).unwrap();
            if h.touching().len() != 1 {
                continue;
            }
            let p = hull_volume(&mirrored_point_set(&s, &h).unwrap(), n).unwrap();
            let upper = upper_facets(&s, &h).unwrap();
            let has = |normal: &Vector| p.facets.iter().any(|f| f.normal.distance(normal) < 1e-7);
            for nj in &upper.normals {
                assert!(has(nj), "upper facet missing");
                assert!(has(&reflect_normal(nj, &u)), "mirrored facet missing");
            }
            let basis = complement_basis(&u);
            let shadow: Vec<Vector> = s
                .vertices()
                .iter()
                .map(|v| Vector::new(basis.iter().map(|b| b.dot(v)).collect()))
                .collect();
            let side = hull_volume(&shadow, n - 1).unwrap().facets.len();
            let vertical = p.facets.iter().filter(|f| f.normal.dot(&u).abs() < 1e-9).count();
            assert_eq!(p.facets.len(), 2 * upper.len() + vertical, "n={n}");
            // for n = 2 the column over the touching vertex may have zero width
            if n >= 3 {
                assert_eq!(vertical, side);
            } else {
                assert!(vertical == side || vertical + 1 == side);
            }
        }
    }
}

#[test]
fn formula_matches_oracle_on_seeded_directions() {
    for n in 2..=6 {
        let s = build_simplex(n).unwrap();
        for u in random_directions(n, 50, 7 * n as u64) {
            let h = support_from_direction(&s, &u).unwrap();
            let oracle = hull_ratio(&s, &h).unwrap();
            assert!((ratio_formula(&s, &h).unwrap().ratio - oracle).abs() < 1e-8);
            assert!((oracle - 2.0 * hull_projection_ratio(&s, &h).unwrap()).abs() < 1e-8);
        }
    }
}

#[test]
fn small_rotation_in_the_plane() {
    // n = 2, starting at the r = 0 normal and tilting slightly
    let s = build_simplex(2).unwrap();
    let u0 = s.r_family_normal(0).unwrap();
    let perp = Vector::from([-u0[1], u0[0]]);
    for theta in [1e-4f64, 1e-2, 0.1, 0.3] {
        let u = (&(u0.clone() * theta.cos()) + &(perp.clone() * theta.sin())).normalized().unwrap();
        let h = support_from_direction(&s, &u).unwrap();
        let f = ratio_formula(&s, &h).unwrap().ratio;
        assert!((f - hull_ratio(&s, &h).unwrap()).abs() < 1e-8);
        assert!(f <= 4.0 + 1e-9);
    }
}

fn direction(n: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec(-1.0f64..1.0, n)
        .prop_filter("nonzero", |v| v.iter().map(|x| x * x).sum::<f64>() > 1e-6)
        .prop_map(|v| Vector::new(v).normalized().unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn upper_facet_bounds(n in 2usize..=8, seed in any::<u64>()) {
        let s = build_simplex(n).unwrap();
        let u = random_directions(n, 1, seed).pop().unwrap();
        let h = support_from_direction(&s, &u).unwrap();
        let rep = ratio_formula(&s, &h).unwrap();
        if h.touching().len() == 1 {
            prop_assert!(rep.k >= 1 && rep.k <= n);
            prop_assert!(rep.ratio >= 2.0 - 1e-9);
            let nf = n as f64;
            let cap = (nf / (2.0 * (nf + 1.0))).sqrt() * rep.x + 1e-9;
            for d in &rep.s_dots {
                prop_assert!(*d <= cap);
            }
            if rep.k >= 2 {
                prop_assert!(rep.x >= 1.0 / nf - 1e-9 && rep.x <= 1.0 + 1e-9);
                let f = f_value(n, rep.k, rep.x, &rep.s_dots).unwrap();
                prop_assert!((2.0 * nf * f - rep.ratio).abs() < 1e-10);
            }
        }
        let total: f64 = rep.contributions.iter().map(|(_, t)| t).sum();
        prop_assert!((2.0 * n as f64 * total - rep.ratio).abs() < 1e-12);
        prop_assert!(rep.contributions.iter().all(|(_, t)| *t >= -1e-9));
    }

    #[test]
    fn oracle_agrees_for_arbitrary_directions(u in (2usize..=5).prop_flat_map(direction)) {
        let s = build_simplex(u.dim()).unwrap();
        let h = support_from_direction(&s, &u).unwrap();
        let oracle = hull_ratio(&s, &h).unwrap();
        prop_assert!((ratio_formula(&s, &h).unwrap().ratio - oracle).abs() < 1e-8);
    }
}
