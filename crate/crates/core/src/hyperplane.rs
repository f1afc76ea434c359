//! Supporting hyperplanes of the simplex, reflection and projection across
//! them, and upper-facet classification.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::simplex::RegularSimplex;
use crate::tol;
use crate::vector::Vector;

/// Hyperplane `{p : <u, p> = offset}` with unit inner normal `u`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SupportHyperplane {
    u: Vector,
    offset: f64,
    touching: Vec<usize>,
}

impl SupportHyperplane {
    /// Unchecked constructor. Use [`support_from_direction`] to obtain a
    /// hyperplane that is known to support a simplex.
    pub fn new(u: Vector, offset: f64, touching: Vec<usize>) -> Self {
        Self {
            u,
            offset,
            touching,
        }
    }

    pub fn u(&self) -> &Vector {
        &self.u
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// Vertex indices lying on the hyperplane, ascending.
    pub fn touching(&self) -> &[usize] {
        &self.touching
    }

    /// Signed height of `p` above the hyperplane.
    pub fn height(&self, p: &Vector) -> f64 {
        self.u.dot(p) - self.offset
    }

    /// Check that the simplex lies in the closed upper half-space and touches it.
    pub fn check_supports(&self, s: &RegularSimplex) -> Result<()> {
        self.u.ensure_dim(s.n())?;
        for (i, v) in s.vertices().iter().enumerate() {
            let h = self.height(v);
            if h < -tol::GEOM {
                return Err(Error::NotSupporting {
                    vertex: i,
                    depth: -h,
                });
            }
        }
        if self.touching.is_empty() {
            return Err(Error::EmptyTouching);
        }
        for &i in &self.touching {
            let v = s.vertices().get(i).ok_or(Error::IndexOutOfRange {
                index: i,
                max: s.n(),
            })?;
            let h = self.height(v);
            if h.abs() > tol::GEOM {
                return Err(Error::Inconsistent(format!(
                    "vertex {i} listed as touching but lies {h:e} above the hyperplane"
                )));
            }
        }
        Ok(())
    }
}

/// Supporting hyperplane of `s` with inner normal along `u` (normalized here).
pub fn support_from_direction(s: &RegularSimplex, u: &Vector) -> Result<SupportHyperplane> {
    u.ensure_dim(s.n())?;
    let u = u.normalized().ok_or(Error::ZeroDirection)?;
    let heights: Vec<f64> = s.vertices().iter().map(|v| u.dot(v)).collect();
    let offset = heights.iter().copied().fold(f64::INFINITY, f64::min);
    let touching = heights
        .iter()
        .enumerate()
        .filter(|(_, h)| **h <= offset + tol::GEOM)
        .map(|(i, _)| i)
        .collect();
    Ok(SupportHyperplane {
        u,
        offset,
        touching,
    })
}

/// Mirror images `p - 2(<u,p> - offset) u`.
pub fn reflect(points: &[Vector], h: &SupportHyperplane) -> Result<Vec<Vector>> {
    map_points(points, h, 2.0)
}

/// Orthogonal projections `p - (<u,p> - offset) u` onto the hyperplane.
pub fn project(points: &[Vector], h: &SupportHyperplane) -> Result<Vec<Vector>> {
    map_points(points, h, 1.0)
}

fn map_points(points: &[Vector], h: &SupportHyperplane, factor: f64) -> Result<Vec<Vector>> {
    let dim = h.u.dim();
    points
        .iter()
        .map(|p| {
            p.ensure_dim(dim)?;
            Ok(p.axpy(-factor * h.height(p), &h.u))
        })
        .collect()
}

/// Facets of the simplex seen first by rays coming down from the far side of
/// the upper half-space: those whose outward normal has positive dot product
/// with the inner normal `u`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UpperFacetSet {
    /// Index of the vertex opposite each upper facet.
    pub indices: Vec<usize>,
    pub normals: Vec<Vector>,
    /// `<outward normal, u>` for each upper facet.
    pub cosines: Vec<f64>,
}

impl UpperFacetSet {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, j: usize) -> bool {
        self.indices.contains(&j)
    }
}

pub fn upper_facets(s: &RegularSimplex, h: &SupportHyperplane) -> Result<UpperFacetSet> {
    h.check_supports(s)?;
    let n = s.n();
    let mut out = UpperFacetSet {
        indices: Vec::new(),
        normals: Vec::new(),
        cosines: Vec::new(),
    };
    for (j, nj) in s.facet_normals().iter().enumerate() {
        let cos = nj.dot(h.u());
        if cos <= tol::GEOM {
            continue;
        }
        // vertex criterion: <s - (n+1) s_j, u> >= 0 for every upper facet
        let crit = s.s().dot(h.u()) - (n + 1) as f64 * s.vertex(j).dot(h.u());
        if crit < -tol::GEOM {
            return Err(Error::Inconsistent(format!(
                "upper facet {j} violates the vertex criterion ({crit:e})"
            )));
        }
        out.indices.push(j);
        out.normals.push(nj.clone());
        out.cosines.push(cos);
    }
    if out.is_empty() {
        return Err(Error::Inconsistent("no upper facet".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex::{build_simplex, closed_form};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const T: f64 = tol::IDENTITY;

    fn random_points(rng: &mut ChaCha8Rng, dim: usize, count: usize) -> Vec<Vector> {
        (0..count)
            .map(|_| Vector::new((0..dim).map(|_| rng.gen_range(-2.0..2.0)).collect()))
            .collect()
    }

    #[test]
    fn apex_direction_touches_vertex_zero() {
        for n in 2..=8 {
            let s = build_simplex(n).unwrap();
            let h = support_from_direction(&s, s.facet_normal(0).unwrap()).unwrap();
            assert_eq!(h.touching(), &[0]);
            assert!(h.offset().abs() < T);
        }
    }

    #[test]
    fn r_family_touches_edge() {
        let s = build_simplex(5).unwrap();
        let h = support_from_direction(&s, &s.r_family_normal(1).unwrap()).unwrap();
        assert_eq!(h.touching(), &[0, 1]);
    }

    #[test]
    fn opposite_direction_touches_far_facet() {
        let s = build_simplex(3).unwrap();
        let h = support_from_direction(&s, &-s.facet_normal(0).unwrap()).unwrap();
        assert_eq!(h.touching(), &[1, 2, 3]);
        assert!((h.offset() + closed_form::height(3)).abs() < T);
    }

    #[test]
    fn zero_direction_rejected() {
        let s = build_simplex(3).unwrap();
        assert_eq!(
            support_from_direction(&s, &Vector::zeros(3)),
            Err(Error::ZeroDirection)
        );
        assert!(matches!(
            support_from_direction(&s, &Vector::zeros(2)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn reflection_and_projection_basics() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let s = build_simplex(4).unwrap();
        for _ in 0..20 {
            let u = Vector::new((0..4).map(|_| rng.gen_range(-1.0..1.0)).collect());
            let h = support_from_direction(&s, &u).unwrap();
            let pts = random_points(&mut rng, 4, 8);
            let r = reflect(&pts, &h).unwrap();
            let rr = reflect(&r, &h).unwrap();
            let p = project(&pts, &h).unwrap();
            for i in 0..pts.len() {
                assert!(rr[i].distance(&pts[i]) < T);
                assert!(h.height(&p[i]).abs() < T);
                let mid = (&pts[i] + &r[i]) * 0.5;
                assert!(mid.distance(&p[i]) < T);
                for j in 0..pts.len() {
                    let d0 = pts[i].distance(&pts[j]);
                    let d1 = r[i].distance(&r[j]);
                    assert!((d0 - d1).abs() < T);
                }
            }
            // points on H are fixed
            let on = project(&pts, &h).unwrap();
            let fixed = reflect(&on, &h).unwrap();
            for (a, b) in on.iter().zip(&fixed) {
                assert!(a.distance(b) < T);
            }
        }
    }

    #[test]
    fn reflect_rejects_dimension_mismatch() {
        let s = build_simplex(3).unwrap();
        let h = support_from_direction(&s, s.facet_normal(0).unwrap()).unwrap();
        assert!(reflect(&[Vector::zeros(2)], &h).is_err());
    }

    #[test]
    fn single_upper_facet_at_apex_direction() {
        for n in 2..=8 {
            let s = build_simplex(n).unwrap();
            let h = support_from_direction(&s, s.facet_normal(0).unwrap()).unwrap();
            let up = upper_facets(&s, &h).unwrap();
            assert_eq!(up.indices, vec![0]);
        }
    }

    #[test]
    fn small_perturbation_keeps_one_upper_facet() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 2..=8 {
            let s = build_simplex(n).unwrap();
            let u0 = s.facet_normal(0).unwrap();
            for _ in 0..50 {
                let delta: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
                let delta = Vector::new(delta).normalized().unwrap() * rng.gen_range(0.0..0.01);
                let h = support_from_direction(&s, &(u0 + &delta)).unwrap();
                assert_eq!(upper_facets(&s, &h).unwrap().indices, vec![0]);
            }
        }
    }

    #[test]
    fn non_supporting_hyperplane_rejected() {
        let s = build_simplex(3).unwrap();
        let u0 = s.facet_normal(0).unwrap().clone();
        let h = SupportHyperplane::new(u0, 0.3, vec![0]);
        assert!(matches!(
            upper_facets(&s, &h),
            Err(Error::NotSupporting { .. })
        ));
        let h = SupportHyperplane::new(s.facet_normal(0).unwrap().clone(), 0.0, vec![]);
        assert_eq!(upper_facets(&s, &h), Err(Error::EmptyTouching));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]

        #[test]
        fn upper_facet_properties(n in 2usize..=8, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let s = build_simplex(n).unwrap();
            let u = Vector::new((0..n).map(|_| rng.gen_range(-1.0..1.0)).collect());
            prop_assume!(u.norm() > 1e-3);
            let h = support_from_direction(&s, &u).unwrap();
            let up = upper_facets(&s, &h).unwrap();
            prop_assert!(!up.is_empty());
            for (j, nj) in s.facet_normals().iter().enumerate() {
                prop_assert_eq!(up.contains(j), nj.dot(h.u()) > tol::GEOM);
            }
            if h.touching().len() == 1 {
                let t = h.touching()[0];
                prop_assert!(up.len() <= n);
                // facet opposite the touching vertex always faces up
                prop_assert!(up.contains(t));
                let apex = s.facet_normal(t).unwrap();
                let x = apex.dot(h.u());
                prop_assert!(x >= 1.0 / n as f64 - tol::GEOM && x <= 1.0 + tol::GEOM);
                let bound = closed_form::centroid_norm(n) * x;
                for &j in &up.indices {
                    if j != t {
                        let d = (s.vertex(j) - s.vertex(t)).dot(h.u());
                        prop_assert!(d <= bound + tol::GEOM);
                    }
                }
            }
        }

        #[test]
        fn reflection_commutes_with_isometries_fixing_h(seed in any::<u64>()) {
            // a reflection in a hyperplane orthogonal to H fixes H setwise
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let s = build_simplex(4).unwrap();
            let u = Vector::new((0..4).map(|_| rng.gen_range(-1.0..1.0)).collect());
            prop_assume!(u.norm() > 1e-3);
            let h = support_from_direction(&s, &u).unwrap();
            let w = Vector::new((0..4).map(|_| rng.gen_range(-1.0..1.0)).collect());
            let w = w.axpy(-w.dot(h.u()), h.u());
            prop_assume!(w.norm() > 1e-3);
            let w = w.normalized().unwrap();
            let anchor = h.u() * h.offset();
            let g = |p: &Vector| {
                let rel = p - &anchor;
                &rel.axpy(-2.0 * rel.dot(&w), &w) + &anchor
            };
            let pts = random_points(&mut rng, 4, 5);
            let a: Vec<Vector> = reflect(&pts, &h).unwrap().iter().map(g).collect();
            let b = reflect(&pts.iter().map(g).collect::<Vec<_>>(), &h).unwrap();
            let c: Vec<Vector> = project(&pts, &h).unwrap().iter().map(g).collect();
            let d = project(&pts.iter().map(g).collect::<Vec<_>>(), &h).unwrap();
            for i in 0..pts.len() {
                prop_assert!(a[i].distance(&b[i]) < 1e-12);
                prop_assert!(c[i].distance(&d[i]) < 1e-12);
            }
        }
    }
}
