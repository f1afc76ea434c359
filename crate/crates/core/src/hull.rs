//! Exact convex-hull volume of small point sets by exhaustive facet
//! enumeration, plus a Monte Carlo cross-check.
//!
//! Every affinely independent `dim`-subset of the points spans a candidate
//! hyperplane; it is a facet plane when all points lie weakly on one side.
//! Coplanar candidates collapse into one facet whose `(dim-1)`-measure is
//! computed recursively in the facet's own coordinates. The volume is the
//! sum of the cones from an interior point over all facets.

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hyperplane::{project, reflect, SupportHyperplane};
use crate::linalg::{affine_rank, cofactor_normal, complement_basis, simplex_measure};
use crate::simplex::RegularSimplex;
use crate::tol;
use crate::vector::Vector;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Facet {
    /// Outward unit normal.
    pub normal: Vector,
    /// Every hull point `p` satisfies `<normal, p> <= offset`.
    pub offset: f64,
    /// Indices into [`Polytope::points`] lying on the facet.
    pub members: Vec<usize>,
    /// `(dim-1)`-dimensional measure.
    pub measure: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Polytope {
    pub dim: usize,
    /// Input points with near-duplicates removed.
    pub points: Vec<Vector>,
    pub facets: Vec<Facet>,
    pub volume: f64,
    /// Set when the points span fewer than `dim` dimensions; volume is then 0.
    pub degenerate: bool,
}

impl Polytope {
    /// Half-space membership test against every facet.
    pub fn contains(&self, p: &Vector, slack: f64) -> bool {
        self.facets
            .iter()
            .all(|f| f.normal.dot(p) <= f.offset + slack)
    }
}

/// Convex hull of `points` in `R^dim` with its facets and volume.
pub fn hull_volume(points: &[Vector], dim: usize) -> Result<Polytope> {
    if !(1..=tol::MAX_DIM).contains(&dim) {
        return Err(Error::DimensionOutOfRange {
            n: dim,
            min: 1,
            max: tol::MAX_DIM,
        });
    }
    if points.len() > tol::MAX_HULL_POINTS {
        return Err(Error::TooManyPoints {
            got: points.len(),
            max: tol::MAX_HULL_POINTS,
        });
    }
    for p in points {
        p.ensure_dim(dim)?;
    }
    let scale = points
        .iter()
        .flat_map(|p| p.coords().iter().map(|c| c.abs()))
        .fold(1.0f64, f64::max);
    let eps = tol::GEOM * scale;

    let mut unique: Vec<Vector> = Vec::with_capacity(points.len());
    for p in points {
        if !unique.iter().any(|q| q.distance(p) <= eps) {
            unique.push(p.clone());
        }
    }
    if unique.len() < 2 {
        return Err(Error::CoincidentPoints);
    }
    if affine_rank(&unique, eps) < dim {
        return Ok(Polytope {
            dim,
            points: unique,
            facets: Vec::new(),
            volume: 0.0,
            degenerate: true,
        });
    }
    if dim == 1 {
        return Ok(segment(unique));
    }

    let facets = enumerate_facets(&unique, dim, eps)?;
    let interior = Vector::mean(dim, &unique);
    let volume = facets
        .iter()
        .map(|f| f.measure * (f.offset - f.normal.dot(&interior)))
        .sum::<f64>()
        / dim as f64;
    Ok(Polytope {
        dim,
        points: unique,
        facets,
        volume,
        degenerate: false,
    })
}

fn segment(points: Vec<Vector>) -> Polytope {
    let (lo, lo_val) = points
        .iter()
        .enumerate()
        .map(|(i, p)| (i, p[0]))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("nonempty");
    let (hi, hi_val) = points
        .iter()
        .enumerate()
        .map(|(i, p)| (i, p[0]))
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .expect("nonempty");
    let facets = vec![
        Facet {
            normal: Vector::from([-1.0]),
            offset: -lo_val,
            members: vec![lo],
            measure: 1.0,
        },
        Facet {
            normal: Vector::from([1.0]),
            offset: hi_val,
            members: vec![hi],
            measure: 1.0,
        },
    ];
    Polytope {
        dim: 1,
        points,
        facets,
        volume: hi_val - lo_val,
        degenerate: false,
    }
}

fn enumerate_facets(points: &[Vector], dim: usize, eps: f64) -> Result<Vec<Facet>> {
    let mut facets: Vec<Facet> = Vec::new();
    let mut heights = vec![0.0; points.len()];
    for subset in (0..points.len()).combinations(dim) {
        if facets
            .iter()
            .any(|f| subset.iter().all(|i| f.members.contains(i)))
        {
            continue;
        }
        let base = &points[subset[0]];
        let diffs: Vec<Vector> = subset[1..].iter().map(|&i| &points[i] - base).collect();
        let raw = cofactor_normal(&diffs, dim);
        if raw.norm() <= eps {
            continue;
        }
        let mut normal = raw.normalized().expect("nonzero normal");
        let mut offset = normal.dot(base);
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for (h, p) in heights.iter_mut().zip(points) {
            *h = normal.dot(p) - offset;
            lo = lo.min(*h);
            hi = hi.max(*h);
        }
        if hi > eps && lo < -eps {
            continue;
        }
        if hi > eps {
            normal = -normal;
            offset = -offset;
            heights.iter_mut().for_each(|h| *h = -*h);
        }
        if facets
            .iter()
            .any(|f| f.normal.distance(&normal) <= tol::GEOM && (f.offset - offset).abs() <= eps)
        {
            continue;
        }
        let members: Vec<usize> = heights
            .iter()
            .enumerate()
            .filter(|(_, h)| h.abs() <= eps)
            .map(|(i, _)| i)
            .collect();
        let measure = facet_measure(points, &members, &normal, dim)?;
        facets.push(Facet {
            normal,
            offset,
            members,
            measure,
        });
    }
    Ok(facets)
}

fn facet_measure(points: &[Vector], members: &[usize], normal: &Vector, dim: usize) -> Result<f64> {
    let pts: Vec<Vector> = members.iter().map(|&i| points[i].clone()).collect();
    if pts.len() == dim {
        return Ok(simplex_measure(&pts));
    }
    let basis = complement_basis(normal);
    let origin = &pts[0];
    let local: Vec<Vector> = pts
        .iter()
        .map(|p| {
            let rel = p - origin;
            Vector::new(basis.iter().map(|b| b.dot(&rel)).collect())
        })
        .collect();
    Ok(hull_volume(&local, dim - 1)?.volume)
}

/// Monte Carlo estimate of a polytope's volume with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VolumeEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub samples: usize,
}

impl VolumeEstimate {
    /// Distance from `exact` in units of the standard error.
    pub fn z_score(&self, exact: f64) -> f64 {
        (self.estimate - exact).abs() / self.stderr
    }
}

/// Rejection sampling in the bounding box using the facet half-space test.
/// Deterministic for a given `(samples, seed)`.
pub fn monte_carlo_volume(p: &Polytope, samples: usize, seed: u64) -> Result<VolumeEstimate> {
    if p.degenerate || p.facets.is_empty() {
        return Err(Error::DegeneratePolytope);
    }
    if samples == 0 {
        return Err(Error::OutOfRange("samples must be positive".into()));
    }
    let dim = p.dim;
    let mut lo = vec![f64::INFINITY; dim];
    let mut hi = vec![f64::NEG_INFINITY; dim];
    for q in &p.points {
        for d in 0..dim {
            lo[d] = lo[d].min(q[d]);
            hi[d] = hi[d].max(q[d]);
        }
    }
    let box_volume: f64 = lo.iter().zip(&hi).map(|(a, b)| b - a).product();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sample = vec![0.0; dim];
    let mut hits = 0usize;
    for _ in 0..samples {
        for d in 0..dim {
            sample[d] = rng.gen_range(lo[d]..hi[d]);
        }
        let inside = p.facets.iter().all(|f| {
            f.normal
                .coords()
                .iter()
                .zip(&sample)
                .map(|(a, b)| a * b)
                .sum::<f64>()
                <= f.offset
        });
        if inside {
            hits += 1;
        }
    }
    let frac = hits as f64 / samples as f64;
    Ok(VolumeEstimate {
        estimate: box_volume * frac,
        stderr: box_volume * (frac * (1.0 - frac) / samples as f64).sqrt(),
        samples,
    })
}

/// Vertices of `S` together with their mirror images in `H`.
pub fn mirrored_point_set(s: &RegularSimplex, h: &SupportHyperplane) -> Result<Vec<Vector>> {
    let mut pts = s.vertices().to_vec();
    pts.extend(reflect(s.vertices(), h)?);
    Ok(pts)
}

/// Vertices of `S` together with their orthogonal projections onto `H`.
pub fn projected_point_set(s: &RegularSimplex, h: &SupportHyperplane) -> Result<Vec<Vector>> {
    let mut pts = s.vertices().to_vec();
    pts.extend(project(s.vertices(), h)?);
    Ok(pts)
}

/// `Vol(conv(S ∪ S^H)) / Vol(S)` computed from scratch by the hull oracle.
pub fn hull_ratio(s: &RegularSimplex, h: &SupportHyperplane) -> Result<f64> {
    h.check_supports(s)?;
    let hull = hull_volume(&mirrored_point_set(s, h)?, s.n())?;
    Ok(hull.volume / simplex_hull_volume(s)?)
}

/// `Vol(conv(S ∪ S'_H)) / Vol(S)` where `S'_H` is the projection onto `H`.
pub fn hull_projection_ratio(s: &RegularSimplex, h: &SupportHyperplane) -> Result<f64> {
    h.check_supports(s)?;
    let hull = hull_volume(&projected_point_set(s, h)?, s.n())?;
    Ok(hull.volume / simplex_hull_volume(s)?)
}

fn simplex_hull_volume(s: &RegularSimplex) -> Result<f64> {
    Ok(hull_volume(s.vertices(), s.n())?.volume)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperplane::support_from_direction;
    use crate::simplex::{build_simplex, regular_simplex_volume};
    use nalgebra::DMatrix;
    use proptest::prelude::*;
    use rand::Rng;

    fn hypercube(d: usize) -> Vec<Vector> {
        (0..1usize << d)
            .map(|m| Vector::new((0..d).map(|i| ((m >> i) & 1) as f64).collect()))
            .collect()
    }

    #[test]
    fn hypercubes_have_unit_volume() {
        for d in 1..=4 {
            let p = hull_volume(&hypercube(d), d).unwrap();
            assert!((p.volume - 1.0).abs() < 1e-12, "d={d}: {}", p.volume);
            assert_eq!(p.facets.len(), 2 * d);
            for f in &p.facets {
                assert_eq!(f.members.len(), 1 << (d - 1));
                assert!((f.measure - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn regular_simplex_volumes() {
        for n in 1..=8 {
            let s = build_simplex(n).unwrap();
            let p = hull_volume(s.vertices(), n).unwrap();
            assert!((p.volume - regular_simplex_volume(n)).abs() < 1e-12);
            assert_eq!(p.facets.len(), n + 1);
        }
        let s5 = build_simplex(5).unwrap();
        let v = hull_volume(s5.vertices(), 5).unwrap().volume;
        assert!((v - 3f64.sqrt() / 480.0).abs() < 1e-15);
    }

    #[test]
    fn polytope_invariants_hold() {
        let s = build_simplex(4).unwrap();
        let h = support_from_direction(&s, &Vector::from([0.3, -0.2, 0.9, 0.1])).unwrap();
        let p = hull_volume(&mirrored_point_set(&s, &h).unwrap(), 4).unwrap();
        for f in &p.facets {
            assert!((f.normal.norm() - 1.0).abs() < 1e-12);
            for q in &p.points {
                assert!(f.normal.dot(q) <= f.offset + tol::GEOM);
            }
            let members: Vec<Vector> = f.members.iter().map(|&i| p.points[i].clone()).collect();
            for m in &members {
                assert!((f.normal.dot(m) - f.offset).abs() <= tol::GEOM);
            }
            assert_eq!(affine_rank(&members, 1e-9), 3);
        }
    }

    #[test]
    fn minkowski_relation_on_simplex_facets() {
        for n in 2..=8 {
            let s = build_simplex(n).unwrap();
            let mut acc = Vector::zeros(n);
            for j in 0..=n {
                let facet: Vec<Vector> = s
                    .vertices()
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != j)
                    .map(|(_, v)| v.clone())
                    .collect();
                acc = acc.axpy(simplex_measure(&facet), s.facet_normal(j).unwrap());
            }
            assert!(acc.norm() < 1e-10, "n={n}");
        }
    }

    #[test]
    fn degenerate_and_error_inputs() {
        let flat = vec![
            Vector::from([0.0, 0.0, 0.0]),
            Vector::from([1.0, 0.0, 0.0]),
            Vector::from([0.0, 1.0, 0.0]),
            Vector::from([1.0, 1.0, 0.0]),
        ];
        let p = hull_volume(&flat, 3).unwrap();
        assert!(p.degenerate && p.volume == 0.0);
        assert_eq!(monte_carlo_volume(&p, 100, 1), Err(Error::DegeneratePolytope));

        let same = vec![Vector::from([0.5, 0.5]); 3];
        assert_eq!(hull_volume(&same, 2), Err(Error::CoincidentPoints));
        assert!(matches!(
            hull_volume(&hypercube(5), 5),
            Err(Error::TooManyPoints { .. })
        ));
        assert!(matches!(
            hull_volume(&flat, 9),
            Err(Error::DimensionOutOfRange { .. })
        ));
    }

    #[test]
    fn interior_points_do_not_change_volume() {
        let mut pts = hypercube(3);
        pts.push(Vector::from([0.5, 0.5, 0.5]));
        pts.push(Vector::from([0.5, 0.5, 1.0]));
        let p = hull_volume(&pts, 3).unwrap();
        assert!((p.volume - 1.0).abs() < 1e-12);
        assert_eq!(p.facets.len(), 6);
    }

    #[test]
    fn monte_carlo_hypercube_and_simplex() {
        let cube = hull_volume(&hypercube(4), 4).unwrap();
        let est = monte_carlo_volume(&cube, 10_000, 9).unwrap();
        assert!((est.estimate - 1.0).abs() < 1e-12 && est.stderr == 0.0);

        let s = build_simplex(3).unwrap();
        let p = hull_volume(s.vertices(), 3).unwrap();
        let est = monte_carlo_volume(&p, 200_000, 42).unwrap();
        assert!(est.z_score(p.volume) < 3.0);
        assert_eq!(est, monte_carlo_volume(&p, 200_000, 42).unwrap());
    }

    #[test]
    fn apex_direction_hull_ratio() {
        for n in 2..=5 {
            let s = build_simplex(n).unwrap();
            let h = support_from_direction(&s, s.facet_normal(0).unwrap()).unwrap();
            let r = hull_ratio(&s, &h).unwrap();
            assert!((r - 2.0 * n as f64).abs() < 1e-9);
            let p = hull_projection_ratio(&s, &h).unwrap();
            assert!((2.0 * p - r).abs() < 1e-9);
        }
    }

    fn random_orthogonal(dim: usize, seed: u64) -> DMatrix<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = DMatrix::from_fn(dim, dim, |_, _| rng.gen_range(-1.0..1.0));
        m.qr().q()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn volume_invariant_under_rigid_motion(seed in any::<u64>(), n in 2usize..=5) {
            let s = build_simplex(n).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let u = Vector::new((0..n).map(|_| rng.gen_range(-1.0..1.0)).collect());
            prop_assume!(u.norm() > 1e-3);
            let h = support_from_direction(&s, &u).unwrap();
            let pts = mirrored_point_set(&s, &h).unwrap();
            let v0 = hull_volume(&pts, n).unwrap().volume;
            let q = random_orthogonal(n, seed ^ 0x5eed);
            let shift: Vec<f64> = (0..n).map(|_| rng.gen_range(-3.0..3.0)).collect();
            let moved: Vec<Vector> = pts
                .iter()
                .map(|p| {
                    Vector::new(
                        (0..n)
                            .map(|i| (0..n).map(|j| q[(i, j)] * p[j]).sum::<f64>() + shift[i])
                            .collect(),
                    )
                })
                .collect();
            let v1 = hull_volume(&moved, n).unwrap().volume;
            prop_assert!((v0 - v1).abs() <= 1e-9 * v0);
        }
    }
}
