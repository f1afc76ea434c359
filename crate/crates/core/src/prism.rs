//! Closed-form hull-volume ratio via the prism decomposition.
//!
//! Above the hyperplane the hull of `S` and its mirror image is the region
//! between `H` and the upper facets of `S`, so its volume is twice the sum of
//! the slanted prisms under each upper facet. With unit edges each prism,
//! divided by `Vol(S)`, is `n <n_j, u> <u, s - s_j> / sqrt(n(n+1)/2)` once
//! coordinates are re-based at a touching vertex.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hyperplane::{upper_facets, SupportHyperplane};
use crate::simplex::{closed_form, RegularSimplex};
use crate::tol;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioReport {
    pub n: usize,
    /// `Vol(conv(S, S^H)) / Vol(S)`.
    pub ratio: f64,
    /// Number of upper facets.
    pub k: usize,
    /// `(j, term_j)` per upper facet; `ratio = 2n * sum(term_j)`.
    pub contributions: Vec<(usize, f64)>,
    /// `<u_0, u>` where `u_0` is the outward normal opposite the base vertex.
    pub x: f64,
    /// `<s_j, u>` (re-based) for the upper facets other than the apex facet.
    pub s_dots: Vec<f64>,
    /// Touching vertex used as origin.
    pub base_vertex: usize,
    pub touching: Vec<usize>,
}

pub fn ratio_formula(s: &RegularSimplex, h: &SupportHyperplane) -> Result<RatioReport> {
    h.check_supports(s)?;
    let upper = upper_facets(s, h)?;
    let n = s.n();
    let base_vertex = *h.touching().first().ok_or(Error::EmptyTouching)?;
    let base = s.vertex(base_vertex);
    let u = h.u();

    // heights of the re-based vertices; the base vertex contributes zero
    let dots: Vec<f64> = s.vertices().iter().map(|v| (v - base).dot(u)).collect();
    let s_dot: f64 = dots.iter().sum();
    let denom = closed_form::s_norm(n);

    let mut contributions = Vec::with_capacity(upper.len());
    let mut s_dots = Vec::new();
    for (&j, &cos) in upper.indices.iter().zip(&upper.cosines) {
        let term = cos * (s_dot - dots[j]) / denom;
        contributions.push((j, term));
        if j != base_vertex {
            s_dots.push(dots[j]);
        }
    }
    let total: f64 = contributions.iter().map(|(_, t)| t).sum();
    let x = s.facet_normal(base_vertex)?.dot(u);
    Ok(RatioReport {
        n,
        ratio: 2.0 * n as f64 * total,
        k: upper.len(),
        contributions,
        x,
        s_dots,
        base_vertex,
        touching: h.touching().to_vec(),
    })
}

/// The bracketed quadratic whose `2n`-multiple is the ratio when `k >= 2`
/// upper facets are present:
/// `(2/n) sum d^2 - sqrt(2/(n(n+1))) (n+2) x sum d + k x^2`.
pub fn f_value(n: usize, k: usize, x: f64, s_dots: &[f64]) -> Result<f64> {
    if n < 2 || k < 2 || k > n + 1 {
        return Err(Error::OutOfRange(format!("f_value needs 2 <= k, got n={n} k={k}")));
    }
    let lo = 1.0 / n as f64;
    if !(lo - tol::GEOM..=1.0 + tol::GEOM).contains(&x) {
        return Err(Error::OutOfRange(format!("x = {x} outside [1/n, 1]")));
    }
    if s_dots.len() != k - 1 {
        return Err(Error::Arity {
            expected: k - 1,
            got: s_dots.len(),
        });
    }
    let nf = n as f64;
    let sum: f64 = s_dots.iter().sum();
    let sum_sq: f64 = s_dots.iter().map(|d| d * d).sum();
    let coupling = (2.0 / (nf * (nf + 1.0))).sqrt() * (nf + 2.0);
    Ok(2.0 / nf * sum_sq - coupling * x * sum + k as f64 * x * x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperplane::support_from_direction;
    use crate::simplex::build_simplex;
    use crate::vector::Vector;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn apex_direction_gives_two_n() {
        for n in 2..=8 {
            let s = build_simplex(n).unwrap();
            let h = support_from_direction(&s, s.facet_normal(0).unwrap()).unwrap();
            let r = ratio_formula(&s, &h).unwrap();
            assert!((r.ratio - 2.0 * n as f64).abs() < 1e-12, "n={n}: {}", r.ratio);
            assert_eq!(r.k, 1);
            // the apex term reduces to <u0,u>^2
            assert!((r.contributions[0].1 - r.x * r.x).abs() < 1e-12);
        }
    }

    #[test]
    fn contributions_sum_and_sign() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 2..=8 {
            let s = build_simplex(n).unwrap();
            for _ in 0..100 {
                let u = Vector::new((0..n).map(|_| rng.gen_range(-1.0..1.0)).collect());
                let h = support_from_direction(&s, &u).unwrap();
                let r = ratio_formula(&s, &h).unwrap();
                let sum: f64 = r.contributions.iter().map(|c| c.1).sum();
                assert!((r.ratio - 2.0 * n as f64 * sum).abs() < 1e-12);
                assert!(r.contributions.iter().all(|c| c.1 >= -tol::GEOM));
                if r.touching.len() == 1 {
                    assert!(r.ratio >= 2.0 - 1e-9);
                }
                let apex = r
                    .contributions
                    .iter()
                    .find(|c| c.0 == r.base_vertex)
                    .unwrap();
                assert!((apex.1 - r.x * r.x).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn f_value_matches_ratio() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut checked = 0;
        for n in 2..=8 {
            let s = build_simplex(n).unwrap();
            for _ in 0..200 {
                let u = Vector::new((0..n).map(|_| rng.gen_range(-1.0..1.0)).collect());
                let h = support_from_direction(&s, &u).unwrap();
                let r = ratio_formula(&s, &h).unwrap();
                if r.k < 2 {
                    continue;
                }
                let f = f_value(n, r.k, r.x, &r.s_dots).unwrap();
                assert!((2.0 * n as f64 * f - r.ratio).abs() < 1e-10);
                checked += 1;
            }
        }
        assert!(checked > 100);
    }

    #[test]
    fn f_value_endpoint_examples() {
        // d at its upper bound sqrt(n/(2(n+1))) x makes each extra term vanish
        for &x in &[0.3, 0.7, 1.0] {
            let f5 = f_value(5, 2, x, &[(5.0f64 / 12.0).sqrt() * x]).unwrap();
            assert!((f5 - x * x).abs() < 1e-12);
            let f4 = f_value(4, 2, x, &[0.4f64.sqrt() * x]).unwrap();
            assert!((f4 - x * x).abs() < 1e-12);
        }
        // k = 3 splits into two equal halves of (1/6 - 7/6 + 3/2) x^2
        let x = 0.8;
        let d = (5.0f64 / 12.0).sqrt() * x;
        let f = f_value(5, 3, x, &[d, d]).unwrap();
        assert!((f - 2.0 * 0.5 * x * x).abs() < 1e-12);
    }

    #[test]
    fn f_value_argument_errors() {
        assert!(matches!(
            f_value(5, 3, 0.5, &[0.1]),
            Err(Error::Arity { expected: 2, got: 1 })
        ));
        assert!(f_value(5, 1, 0.5, &[]).is_err());
        assert!(f_value(5, 2, 0.1, &[0.0]).is_err());
    }

    #[test]
    fn ratio_is_continuous_across_facet_changes() {
        // walk from u0 past the point where a second facet turns upward
        let n = 4;
        let s = build_simplex(n).unwrap();
        let u0 = s.facet_normal(0).unwrap();
        let w = s.facet_normal(1).unwrap();
        let steps = 4000;
        let mut prev: Option<(Vector, f64, usize)> = None;
        let mut saw_change = false;
        let mut worst = 0.0f64;
        for i in 0..=steps {
            let t = i as f64 / steps as f64 * 1.2;
            let u = u0.axpy(t, w).normalized().unwrap();
            let h = support_from_direction(&s, &u).unwrap();
            let r = ratio_formula(&s, &h).unwrap();
            if let Some((pu, pr, pk)) = &prev {
                saw_change |= *pk != r.k;
                worst = worst.max((r.ratio - pr).abs() / u.distance(pu));
            }
            prev = Some((u, r.ratio, r.k));
        }
        assert!(saw_change);
        assert!(worst < 8.0 * n as f64, "Lipschitz estimate {worst}");
    }
}
