//! One-dimensional maximization on a closed interval.

use serde::Serialize;

const INV_PHI: f64 = 0.618_033_988_749_894_8;
const CONCAVITY_GRID: usize = 256;
const FALLBACK_GRID: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Maximum {
    pub x: f64,
    pub value: f64,
    /// Whether the sampled second differences showed the function concave on
    /// the interval, so plain golden-section search was trusted.
    pub concave: bool,
}

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`,
/// stopping once the bracket is narrower than `tol`.
pub fn golden_section_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
    }
    // endpoints can win when the maximum sits on the boundary
    [(x1, f1), (x2, f2), (lo, f(lo)), (hi, f(hi))]
        .into_iter()
        .fold((f64::NAN, f64::NEG_INFINITY), |best, c| if c.1 > best.1 { c } else { best })
}

/// True when all second differences of `f` on a uniform grid are `<= slack`.
pub fn is_concave_on(f: &impl Fn(f64) -> f64, lo: f64, hi: f64, slack: f64) -> bool {
    let h = (hi - lo) / CONCAVITY_GRID as f64;
    let vals: Vec<f64> = (0..=CONCAVITY_GRID).map(|i| f(lo + h * i as f64)).collect();
    vals.windows(3).all(|w| w[0] - 2.0 * w[1] + w[2] <= slack)
}

/// Maximize `f` on `[lo, hi]`, shrinking the bracket to `1e-10` in `x`.
/// At a smooth interior maximum the location is only resolved to about
/// `sqrt(f64::EPSILON)` since nearby values tie; the value itself is exact
/// to rounding.
///
/// Concavity is checked on a grid first; if it fails, a dense grid locates the
/// best cell and golden-section search polishes inside its neighbours.
pub fn maximize(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> Maximum {
    const TOL: f64 = 1e-10;
    if is_concave_on(&f, lo, hi, 1e-12) {
        let (x, value) = golden_section_max(&f, lo, hi, TOL);
        return Maximum {
            x,
            value,
            concave: true,
        };
    }
    let h = (hi - lo) / FALLBACK_GRID as f64;
    let best = (0..=FALLBACK_GRID)
        .map(|i| lo + h * i as f64)
        .map(|x| (x, f(x)))
        .fold((lo, f64::NEG_INFINITY), |b, c| if c.1 > b.1 { c } else { b });
    let a = (best.0 - h).max(lo);
    let b = (best.0 + h).min(hi);
    let (x, value) = golden_section_max(&f, a, b, TOL);
    Maximum {
        x,
        value,
        concave: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parabola_interior_maximum() {
        let m = maximize(|x| -(x - 0.3).powi(2) + 2.0, 0.0, 1.0);
        assert!(m.concave);
        assert!((m.x - 0.3).abs() < 1e-7);
        assert!((m.value - 2.0).abs() < 1e-15);
    }

    #[test]
    fn boundary_maximum() {
        let m = maximize(|x| x, 0.0, 1.0);
        assert!((m.x - 1.0).abs() < 1e-9);
    }

    #[test]
    fn non_concave_falls_back_to_grid() {
        // two bumps; the right one is higher
        let f = |x: f64| (-(x - 0.2).powi(2) * 200.0).exp() + 1.5 * (-(x - 0.8).powi(2) * 200.0).exp();
        let m = maximize(f, 0.0, 1.0);
        assert!(!m.concave);
        assert!((m.x - 0.8).abs() < 1e-6);
    }
}
