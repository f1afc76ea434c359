//! Closed-form objects of the upper-facet case analysis.
//!
//! For `k >= 2` upper facets the ratio divided by `2n` is bounded by
//! `x (A x + sqrt(B) sqrt(1 - x^2))` with `x = <u_0, u>`. That bound reaches 1
//! only when the quartic `(A^2+B) x^4 - (2A+B) x^2 + 1` has real roots, i.e.
//! when `4n <= (n-k+1)(n+2)`. The feasible cases that survive (`n = 4, k = 2`
//! and `n = 5, k = 2, 3`) are settled by the explicit one-variable functions
//! [`g4`], [`h5`] and [`g5`].

use serde::Serialize;

use crate::error::{Error, Result};
use crate::search1d::{maximize, Maximum};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CaseRecord {
    pub n: usize,
    pub k: usize,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    /// `(x_1^2, x_2^2)` with `x_1^2 >= x_2^2`, present exactly when feasible.
    pub real_roots: Option<(f64, f64)>,
    /// `4 <= (n-k+1)(n+2)/n`.
    pub feasible: bool,
}

impl CaseRecord {
    /// `(A^2+B) x^4 - (2A+B) x^2 + 1`.
    pub fn quartic(&self, x: f64) -> f64 {
        let x2 = x * x;
        (self.a * self.a + self.b) * x2 * x2 - (2.0 * self.a + self.b) * x2 + 1.0
    }
}

fn check_case(n: usize, k: usize) -> Result<()> {
    if n < 2 || k < 2 || k > n {
        return Err(Error::OutOfRange(format!(
            "case analysis needs n >= 2 and 2 <= k <= n, got n={n} k={k}"
        )));
    }
    Ok(())
}

/// Exact feasibility test in integers: `4n <= (n-k+1)(n+2)`.
pub fn is_feasible(n: usize, k: usize) -> bool {
    4 * n <= (n + 1 - k) * (n + 2)
}

pub fn case_record(n: usize, k: usize) -> Result<CaseRecord> {
    check_case(n, k)?;
    let (nf, kf) = (n as f64, k as f64);
    let a = 1.0 - (kf - 1.0) * (nf + 2.0) / (nf * (nf + 1.0));
    let b = ((nf + 2.0) / nf).powi(2) * (kf - 1.0) * (nf - kf + 1.0) / (nf + 1.0);
    let feasible = is_feasible(n, k);
    let real_roots = feasible.then(|| {
        // the discriminant is exactly zero on the boundary case, clamp rounding
        let disc = (b * (4.0 * a + b - 4.0)).max(0.0).sqrt();
        let denom = 2.0 * (a * a + b);
        ((2.0 * a + b + disc) / denom, (2.0 * a + b - disc) / denom)
    });
    Ok(CaseRecord {
        n,
        k,
        a,
        b,
        real_roots,
        feasible,
    })
}

/// Every case record for `2 <= k <= n <= max_n`.
pub fn case_table(max_n: usize) -> Vec<CaseRecord> {
    (2..=max_n)
        .flat_map(|n| (2..=n).map(move |k| case_record(n, k).expect("valid range")))
        .collect()
}

/// `x (A x + sqrt(B) sqrt(1 - x^2))` on `x in [0, 1]`.
pub fn f_upper_bound(n: usize, k: usize, x: f64) -> Result<f64> {
    let rec = case_record(n, k)?;
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::OutOfRange(format!("x = {x} outside [0, 1]")));
    }
    Ok(x * (rec.a * x + rec.b.sqrt() * (1.0 - x * x).sqrt()))
}

/// Endpoint bound for `n = 4, k = 2`:
/// `5/8 x^2 + (sqrt(27/20) - sqrt(15/64)) x sqrt(1-x^2) + 3/16`.
pub fn g4(x: f64) -> f64 {
    let c = (27.0f64 / 20.0).sqrt() - (15.0f64 / 64.0).sqrt();
    5.0 / 8.0 * x * x + c * x * (1.0 - x * x).sqrt() + 3.0 / 16.0
}

/// Lower end of the feasibility interval for `n = 4, k = 2`: `sqrt(5/8)`.
pub fn g4_feasible_interval() -> (f64, f64) {
    ((5.0f64 / 8.0).sqrt(), (20.0f64 / 23.0).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct G4Analysis {
    /// Maximum on the concave stretch `[1/2, sqrt(20/23)]`.
    pub concave_stretch: Maximum,
    /// Maximum on the feasibility interval `[sqrt(5/8), sqrt(20/23)]`.
    pub feasible_interval: Maximum,
}

impl G4Analysis {
    /// Overall maximum over the union of both intervals.
    pub fn best(&self) -> Maximum {
        if self.feasible_interval.value > self.concave_stretch.value {
            self.feasible_interval
        } else {
            self.concave_stretch
        }
    }
}

pub fn maximize_g4() -> G4Analysis {
    let (lo, hi) = g4_feasible_interval();
    G4Analysis {
        concave_stretch: maximize(g4, 0.5, hi),
        feasible_interval: maximize(g4, lo, hi),
    }
}

/// Endpoint bound for `n = 5, k = 3`:
/// `-29/50 x^2 + 11/25 x sqrt(1-x^2) + 6/25`.
pub fn h5(x: f64) -> f64 {
    -29.0 / 50.0 * x * x + 11.0 / 25.0 * x * (1.0 - x * x).sqrt() + 6.0 / 25.0
}

pub fn maximize_h5() -> Maximum {
    maximize(h5, 0.0, 1.0)
}

/// Trigonometric form of the `n = 5, k = 2` bound:
/// `3/5 cos^2 phi + sqrt(6)/3 sin phi cos phi + 1/5`.
pub fn g5(phi: f64) -> f64 {
    let (s, c) = phi.sin_cos();
    3.0 / 5.0 * c * c + 6f64.sqrt() / 3.0 * s * c + 1.0 / 5.0
}

/// `sqrt(27/77)`, the value of `cos^2 - sin^2` at the optimum.
pub fn root_27_77() -> f64 {
    (27.0f64 / 77.0).sqrt()
}

/// Closed-form maximizer: `cos^2 phi_max = (1 + sqrt(27/77)) / 2`.
pub fn phi_max() -> f64 {
    ((1.0 + root_27_77()) / 2.0).sqrt().acos()
}

/// `1/2 + sqrt(77) / (10 sqrt(3))`.
pub fn g5_max_value() -> f64 {
    0.5 + 77f64.sqrt() / (10.0 * 3f64.sqrt())
}

/// Numerical maximum of [`g5`] on `[0, pi/2]`.
pub fn maximize_g5() -> Maximum {
    maximize(g5, 0.0, std::f64::consts::FRAC_PI_2)
}

/// Endpoint bound for `n = 5, k = 2` as a function of `x = <u_0, u>`:
/// `17/25 x^2 + 23 sqrt(6)/75 x sqrt(1-x^2) + 4/25`.
pub fn g5_endpoint_form(x: f64) -> f64 {
    17.0 / 25.0 * x * x + 23.0 * 6f64.sqrt() / 75.0 * x * (1.0 - x * x).sqrt() + 4.0 / 25.0
}

/// `x = sqrt(3/5) sin phi + sqrt(2/5) cos phi`.
pub fn x_of_phi(phi: f64) -> f64 {
    let (s, c) = phi.sin_cos();
    0.6f64.sqrt() * s + 0.4f64.sqrt() * c
}

/// Inverse of [`x_of_phi`] on the branch where
/// `sqrt(1 - x^2) = sqrt(3/5) cos phi - sqrt(2/5) sin phi >= 0`, i.e.
/// `x in [sqrt(2/5), 1]`.
pub fn phi_of_x(x: f64) -> Result<f64> {
    let lo = 0.4f64.sqrt();
    if !(lo - 1e-15..=1.0).contains(&x) {
        return Err(Error::OutOfRange(format!(
            "x = {x} outside the substitution range [sqrt(2/5), 1]"
        )));
    }
    Ok(x.min(1.0).asin() - lo.asin())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BridgeCheck {
    pub x: f64,
    pub phi: f64,
    pub endpoint_form: f64,
    pub trig_form: f64,
}

impl BridgeCheck {
    pub fn deviation(&self) -> f64 {
        (self.endpoint_form - self.trig_form).abs()
    }
}

/// Evaluate the endpoint bound and its trigonometric form at the same point.
pub fn substitution_bridge(x: f64) -> Result<BridgeCheck> {
    let phi = phi_of_x(x)?;
    let check = BridgeCheck {
        x,
        phi,
        endpoint_form: g5_endpoint_form(x),
        trig_form: g5(phi),
    };
    if check.deviation() > 1e-10 {
        return Err(Error::Inconsistent(format!(
            "substitution forms disagree by {:e} at x = {x}",
            check.deviation()
        )));
    }
    Ok(check)
}

/// Coefficients `(sin^2, cos^2, sin cos)` of the expanded `n = 5, k = 2`
/// bound, collected term by term from the endpoint form.
pub fn g5_trig_coefficients() -> (f64, f64, f64) {
    let r6 = 6f64.sqrt();
    // 17/25 x^2 with x^2 = 3/5 sin^2 + 2/5 cos^2 + 2 sqrt(6)/5 sin cos
    let (xs, xc, xsc) = (17.0 / 25.0 * 0.6, 17.0 / 25.0 * 0.4, 17.0 / 25.0 * 2.0 * r6 / 5.0);
    // 23 sqrt(6)/75 x sqrt(1-x^2) = 23 sqrt(6)/75 (sqrt(6)/5 (cos^2 - sin^2) + 1/5 sin cos)
    let m = 23.0 * r6 / 75.0;
    let (ys, yc, ysc) = (-m * r6 / 5.0, m * r6 / 5.0, m / 5.0);
    // 4/25 = 4/25 (sin^2 + cos^2)
    (xs + ys + 0.16, xc + yc + 0.16, xsc + ysc)
}
