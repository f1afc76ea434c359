//! Reproduction checks with measured deviations, grouped by acceptance
//! criterion.

use serde::Serialize;

use crate::cases::{
    case_record, g5, g5_max_value, g5_trig_coefficients, maximize_g4, maximize_h5, phi_max, root_27_77,
};
use crate::error::Result;
use crate::hull::{hull_projection_ratio, hull_ratio, hull_volume, mirrored_point_set, monte_carlo_volume};
use crate::hyperplane::support_from_direction;
use crate::optimizer::{optimize, phi_family_ratio, random_directions, Objective};
use crate::prism::ratio_formula;
use crate::remark::{closed_form as remark_cf, remark_decomposition, remark_fixture};
use crate::simplex::{build_simplex, regular_simplex_volume};

pub const CRITERIA: [u8; 9] = [1, 2, 3, 4, 5, 6, 7, 8, 9];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub criterion: u8,
    pub name: String,
    pub measured: f64,
    pub expected: f64,
    pub deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    /// `|measured - expected| <= tolerance`.
    pub fn close(criterion: u8, name: impl Into<String>, measured: f64, expected: f64, tolerance: f64) -> Self {
        let deviation = (measured - expected).abs();
        Self {
            criterion,
            name: name.into(),
            measured,
            expected,
            deviation,
            tolerance,
            pass: deviation <= tolerance,
        }
    }

    /// `measured <= bound + tolerance`.
    pub fn at_most(criterion: u8, name: impl Into<String>, measured: f64, bound: f64, tolerance: f64) -> Self {
        let deviation = (measured - bound).max(0.0);
        Self {
            criterion,
            name: name.into(),
            measured,
            expected: bound,
            deviation,
            tolerance,
            pass: measured <= bound + tolerance,
        }
    }

    /// `measured >= bound - tolerance`.
    pub fn at_least(criterion: u8, name: impl Into<String>, measured: f64, bound: f64, tolerance: f64) -> Self {
        let deviation = (bound - measured).max(0.0);
        Self {
            criterion,
            name: name.into(),
            measured,
            expected: bound,
            deviation,
            tolerance,
            pass: measured >= bound - tolerance,
        }
    }

    pub fn holds(criterion: u8, name: impl Into<String>, ok: bool) -> Self {
        Self {
            criterion,
            name: name.into(),
            measured: f64::from(u8::from(ok)),
            expected: 1.0,
            deviation: f64::from(u8::from(!ok)),
            tolerance: 0.0,
            pass: ok,
        }
    }

    pub fn line(&self) -> String {
        format!(
            "{} [{}] {}: measured {:.15e}, expected {:.15e}, deviation {:.3e} (tol {:.0e})",
            if self.pass { "PASS" } else { "FAIL" },
            self.criterion,
            self.name,
            self.measured,
            self.expected,
            self.deviation,
            self.tolerance
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VerifyOptions {
    pub restarts: usize,
    pub seed: u64,
    pub mc_samples: usize,
    pub random_directions: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            restarts: 20_000,
            seed: 42,
            mc_samples: 1_000_000,
            random_directions: 200,
        }
    }
}

pub fn run_all(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for c in CRITERIA {
        out.extend(criterion(c, opts)?);
    }
    Ok(out)
}

pub fn criterion(id: u8, opts: &VerifyOptions) -> Result<Vec<Check>> {
    match id {
        1 => formula_at_u0(),
        2 => oracle_at_u0(),
        3 => optimum_n5(opts),
        4 => maximality_small_n(opts),
        5 => oracle_equivalence(opts),
        6 => case_fixtures(),
        7 => remark_reconstruction(),
        8 => monte_carlo(opts),
        9 => exploration(opts),
        _ => Err(crate::Error::OutOfRange(format!("no criterion {id}"))),
    }
}

fn formula_at_u0() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for n in 2..=8 {
        let s = build_simplex(n)?;
        let h = support_from_direction(&s, s.facet_normal(0)?)?;
        let r = ratio_formula(&s, &h)?.ratio;
        out.push(Check::close(1, format!("formula ratio at u0, n={n}"), r, 2.0 * n as f64, 1e-12));
    }
    let s5 = build_simplex(5)?;
    out.push(Check::close(1, "|s| at n=5 is sqrt(15)", s5.s().norm(), 15f64.sqrt(), 1e-12));
    out.push(Check::close(1, "height at n=5 is sqrt(6/10)", s5.height(), 0.6f64.sqrt(), 1e-12));
    out.push(Check::close(1, "|c| at n=5 is sqrt(5/12)", s5.centroid().norm(), (5.0f64 / 12.0).sqrt(), 1e-12));
    out.push(Check::close(
        1,
        "<u_i, u_j> = -1/n at n=5",
        s5.facet_normal(1)?.dot(s5.facet_normal(3)?),
        -0.2,
        1e-12,
    ));
    out.push(Check::close(
        1,
        "<u, u0> = sqrt(2/5) for r=1, n=5",
        s5.r_family_normal(1)?.dot(s5.facet_normal(0)?),
        0.4f64.sqrt(),
        1e-12,
    ));
    out.push(Check::close(
        1,
        "Vol(S) at n=5 is sqrt(3)/(4*5!)",
        s5.volume(),
        3f64.sqrt() / 480.0,
        1e-15,
    ));
    Ok(out)
}

fn oracle_at_u0() -> Result<Vec<Check>> {
    (2..=6)
        .map(|n| {
            let s = build_simplex(n)?;
            let h = support_from_direction(&s, s.facet_normal(0)?)?;
            Ok(Check::close(2, format!("hull ratio at u0, n={n}"), hull_ratio(&s, &h)?, 2.0 * n as f64, 1e-9))
        })
        .collect()
}

fn optimum_n5(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let res = optimize(5, opts.restarts, opts.seed, Objective::Reflection)?;
    let target = remark_cf::optimal_ratio();
    Ok(vec![
        Check::close(3, "optimized ratio at n=5", res.best_ratio, target, 1e-6),
        Check::close(3, "hull re-check of optimized direction", res.oracle_ratio, res.best_ratio, 1e-8),
        Check::close(3, "phi-family ratio at phi_max", phi_family_ratio(phi_max())?, target, 1e-6),
        Check::close(3, "x at the optimum matches phi_max", res.x, crate::cases::x_of_phi(phi_max()), 1e-4),
    ])
}

fn maximality_small_n(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for n in 2..=4 {
        let res = optimize(n, opts.restarts, opts.seed, Objective::Reflection)?;
        out.push(Check::at_most(4, format!("optimized ratio <= 2n, n={n}"), res.best_ratio, 2.0 * n as f64, 1e-9));
        out.push(Check::at_most(4, format!("angle to u0, n={n}"), res.angle_to_u0, 0.0, 1e-3));
    }
    Ok(out)
}

fn oracle_equivalence(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for n in 2..=6 {
        let s = build_simplex(n)?;
        let (mut formula_dev, mut half_dev) = (0.0f64, 0.0f64);
        for u in random_directions(n, opts.random_directions, opts.seed + n as u64) {
            let h = support_from_direction(&s, &u)?;
            let oracle = hull_ratio(&s, &h)?;
            formula_dev = formula_dev.max((ratio_formula(&s, &h)?.ratio - oracle).abs());
            half_dev = half_dev.max((oracle - 2.0 * hull_projection_ratio(&s, &h)?).abs());
        }
        out.push(Check::at_most(5, format!("max |formula - hull|, n={n}"), formula_dev, 0.0, 1e-8));
        out.push(Check::at_most(5, format!("max |reflected - 2 projected|, n={n}"), half_dev, 0.0, 1e-8));
    }
    Ok(out)
}

fn case_fixtures() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let c42 = case_record(4, 2)?;
    let (r1, r2) = c42.real_roots.unwrap_or((f64::NAN, f64::NAN));
    out.push(Check::close(6, "(4,2) A = 7/10", c42.a, 0.7, 1e-12));
    out.push(Check::close(6, "(4,2) B = 27/20", c42.b, 1.35, 1e-12));
    out.push(Check::close(6, "(4,2) larger root 20/23", r1.max(r2), 20.0 / 23.0, 1e-12));
    out.push(Check::close(6, "(4,2) smaller root 5/8", r1.min(r2), 5.0 / 8.0, 1e-12));
    for k in [2, 3] {
        let c = case_record(3, k)?;
        out.push(Check::holds(6, format!("(3,{k}) infeasible"), !c.feasible && c.real_roots.is_none()));
    }

    let c53 = case_record(5, 3)?;
    out.push(Check::close(6, "(5,3) A = 8/15", c53.a, 8.0 / 15.0, 1e-12));
    out.push(Check::close(6, "(5,3) B = 196/75 as printed", c53.b, 196.0 / 75.0, 1e-12));
    let (p1, p2) = c53.real_roots.unwrap_or((f64::NAN, f64::NAN));
    let printed = |sign: f64| 9.0 * (23.0 + sign * 7.0 * 2f64.sqrt()) / 326.0;
    out.push(Check::close(6, "(5,3) larger root 9(23+7 sqrt2)/326 as printed", p1.max(p2), printed(1.0), 1e-12));
    out.push(Check::close(6, "(5,3) smaller root 9(23-7 sqrt2)/326 as printed", p1.min(p2), printed(-1.0), 1e-12));

    let g4 = maximize_g4().best();
    out.push(Check::close(6, "g4 maximum value", g4.value, 0.960977, 1e-5));
    out.push(Check::close(6, "g4 maximizer", g4.x, 0.915944, 1e-5));
    out.push(Check::at_most(6, "g4 maximum below 1", g4.value, 1.0, 0.0));
    let h5 = maximize_h5();
    out.push(Check::close(6, "h5 maximum value", h5.value, 0.314005, 1e-5));
    out.push(Check::close(6, "h5 maximizer", h5.x, 0.318833, 1e-5));
    out.push(Check::at_most(6, "2 h5 maximum below 1", 2.0 * h5.value, 1.0, 0.0));

    let phi = phi_max();
    out.push(Check::close(6, "g5(phi_max)", g5(phi), g5_max_value(), 1e-9));
    let (sn, cs) = phi.sin_cos();
    out.push(Check::close(6, "cos^2 - sin^2 at phi_max", cs * cs - sn * sn, root_27_77(), 1e-9));
    out.push(Check::close(6, "sin cos at phi_max", sn * cs, 0.5 * (50.0f64 / 77.0).sqrt(), 1e-9));
    let (a, b, c) = g5_trig_coefficients();
    out.push(Check::close(6, "trig coefficient sin^2", a, 0.2, 1e-15));
    out.push(Check::close(6, "trig coefficient cos^2", b, 0.8, 1e-15));
    out.push(Check::close(6, "trig coefficient sin cos", c, 6f64.sqrt() / 3.0, 1e-15));
    Ok(out)
}

fn remark_reconstruction() -> Result<Vec<Check>> {
    let fx = remark_fixture();
    let mut out = Vec::new();
    let m = fx.basis_matrix;
    let mut orth = 0.0f64;
    for i in 0..6 {
        for j in 0..6 {
            let d: f64 = (0..6).map(|r| m[r][i] * m[r][j]).sum();
            orth = orth.max((d - if i == j { 1.0 } else { 0.0 }).abs());
        }
    }
    out.push(Check::at_most(7, "basis matrix orthogonality", orth, 0.0, 1e-12));

    let s2 = [0.0, -0.5, 0.0, 1.0 / 8f64.sqrt(), 0.5, (3.0f64 / 8.0).sqrt()];
    let dev = fx.frame_vertices[2].coords().iter().zip(s2).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    out.push(Check::at_most(7, "frame coordinates of s_2", dev, 0.0, 1e-12));
    let u0 = [0.0, 0.0, 0.0, 0.0, 15f64.sqrt() / 5.0, 10f64.sqrt() / 5.0];
    let dev = fx.u0.coords().iter().zip(u0).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    out.push(Check::at_most(7, "frame coordinates of u0", dev, 0.0, 1e-12));

    let hull = hull_volume(&fx.optimal_vertices_5d(), 5)?;
    let total = remark_cf::total();
    out.push(Check::close(7, "hull volume of the 11 optimal vertices", hull.volume, total, 1e-10));
    let dec = remark_decomposition();
    out.push(Check::close(7, "pyramids volume", dec.pyramids_vol, remark_cf::pyramids_vol(), 1e-12));
    out.push(Check::close(7, "simplex part volume", dec.simplex_part_vol, remark_cf::simplex_part_vol(), 1e-12));
    out.push(Check::close(7, "pyramids + simplex part", dec.total, total, 1e-12));
    out.push(Check::close(
        7,
        "volume ratio to Vol(S)",
        hull.volume / regular_simplex_volume(5),
        remark_cf::optimal_ratio(),
        1e-9,
    ));
    Ok(out)
}

fn monte_carlo(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for n in 2..=6 {
        let s = build_simplex(n)?;
        let h = support_from_direction(&s, s.facet_normal(0)?)?;
        let p = hull_volume(&mirrored_point_set(&s, &h)?, n)?;
        let est = monte_carlo_volume(&p, opts.mc_samples, opts.seed + n as u64)?;
        let exact = 2.0 * n as f64 * regular_simplex_volume(n);
        out.push(Check::at_most(8, format!("Monte Carlo z-score at u0, n={n}"), est.z_score(exact).abs(), 3.0, 0.0));
    }
    let p = hull_volume(&remark_fixture().optimal_vertices_5d(), 5)?;
    let est = monte_carlo_volume(&p, opts.mc_samples, opts.seed)?;
    out.push(Check::at_most(
        8,
        "Monte Carlo z-score, 11 optimal vertices",
        est.z_score(remark_cf::total()).abs(),
        3.0,
        0.0,
    ));
    Ok(out)
}

fn exploration(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for n in 6..=8 {
        let res = optimize(n, opts.restarts, opts.seed, Objective::Reflection)?;
        out.push(Check::at_least(9, format!("exploration ratio >= 2n, n={n}"), res.best_ratio, 2.0 * n as f64, 1e-9));
        out.push(Check::holds(9, format!("labelled as conjecture data, n={n}"), !res.verified && res.label.starts_with("conjecture data")));
    }
    Ok(out)
}
