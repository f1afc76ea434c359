//! Global search for the supporting direction maximizing the hull ratio.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hull::{hull_projection_ratio, hull_ratio};
use crate::hyperplane::support_from_direction;
use crate::linalg::complement_basis;
use crate::nelder_mead::{minimize, NelderMeadOptions};
use crate::prism::{ratio_formula, RatioReport};
use crate::remark::remark_fixture;
use crate::simplex::{build_simplex, RegularSimplex};
use crate::tol;
use crate::vector::Vector;

pub const TOP_K: usize = 10;
pub const MAX_ITERATIONS: usize = 2000;
pub const IMPROVEMENT_TOL: f64 = 1e-12;
/// Dimensions with a proven optimum; beyond this results are exploratory.
pub const MAX_VERIFIED_N: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    /// `Vol(conv(S, S^H)) / Vol(S)`.
    #[default]
    Reflection,
    /// `Vol(conv(S, S'_H)) / Vol(S)` with `S'_H` the orthogonal projection.
    Projection,
}

impl Objective {
    fn scale(self) -> f64 {
        match self {
            Objective::Reflection => 1.0,
            Objective::Projection => 0.5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimizeConfig {
    pub n: usize,
    pub restarts: usize,
    pub seed: u64,
    pub objective: Objective,
    /// Evaluate directions touching more than one vertex with the hull oracle.
    pub cross_check: bool,
}

impl OptimizeConfig {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            restarts: 20_000,
            seed: 42,
            objective: Objective::Reflection,
            cross_check: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Candidate {
    pub label: String,
    pub u: Vector,
    pub ratio: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TracePoint {
    pub iteration: usize,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptResult {
    pub n: usize,
    pub objective: Objective,
    pub best_u: Vector,
    pub best_ratio: f64,
    /// Hull-oracle value at `best_u`.
    pub oracle_ratio: f64,
    pub touching: Vec<usize>,
    pub upper_k: usize,
    /// `<u_0, best_u>` for the apex normal opposite the base vertex.
    pub x: f64,
    /// Angle between `best_u` and the nearest outward facet normal.
    pub angle_to_u0: f64,
    pub candidate_table: Vec<Candidate>,
    /// Best value so far after each refinement iteration of the winning start.
    pub trace: Vec<TracePoint>,
    pub seed: u64,
    pub restarts: usize,
    pub verified: bool,
    pub label: String,
}

struct Evaluator<'a> {
    s: &'a RegularSimplex,
    cfg: &'a OptimizeConfig,
}

impl Evaluator<'_> {
    fn report(&self, u: &Vector) -> Result<RatioReport> {
        let h = support_from_direction(self.s, u)?;
        ratio_formula(self.s, &h)
    }

    fn value(&self, u: &Vector) -> Result<f64> {
        let h = support_from_direction(self.s, u)?;
        let r = if self.cfg.cross_check && h.touching().len() > 1 {
            hull_ratio(self.s, &h)?
        } else {
            ratio_formula(self.s, &h)?.ratio
        };
        Ok(r * self.cfg.objective.scale())
    }

    fn value_or_worst(&self, u: &Vector) -> f64 {
        self.value(u).unwrap_or(f64::NEG_INFINITY)
    }
}

struct Refined {
    u: Vector,
    ratio: f64,
    trace: Vec<TracePoint>,
}

/// Nelder-Mead in tangent coordinates at the current point, re-charted until
/// a full pass gains less than [`IMPROVEMENT_TOL`].
fn refine(eval: &Evaluator, start: &Vector) -> Result<Refined> {
    let n = start.dim();
    let mut p = start.normalized().ok_or(Error::ZeroDirection)?;
    let mut best = eval.value_or_worst(&p);
    let mut trace = Vec::new();
    let mut step = 0.05;
    let mut iterations = 0;
    while iterations < MAX_ITERATIONS {
        let basis = complement_basis(&p);
        let chart = |y: &[f64]| -> Vector {
            let v = basis.iter().zip(y).fold(p.clone(), |v, (t, &c)| v.axpy(c, t));
            v.normalized().unwrap_or_else(|| p.clone())
        };
        let opts = NelderMeadOptions {
            initial_step: step,
            max_iterations: MAX_ITERATIONS - iterations,
            ..Default::default()
        };
        let res = minimize(
            |y| -eval.value_or_worst(&chart(y)),
            &vec![0.0; n - 1],
            &opts,
            |v| {
                let ratio = trace.last().map_or(-v, |t: &TracePoint| t.ratio.max(-v));
                trace.push(TracePoint { iteration: trace.len() + 1, ratio });
            },
        );
        iterations += res.iterations;
        let gain = -res.value - best;
        if gain > 0.0 {
            p = chart(&res.x);
            best = -res.value;
        }
        if gain < IMPROVEMENT_TOL || res.iterations == 0 {
            break;
        }
        step = (step * 0.5).max(1e-4);
    }
    Ok(Refined { u: p, ratio: best, trace })
}

/// Seeded uniform directions on the unit sphere of `R^n`.
pub fn random_directions(n: usize, count: usize, seed: u64) -> Vec<Vector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let v = Vector::new((0..n).map(|_| StandardNormal.sample(&mut rng)).collect());
        if let Some(u) = v.normalized() {
            out.push(u);
        }
    }
    out
}

/// Closed-form candidate directions: `u_0`, each `r`-family normal, and for
/// `n = 5` the rotated optimum.
pub fn candidate_directions(s: &RegularSimplex) -> Result<Vec<(String, Vector)>> {
    let n = s.n();
    let mut out = vec![("u0".to_string(), s.facet_normal(0)?.clone())];
    for r in 0..n {
        out.push((format!("r={r}"), s.r_family_normal(r)?));
    }
    if n == 5 {
        let fx = remark_fixture();
        out.push(("phi_max".to_string(), fx.intrinsic_direction(fx.phi_max)?));
    }
    Ok(out)
}

pub fn optimize(n: usize, restarts: usize, seed: u64, objective: Objective) -> Result<OptResult> {
    optimize_with(&OptimizeConfig {
        n,
        restarts,
        seed,
        objective,
        cross_check: false,
    })
}

pub fn optimize_with(cfg: &OptimizeConfig) -> Result<OptResult> {
    let n = cfg.n;
    if !(2..=tol::MAX_DIM).contains(&n) {
        return Err(Error::DimensionOutOfRange { n, min: 2, max: tol::MAX_DIM });
    }
    if cfg.restarts == 0 {
        return Err(Error::OutOfRange("restarts must be at least 1".into()));
    }
    let s = build_simplex(n)?;
    let eval = Evaluator { s: &s, cfg };

    let mut coarse: Vec<(usize, Vector, f64)> = random_directions(n, cfg.restarts, cfg.seed)
        .into_iter()
        .enumerate()
        .map(|(i, u)| {
            let r = eval.value_or_worst(&u);
            (i, u, r)
        })
        .collect();
    coarse.sort_by(|a, b| b.2.total_cmp(&a.2).then(a.0.cmp(&b.0)));

    fn consider(best: &mut Option<Refined>, r: Refined) {
        if best.as_ref().is_none_or(|b| r.ratio > b.ratio) {
            *best = Some(r);
        }
    }
    let mut best: Option<Refined> = None;
    for (_, u, _) in coarse.iter().take(TOP_K) {
        consider(&mut best, refine(&eval, u)?);
    }

    let mut candidate_table = Vec::new();
    for (label, u) in candidate_directions(&s)? {
        let ratio = eval.value(&u)?;
        candidate_table.push(Candidate { label, u, ratio });
    }
    for c in &candidate_table {
        if c.ratio > best.as_ref().map_or(f64::NEG_INFINITY, |b| b.ratio) + IMPROVEMENT_TOL {
            let mut r = refine(&eval, &c.u)?;
            if r.ratio < c.ratio {
                r = Refined { u: c.u.clone(), ratio: c.ratio, trace: r.trace };
            }
            consider(&mut best, r);
        }
    }
    let best = best.expect("restarts >= 1");

    let h = support_from_direction(&s, &best.u)?;
    let oracle_ratio = match cfg.objective {
        Objective::Reflection => hull_ratio(&s, &h)?,
        Objective::Projection => hull_projection_ratio(&s, &h)?,
    };
    let report = eval.report(&best.u)?;
    let nearest_cos = s
        .facet_normals()
        .iter()
        .map(|nj| nj.dot(&best.u))
        .fold(f64::NEG_INFINITY, f64::max);
    let verified = n <= MAX_VERIFIED_N;
    Ok(OptResult {
        n,
        objective: cfg.objective,
        best_ratio: best.ratio,
        oracle_ratio,
        touching: report.touching,
        upper_k: report.k,
        x: report.x,
        angle_to_u0: nearest_cos.clamp(-1.0, 1.0).acos(),
        best_u: best.u,
        candidate_table,
        trace: best.trace,
        seed: cfg.seed,
        restarts: cfg.restarts,
        verified,
        label: if verified {
            "verified: optimum known in closed form".into()
        } else {
            "conjecture data: exploratory, no proven optimum".into()
        },
    })
}

/// Ratio at each `r`-family normal, `r = 0..n-1`.
pub fn sweep_r_family(n: usize) -> Result<Vec<(usize, f64)>> {
    Ok(sweep_r_family_reports(n)?
        .into_iter()
        .map(|(r, rep)| (r, rep.ratio))
        .collect())
}

pub fn sweep_r_family_reports(n: usize) -> Result<Vec<(usize, RatioReport)>> {
    if !(2..=tol::MAX_DIM).contains(&n) {
        return Err(Error::DimensionOutOfRange { n, min: 2, max: tol::MAX_DIM });
    }
    let s = build_simplex(n)?;
    (0..n)
        .map(|r| {
            let h = support_from_direction(&s, &s.r_family_normal(r)?)?;
            Ok((r, ratio_formula(&s, &h)?))
        })
        .collect()
}

/// Ratio report for the 5-simplex rotated by `phi` against the fixed
/// hyperplane of the 5-d construction.
pub fn phi_family_report(phi: f64) -> Result<RatioReport> {
    if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&phi) {
        return Err(Error::OutOfRange(format!("phi = {phi} outside [0, pi/2]")));
    }
    let fx = remark_fixture();
    let s = fx.simplex_at(phi)?;
    let h = support_from_direction(&s, &fx.normal_5d())?;
    ratio_formula(&s, &h)
}

pub fn phi_family_ratio(phi: f64) -> Result<f64> {
    Ok(phi_family_report(phi)?.ratio)
}
