//! Command dispatch and machine-readable reports.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::json;

use crate::cases::{case_table, phi_max, root_27_77, CaseRecord};
use crate::error::Error;
use crate::hull::{hull_projection_ratio, hull_ratio};
use crate::hyperplane::{support_from_direction, upper_facets};
use crate::optimizer::{optimize_with, phi_family_report, sweep_r_family_reports, Objective, OptimizeConfig};
use crate::prism::{ratio_formula, RatioReport};
use crate::remark::{closed_form as remark_cf, remark_decomposition, remark_fixture};
use crate::simplex::{build_simplex, regular_simplex_volume};
use crate::tol;
use crate::vector::Vector;
use crate::verify::{run_all, VerifyOptions};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_NAME: &str = env!("CARGO_PKG_NAME");
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    R,
    Phi,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DirectionSpec {
    Coords(Vec<f64>),
    RFamily(usize),
    U0,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum Command {
    Ratio {
        direction: DirectionSpec,
        /// Include ambient `R^{n+1}` coordinates of the vertices and `u`.
        ambient: bool,
    },
    Optimize {
        cross_check: bool,
        /// Defaults to `<output>.trace.csv` next to the report.
        trace_path: Option<PathBuf>,
    },
    Verify {
        mc_samples: usize,
        random_directions: usize,
    },
    Sweep {
        family: Family,
        points: usize,
    },
    AnalyzeCase,
    #[serde(rename = "construct-5d")]
    Construct5d,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub n: Option<usize>,
    pub seed: u64,
    pub restarts: usize,
    pub objective: Objective,
    pub output_path: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            n: None,
            seed: 42,
            restarts: 20_000,
            objective: Objective::Reflection,
            output_path: None,
            format: Format::Json,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("invalid configuration: {0}")]
    Invalid(#[from] Error),
    #[error("invalid configuration: {0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Invalid(_) | RunError::Usage(_) => 2,
            RunError::Io(_) | RunError::Json(_) => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Constant {
    pub name: &'static str,
    pub expr: String,
    pub value: f64,
}

impl Constant {
    fn new(name: &'static str, expr: impl Into<String>, value: f64) -> Self {
        Self {
            name,
            expr: expr.into(),
            value,
        }
    }
}

/// Closed-form constants attached to every JSON report.
pub fn constants(n: Option<usize>) -> Vec<Constant> {
    let mut out = vec![
        Constant::new("optimal_ratio_n5", "10*(1/2 + sqrt(77)/(10*sqrt(3)))", remark_cf::optimal_ratio()),
        Constant::new("optimal_volume_n5", "(5*sqrt(3) + sqrt(77))/(4*5!)", remark_cf::total()),
        Constant::new("simplex_volume_n5", "sqrt(3)/(4*5!)", regular_simplex_volume(5)),
        Constant::new("sqrt_27_77", "sqrt(27/77)", root_27_77()),
        Constant::new("cos2_phi_max", "(1 + sqrt(27/77))/2", (1.0 + root_27_77()) / 2.0),
        Constant::new("phi_max", "acos(sqrt((1 + sqrt(27/77))/2))", phi_max()),
    ];
    if let Some(n) = n {
        out.push(Constant::new("two_n", format!("2*{n}"), 2.0 * n as f64));
        out.push(Constant::new(
            "simplex_volume",
            format!("sqrt({})/({}! * 2^({}/2))", n + 1, n, n),
            regular_simplex_volume(n),
        ));
    }
    out
}

fn envelope(cfg: &RunConfig, result: impl Serialize) -> serde_json::Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "tool": { "name": TOOL_NAME, "version": TOOL_VERSION },
        "config": cfg,
        "constants": constants(cfg.n),
        "result": result,
    })
}

fn emit(cfg: &RunConfig, body: &str, out: &mut dyn Write) -> Result<(), RunError> {
    match &cfg.output_path {
        Some(p) => fs::write(p, body)?,
        None => out.write_all(body.as_bytes())?,
    }
    Ok(())
}

fn json_text(v: &serde_json::Value) -> Result<String, RunError> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

fn require_n(cfg: &RunConfig) -> Result<usize, RunError> {
    let n = cfg.n.ok_or_else(|| RunError::Usage("--n is required for this command".into()))?;
    if !(2..=tol::MAX_DIM).contains(&n) {
        return Err(Error::DimensionOutOfRange { n, min: 2, max: tol::MAX_DIM }.into());
    }
    Ok(n)
}

/// Execute `cfg`, writing the report to `output_path` or `out`. Returns the
/// process exit status.
pub fn run(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32, RunError> {
    match &cfg.command {
        Command::Ratio { direction, ambient } => run_ratio(cfg, direction, *ambient, out),
        Command::Optimize { cross_check, trace_path } => run_optimize(cfg, *cross_check, trace_path.as_deref(), out),
        Command::Verify {
            mc_samples,
            random_directions,
        } => run_verify(cfg, *mc_samples, *random_directions, out),
        Command::Sweep { family, points } => run_sweep(cfg, *family, *points, out),
        Command::AnalyzeCase => run_analyze(cfg, out),
        Command::Construct5d => run_construct(cfg, out),
    }
}

#[derive(Serialize)]
struct RatioOutput {
    objective: Objective,
    u: Vector,
    value: f64,
    oracle_value: f64,
    upper_facets: Vec<usize>,
    report: RatioReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    ambient: Option<AmbientDump>,
}

#[derive(Serialize)]
struct AmbientDump {
    vertices: Vec<Vector>,
    u: Vector,
}

fn run_ratio(cfg: &RunConfig, direction: &DirectionSpec, ambient: bool, out: &mut dyn Write) -> Result<i32, RunError> {
    let n = require_n(cfg)?;
    let s = build_simplex(n)?;
    let u = match direction {
        DirectionSpec::Coords(c) => {
            let v = Vector::new(c.clone());
            v.ensure_dim(n)?;
            v.normalized().ok_or(Error::ZeroDirection)?
        }
        DirectionSpec::RFamily(r) => s.r_family_normal(*r)?,
        DirectionSpec::U0 => s.facet_normal(0)?.clone(),
    };
    let h = support_from_direction(&s, &u)?;
    let report = ratio_formula(&s, &h)?;
    let (value, oracle_value) = match cfg.objective {
        Objective::Reflection => (report.ratio, hull_ratio(&s, &h)?),
        Objective::Projection => (report.ratio / 2.0, hull_projection_ratio(&s, &h)?),
    };
    let output = RatioOutput {
        objective: cfg.objective,
        upper_facets: upper_facets(&s, &h)?.indices,
        ambient: if ambient {
            Some(AmbientDump {
                vertices: s.ambient_vertices(),
                u: s.to_ambient(&u)?,
            })
        } else {
            None
        },
        u,
        value,
        oracle_value,
        report,
    };
    let body = match cfg.format {
        Format::Json => json_text(&envelope(cfg, &output))?,
        Format::Csv => format!(
            "value,oracle_value,k_upper,x\n{},{},{},{}\n",
            output.value, output.oracle_value, output.report.k, output.report.x
        ),
    };
    emit(cfg, &body, out)?;
    Ok(0)
}

fn trace_csv(trace: &[crate::optimizer::TracePoint]) -> String {
    let mut s = String::from("iteration,ratio\n");
    for t in trace {
        s.push_str(&format!("{},{}\n", t.iteration, t.ratio));
    }
    s
}

fn default_trace_path(report: &Path) -> PathBuf {
    let mut name = report.file_stem().unwrap_or_default().to_os_string();
    name.push(".trace.csv");
    report.with_file_name(name)
}

fn run_optimize(
    cfg: &RunConfig,
    cross_check: bool,
    trace_path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32, RunError> {
    let n = require_n(cfg)?;
    let res = optimize_with(&OptimizeConfig {
        n,
        restarts: cfg.restarts,
        seed: cfg.seed,
        objective: cfg.objective,
        cross_check,
    })?;
    let trace_target = trace_path
        .map(Path::to_path_buf)
        .or_else(|| cfg.output_path.as_deref().map(default_trace_path));
    if let Some(p) = &trace_target {
        fs::write(p, trace_csv(&res.trace))?;
    }
    let body = match cfg.format {
        Format::Json => json_text(&envelope(cfg, &res))?,
        Format::Csv => trace_csv(&res.trace),
    };
    emit(cfg, &body, out)?;
    Ok(0)
}

fn run_verify(cfg: &RunConfig, mc_samples: usize, random_directions: usize, out: &mut dyn Write) -> Result<i32, RunError> {
    let opts = VerifyOptions {
        restarts: cfg.restarts,
        seed: cfg.seed,
        mc_samples,
        random_directions,
    };
    let checks = run_all(&opts)?;
    let failed = checks.iter().filter(|c| !c.pass).count();
    let mut lines = String::new();
    for c in &checks {
        lines.push_str(&c.line());
        lines.push('\n');
    }
    lines.push_str(&format!("{} checks, {} passed, {} failed\n", checks.len(), checks.len() - failed, failed));
    out.write_all(lines.as_bytes())?;
    if let Some(p) = &cfg.output_path {
        let body = match cfg.format {
            Format::Json => json_text(&envelope(cfg, &checks))?,
            Format::Csv => {
                let mut s = String::from("criterion,name,measured,expected,deviation,tolerance,pass\n");
                for c in &checks {
                    s.push_str(&format!(
                        "{},\"{}\",{},{},{},{},{}\n",
                        c.criterion, c.name, c.measured, c.expected, c.deviation, c.tolerance, c.pass
                    ));
                }
                s
            }
        };
        fs::write(p, body)?;
    }
    Ok(if failed == 0 { 0 } else { 1 })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub param: f64,
    pub ratio: f64,
    pub k_upper: usize,
    pub x: f64,
}

impl SweepRow {
    fn from_report(param: f64, r: &RatioReport) -> Self {
        Self {
            param,
            ratio: r.ratio,
            k_upper: r.k,
            x: r.x,
        }
    }
}

/// Ratio along the `r`-family of `n`, or along `points` equally spaced angles
/// in `[0, pi/2]` for the rotated 5-simplex.
pub fn sweep_rows(family: Family, n: usize, points: usize) -> crate::Result<Vec<SweepRow>> {
    match family {
        Family::R => Ok(sweep_r_family_reports(n)?
            .iter()
            .map(|(r, rep)| SweepRow::from_report(*r as f64, rep))
            .collect()),
        Family::Phi => {
            if n != 5 {
                return Err(Error::OutOfRange(format!("the phi family exists only for n = 5, got {n}")));
            }
            if points < 2 {
                return Err(Error::OutOfRange("a phi sweep needs at least 2 points".into()));
            }
            let step = std::f64::consts::FRAC_PI_2 / (points - 1) as f64;
            (0..points)
                .map(|i| {
                    let phi = (step * i as f64).min(std::f64::consts::FRAC_PI_2);
                    Ok(SweepRow::from_report(phi, &phi_family_report(phi)?))
                })
                .collect()
        }
    }
}

fn run_sweep(cfg: &RunConfig, family: Family, points: usize, out: &mut dyn Write) -> Result<i32, RunError> {
    let n = match (family, cfg.n) {
        (Family::Phi, None) => 5,
        _ => require_n(cfg)?,
    };
    let rows = sweep_rows(family, n, points)?;
    let body = match cfg.format {
        Format::Csv => {
            let mut s = String::from("param,ratio,k_upper,x\n");
            for r in &rows {
                s.push_str(&format!("{},{},{},{}\n", r.param, r.ratio, r.k_upper, r.x));
            }
            s
        }
        Format::Json => json_text(&envelope(cfg, &rows))?,
    };
    emit(cfg, &body, out)?;
    Ok(0)
}

fn run_analyze(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32, RunError> {
    let max_n = cfg.n.unwrap_or(tol::MAX_DIM);
    if !(2..=tol::MAX_DIM).contains(&max_n) {
        return Err(Error::DimensionOutOfRange { n: max_n, min: 2, max: tol::MAX_DIM }.into());
    }
    let table: Vec<CaseRecord> = case_table(max_n);
    let body = match cfg.format {
        Format::Json => json_text(&envelope(cfg, &table))?,
        Format::Csv => {
            let mut s = String::from("n,k,A,B,root_lo,root_hi,feasible\n");
            for c in &table {
                let (lo, hi) = c
                    .real_roots
                    .map(|(a, b)| (a.min(b).to_string(), a.max(b).to_string()))
                    .unwrap_or_default();
                s.push_str(&format!("{},{},{},{},{},{},{}\n", c.n, c.k, c.a, c.b, lo, hi, c.feasible));
            }
            s
        }
    };
    emit(cfg, &body, out)?;
    Ok(0)
}

fn run_construct(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32, RunError> {
    if cfg.format == Format::Csv {
        return Err(RunError::Usage("construct-5d only emits JSON".into()));
    }
    let result = json!({
        "fixture": remark_fixture(),
        "decomposition": remark_decomposition(),
    });
    emit(cfg, &json_text(&envelope(cfg, result))?, out)?;
    Ok(0)
}
