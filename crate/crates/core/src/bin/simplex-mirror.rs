use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use simplex_mirror::report::{run, Command, DirectionSpec, Family, Format, RunConfig};
use simplex_mirror::Objective;

/// Hull volume of a regular simplex and its mirror image in a supporting
/// hyperplane.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct Common {
    /// Simplex dimension.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 20_000)]
    restarts: usize,
    #[arg(long, value_enum, default_value_t = CliObjective::Reflection)]
    objective: CliObjective,
    /// Write the report here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// json, or csv for sweeps.
    #[arg(long, value_enum)]
    format: Option<CliFormat>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate the ratio for one supporting direction.
    Ratio {
        /// Comma-separated intrinsic coordinates of the normal.
        #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["r_family", "u0"])]
        u: Option<String>,
        /// Normal touching vertices 0..=r and parallel to the rest.
        #[arg(long, conflicts_with = "u0")]
        r_family: Option<usize>,
        /// Normal of the facet opposite vertex 0.
        #[arg(long)]
        u0: bool,
        /// Also dump ambient coordinates.
        #[arg(long)]
        ambient: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Search all supporting directions for the largest ratio.
    Optimize {
        /// Evaluate multi-vertex contacts with the hull oracle.
        #[arg(long)]
        cross_check: bool,
        /// CSV trace path (defaults next to --output).
        #[arg(long)]
        trace: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Run every reproduction check and print PASS/FAIL lines.
    Verify {
        #[arg(long, default_value_t = 1_000_000)]
        mc_samples: usize,
        #[arg(long, default_value_t = 200)]
        random_directions: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Ratio along the r-family or the rotated 5-simplex.
    Sweep {
        #[arg(long, value_enum)]
        family: CliFamily,
        #[arg(long, default_value_t = 1000)]
        points: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Quartic case table for 2 <= k <= n (n defaults to 8).
    AnalyzeCase {
        #[command(flatten)]
        common: Common,
    },
    /// The 5-dimensional optimal construction.
    #[command(name = "construct-5d")]
    Construct5d {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CliObjective {
    Reflection,
    Projection,
}

#[derive(Clone, Copy, ValueEnum)]
enum CliFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum CliFamily {
    R,
    Phi,
}

fn parse_coords(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("bad coordinate {t:?}: {e}")))
        .collect()
}

fn config(cli: Cli) -> Result<RunConfig, String> {
    let mut default_format = Format::Json;
    let (command, common) = match cli.command {
        Cmd::Ratio {
            u,
            r_family,
            u0,
            ambient,
            common,
        } => {
            let direction = match (u, r_family, u0) {
                (Some(u), _, _) => DirectionSpec::Coords(parse_coords(&u)?),
                (_, Some(r), _) => DirectionSpec::RFamily(r),
                (_, _, true) => DirectionSpec::U0,
                _ => return Err("ratio needs one of --u, --r-family, --u0".into()),
            };
            (Command::Ratio { direction, ambient }, common)
        }
        Cmd::Optimize {
            cross_check,
            trace,
            common,
        } => (
            Command::Optimize {
                cross_check,
                trace_path: trace,
            },
            common,
        ),
        Cmd::Verify {
            mc_samples,
            random_directions,
            common,
        } => (
            Command::Verify {
                mc_samples,
                random_directions,
            },
            common,
        ),
        Cmd::Sweep { family, points, common } => {
            let family = match family {
                CliFamily::R => Family::R,
                CliFamily::Phi => Family::Phi,
            };
            default_format = Format::Csv;
            (Command::Sweep { family, points }, common)
        }
        Cmd::AnalyzeCase { common } => (Command::AnalyzeCase, common),
        Cmd::Construct5d { common } => (Command::Construct5d, common),
    };
    Ok(RunConfig {
        command,
        n: common.n,
        seed: common.seed,
        restarts: common.restarts,
        objective: match common.objective {
            CliObjective::Reflection => Objective::Reflection,
            CliObjective::Projection => Objective::Projection,
        },
        output_path: common.output,
        format: match common.format {
            Some(CliFormat::Json) => Format::Json,
            Some(CliFormat::Csv) => Format::Csv,
            None => default_format,
        },
    })
}

fn main() -> ExitCode {
    let cfg = match config(Cli::parse()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match run(&cfg, &mut std::io::stdout().lock()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
