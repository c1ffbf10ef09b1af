//! Command-line front end for `facloc`.

pub mod commands;
pub mod error;
pub mod file;
pub mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use facloc::instances::{ConstructionName, FamilyKind, PaperConstruction, RandomFamily};
use facloc::scalar::parse_scalar;
use facloc::solver::DEFAULT_GUARD;
use facloc::verify::{LowerBound, DEFAULT_GRID};
use facloc::{Mechanism, Objective, Scalar};

pub use error::{CliError, CliResult};
use file::InstanceFile;

/// Environment variable overriding the enumeration guard.
pub const GUARD_ENV: &str = "FLG_GUARD";

#[derive(Debug, Parser)]
#[command(name = "facloc", version, about = "Facility location mechanisms with candidate locations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FamilyArg {
    Line,
    Metric,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact optimum of an instance file.
    Solve {
        file: PathBuf,
        #[arg(long, default_value = "sc")]
        objective: String,
    },
    /// Apply a mechanism and report both objectives and ratios.
    Run {
        file: PathBuf,
        #[arg(long)]
        mechanism: String,
    },
    /// Search for a profitable unilateral or coalition misreport.
    Verify {
        file: PathBuf,
        #[arg(long)]
        mechanism: String,
        #[arg(long = "group-max", default_value_t = 1)]
        group_max: usize,
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
    },
    /// Ratio sweep over a seeded random family, as CSV.
    Sweep {
        #[arg(long, value_enum, default_value = "line")]
        family: FamilyArg,
        #[arg(long)]
        mechanism: String,
        #[arg(long, default_value = "mc")]
        objective: String,
        #[arg(long, default_value_t = 1000)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Line coordinate range.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        lo: i64,
        #[arg(long, default_value_t = 10, allow_hyphen_values = true)]
        hi: i64,
        /// Metric edge-weight range.
        #[arg(long = "min-weight", default_value_t = 1)]
        min_weight: u64,
        #[arg(long = "max-weight", default_value_t = 10)]
        max_weight: u64,
        /// CSV destination; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replay a lower-bound construction against a mechanism.
    Replay {
        #[arg(long)]
        construction: String,
        #[arg(long)]
        mechanism: String,
        #[arg(long, default_value = "1/10")]
        epsilon: String,
        #[arg(long = "L")]
        far_point: Option<String>,
    },
    /// Print a named construction or a random family member as an instance file.
    Instance {
        #[arg(long)]
        construction: String,
        #[arg(long, default_value = "1/10")]
        epsilon: String,
        #[arg(long = "L")]
        far_point: Option<String>,
        #[arg(long)]
        n: Option<usize>,
    },
}

fn parse<T: std::str::FromStr<Err = facloc::Error>>(text: &str) -> CliResult<T> {
    text.parse().map_err(|e: facloc::Error| CliError::Parse(e.to_string()))
}

fn scalar(text: &str) -> CliResult<Scalar> {
    parse_scalar(text).map_err(|e| CliError::Parse(e.to_string()))
}

/// Guard from `FLG_GUARD`, or the default.
pub fn guard_from_env() -> CliResult<u64> {
    match std::env::var(GUARD_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Parse(format!("{GUARD_ENV}={v:?} is not an integer"))),
        Err(_) => Ok(DEFAULT_GUARD),
    }
}

/// Runs one command and returns what goes to stdout.
pub fn run(cli: Cli) -> CliResult<String> {
    let guard = guard_from_env()?;
    match cli.command {
        Command::Solve { file, objective } => {
            let instance = commands::read_instance(&file)?;
            commands::cmd_solve(&instance, parse::<Objective>(&objective)?, guard)
        }
        Command::Run { file, mechanism } => {
            let instance = commands::read_instance(&file)?;
            commands::cmd_run(&instance, &parse::<Mechanism>(&mechanism)?, guard)
        }
        Command::Verify {
            file,
            mechanism,
            group_max,
            grid,
        } => {
            let instance = commands::read_instance(&file)?;
            commands::cmd_verify(&instance, &parse::<Mechanism>(&mechanism)?, group_max, grid, guard)
        }
        Command::Sweep {
            family,
            mechanism,
            objective,
            count,
            seed,
            n,
            m,
            k,
            lo,
            hi,
            min_weight,
            max_weight,
            out,
        } => {
            let kind = match family {
                FamilyArg::Line => FamilyKind::LineUniform { lo, hi },
                FamilyArg::Metric => FamilyKind::MetricClosure { min_weight, max_weight },
            };
            let family = RandomFamily {
                kind,
                agents: n,
                candidates: m,
                facilities: k,
                seed,
            };
            let report = commands::cmd_sweep(
                &family,
                &parse::<Mechanism>(&mechanism)?,
                parse::<Objective>(&objective)?,
                count,
                guard,
            )?;
            let csv = commands::sweep_csv(&report);
            match out {
                Some(path) => {
                    std::fs::write(path, csv)?;
                    Ok(commands::sweep_summary(&report))
                }
                None => Ok(csv),
            }
        }
        Command::Replay {
            construction,
            mechanism,
            epsilon,
            far_point,
        } => {
            let far_point = far_point.as_deref().map(scalar).transpose()?;
            commands::cmd_replay(
                parse::<LowerBound>(&construction)?,
                &parse::<Mechanism>(&mechanism)?,
                &scalar(&epsilon)?,
                far_point.as_ref(),
            )
        }
        Command::Instance {
            construction,
            epsilon,
            far_point,
            n,
        } => {
            let mut c = PaperConstruction::new(parse::<ConstructionName>(&construction)?, scalar(&epsilon)?);
            if let Some(l) = far_point {
                c = c.with_far_point(scalar(&l)?);
            }
            if let Some(n) = n {
                c = c.with_agents(n);
            }
            Ok(InstanceFile::from_instance(&c.build()?).to_json())
        }
    }
}
