//! `hivctl` — scenario runner for the within-host HIV model.
//!
//! Subcommands: `simulate`, `equilibria`, `stability`, `optimize`, `sweep`.
//! Exit codes: 0 success, 2 schema error, 3 numeric failure or
//! non-convergence, 4 I/O error.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use hiv_dynamics::{Method, SweepMode};

use crate::commands::{
    apply_overrides, run_equilibria, run_optimize, run_simulate, run_stability, run_sweep,
    RunOutput,
};
use crate::config::ScenarioConfig;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("numeric error: {0}")]
    Numeric(String),
    #[error("io error: {0}")]
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Schema(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

const EXIT_NON_CONVERGENCE: u8 = 3;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Euler,
    Rk4,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Euler => Method::Euler,
            MethodArg::Rk4 => Method::Rk4,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    /// Single combined forward/backward pass of the reference scheme.
    Paper,
    /// Iterated forward-backward sweep (default).
    Fbsm,
}

impl From<ModeArg> for SweepMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Paper => SweepMode::SinglePass,
            ModeArg::Fbsm => SweepMode::IteratedFbsm,
        }
    }
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Scenario configuration (JSON). Omitted fields use the reference
    /// setup.
    #[arg(long, value_name = "PATH")]
    config: PathBuf,
    /// Output directory; overrides `outputs.dir` from the config.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Integrator; overrides `method` from the config.
    #[arg(long, value_enum)]
    method: Option<MethodArg>,
    /// Sweep iteration policy; overrides `sweep.mode` from the config.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
}

/// Within-host HIV dynamics: simulation, equilibrium and stability
/// analysis, and optimal two-drug scheduling.
///
/// The environment variable HIVCTL_SEED is reserved for future stochastic
/// features and is currently ignored: every command is deterministic.
#[derive(Debug, Parser)]
#[command(name = "hivctl", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Integrate the uncontrolled system and write the trajectory CSV.
    Simulate(CommonArgs),
    /// Report all five steady states with thresholds and stability.
    Equilibria(CommonArgs),
    /// Condensed stability verdict table.
    Stability(CommonArgs),
    /// Solve the two-drug optimal control problem.
    Optimize(CommonArgs),
    /// Rerun the threshold/equilibrium analysis along one parameter axis.
    Sweep {
        #[command(flatten)]
        common: CommonArgs,
        /// Parameter to vary (lambda, d, beta, a, p, mu, N, q, c, h, g,
        /// alpha, A1, A2).
        #[arg(long, value_name = "NAME")]
        axis: String,
        /// Comma-separated axis values.
        #[arg(long, value_name = "V1,V2,...", value_delimiter = ',', required = true)]
        values: Vec<f64>,
    },
}

fn run(cli: Cli) -> Result<RunOutput, CliError> {
    let (common, output) = match &cli.command {
        Command::Simulate(c)
        | Command::Equilibria(c)
        | Command::Stability(c)
        | Command::Optimize(c) => (c, None),
        Command::Sweep {
            common,
            axis,
            values,
        } => (common, Some((axis.clone(), values.clone()))),
    };

    let mut cfg = ScenarioConfig::load(&common.config)?;
    apply_overrides(
        &mut cfg,
        common.method.map(Into::into),
        common.mode.map(Into::into),
    );
    let out_dir = common
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(&cfg.outputs.dir));

    match (&cli.command, output) {
        (Command::Simulate(_), _) => run_simulate(&cfg, &out_dir),
        (Command::Equilibria(_), _) => run_equilibria(&cfg, &out_dir),
        (Command::Stability(_), _) => run_stability(&cfg, &out_dir),
        (Command::Optimize(_), _) => run_optimize(&cfg, &out_dir),
        (Command::Sweep { .. }, Some((axis, values))) => run_sweep(&cfg, &axis, &values, &out_dir),
        (Command::Sweep { .. }, None) => unreachable!(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(output) => {
            for file in &output.files {
                println!("{}", file.display());
            }
            if output.converged {
                ExitCode::SUCCESS
            } else {
                eprintln!("hivctl: sweep did not converge (artifacts written)");
                ExitCode::from(EXIT_NON_CONVERGENCE)
            }
        }
        Err(err) => {
            eprintln!("hivctl: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
