//! Command-line front end: `algebra verify`, `spectrum`, `simulate`, `poincare`.

mod algebra;
mod config;
mod dynamics_cmd;
mod spectrum_cmd;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub use config::RunConfig;

use crate::potential::{PotentialSpec, Tabulated};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("verification failed: {0}")]
    Failed(String),
    #[error("run failed: {0}")]
    Run(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "curvebody", version, about = "Two-body problem on S³ and H³: algebra checks, spectra, reduced dynamics")]
pub struct Cli {
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct RunArgs {
    #[arg(long)]
    config: PathBuf,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Representation-theory and Poisson-algebra checks.
    Algebra {
        #[command(subcommand)]
        action: AlgebraAction,
    },
    /// Closed-form and grid energy levels of the radial equation.
    Spectrum(RunArgs),
    /// Integrate a reduced Hamiltonian.
    Simulate(RunArgs),
    /// Poincaré section of a reduced trajectory.
    Poincare(RunArgs),
}

#[derive(Debug, Subcommand)]
enum AlgebraAction {
    Verify {
        #[arg(long, default_value_t = 5)]
        max_two_ell: u32,
        /// Test hook: negate D₃ before checking.
        #[arg(long, hide = true)]
        flip_d3: bool,
    },
}

/// Caps the rayon pool at `CURVEBODY_THREADS` when set.
fn init_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("CURVEBODY_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| CliError::Config(format!("CURVEBODY_THREADS must be a positive integer, got {v:?}")))?;
    // a pool that is already initialized (e.g. by an earlier call in-process) is left alone
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn load_config(path: &std::path::Path) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    text.parse()
}

pub const POTENTIAL_KEYS: [&str; 7] = [
    "potential.kind",
    "potential.gamma",
    "potential.omega",
    "potential.alpha",
    "potential.beta",
    "potential.r",
    "potential.u",
];

pub fn potential_from_config(cfg: &RunConfig) -> Result<PotentialSpec, CliError> {
    let kind = cfg.get_str("potential.kind").unwrap_or("zero");
    let spec = match kind {
        "zero" => PotentialSpec::Zero,
        "coulomb" => PotentialSpec::Coulomb {
            gamma: cfg.require("potential.gamma")?,
        },
        "oscillator" => PotentialSpec::Oscillator {
            omega: cfg.require("potential.omega")?,
        },
        "inv_square_plus_square" => PotentialSpec::InvSquarePlusSquare {
            alpha: cfg.require("potential.alpha")?,
            beta: cfg.require("potential.beta")?,
        },
        "tabulated" => PotentialSpec::Tabulated(
            Tabulated::new(cfg.list("potential.r")?, cfg.list("potential.u")?)
                .map_err(|e| CliError::Config(e.to_string()))?,
        ),
        other => {
            return Err(CliError::Config(format!(
                "unknown potential.kind {other:?} (zero, coulomb, oscillator, inv_square_plus_square, tabulated)"
            )))
        }
    };
    spec.validate().map_err(|e| CliError::Config(e.to_string()))?;
    Ok(spec)
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    init_threads()?;
    match cli.command {
        Command::Algebra {
            action: AlgebraAction::Verify { max_two_ell, flip_d3 },
        } => algebra::verify(max_two_ell, flip_d3, cli.seed, out),
        Command::Spectrum(a) => spectrum_cmd::run(&load_config(&a.config)?, &a.out, a.format, out),
        Command::Simulate(a) => dynamics_cmd::simulate(&load_config(&a.config)?, &a.out, a.format, out),
        Command::Poincare(a) => dynamics_cmd::poincare(&load_config(&a.config)?, &a.out, out),
    }
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) if e.use_stderr() => {
            let _ = write!(err, "{e}");
            return 2;
        }
        Err(e) => {
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    match dispatch(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            e.exit_code()
        }
    }
}
