//! `entxfer` — command-line front end for the sequential
//! entanglement-transfer simulator.
//!
//! Every command writes machine-readable CSV data plus a JSON run
//! manifest with the resolved configuration and output digests, so any
//! run can be reproduced byte for byte. Exit codes: 0 success,
//! 1 verification or runtime failure, 2 usage error.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// Error carrying the process exit code.
#[derive(Debug)]
pub struct CliError {
    pub message: String,
    pub exit: u8,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
            exit: 2,
        }
    }

    pub fn failure(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
            exit: 1,
        }
    }
}

impl From<entxfer::Error> for CliError {
    fn from(err: entxfer::Error) -> Self {
        use entxfer::Error::*;
        match err {
            RoundCapExceeded { .. }
            | InvalidRequest(_)
            | NonFiniteParameter(_)
            | TOutOfRange(_) => CliError::usage(err.to_string()),
            _ => CliError::failure(err.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "entxfer",
    version,
    about = "Sequential entanglement transfer: sweeps, pair counting, feasibility verification, and unitary optimization"
)]
struct Cli {
    /// Flat key-value config file (`key = value` lines); CLI flags
    /// take precedence over it.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
struct GridArgs {
    /// Explicit interaction-strength value(s); repeatable.
    #[arg(long = "lambda", value_name = "REAL")]
    lambda: Vec<f64>,

    /// Start of the interaction-strength range.
    #[arg(long, value_name = "REAL")]
    lambda_min: Option<f64>,

    /// End of the interaction-strength range.
    #[arg(long, value_name = "REAL")]
    lambda_max: Option<f64>,

    /// Number of grid points in the range.
    #[arg(long, value_name = "N")]
    points: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Round-1 sweep: transferred and remaining entanglement over an
    /// interaction-strength grid.
    SweepSingle {
        #[command(flatten)]
        grid: GridArgs,
        /// Output CSV path.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Multi-round sweep: per-round entanglement for each grid point,
    /// in long format.
    SweepMulti {
        #[command(flatten)]
        grid: GridArgs,
        /// Rounds to simulate per grid point.
        #[arg(long, value_name = "N")]
        rounds: Option<usize>,
        /// Round cap.
        #[arg(long, value_name = "N")]
        cap: Option<usize>,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Count how many pairs clear the 2^-x threshold, over a grid of
    /// x values at fixed interaction strength.
    Count {
        /// Single threshold exponent (overrides the x range).
        #[arg(long, value_name = "REAL")]
        x: Option<f64>,
        #[arg(long, value_name = "REAL")]
        x_min: Option<f64>,
        #[arg(long, value_name = "REAL")]
        x_max: Option<f64>,
        /// Interaction strength.
        #[arg(long, value_name = "REAL")]
        lambda: Option<f64>,
        /// Round cap.
        #[arg(long, value_name = "N")]
        cap: Option<usize>,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Maximize the pair count over general two-qubit unitaries for
    /// each x value.
    Optimize {
        /// Single threshold exponent (overrides the x range).
        #[arg(long, value_name = "REAL")]
        x: Option<f64>,
        #[arg(long, value_name = "REAL")]
        x_min: Option<f64>,
        #[arg(long, value_name = "REAL")]
        x_max: Option<f64>,
        /// Simplex restarts per x value.
        #[arg(long, value_name = "N")]
        restarts: Option<usize>,
        /// RNG seed; fixed seed means byte-identical outputs.
        #[arg(long, value_name = "N")]
        seed: Option<u64>,
        /// Round cap during optimization.
        #[arg(long, value_name = "N")]
        cap: Option<usize>,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Verify that N consecutive pairs can each receive entanglement;
    /// searches for the interaction parameter when none is given.
    /// Exits 1 when certification fails.
    Verify {
        /// Number of rounds to certify.
        n_target: usize,
        /// Interaction parameter t; found by search when omitted.
        t: Option<f64>,
        /// Optional per-round report CSV.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match &cli.config {
        Some(path) => match config::ConfigFile::load(path) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {}", e.message);
                return ExitCode::from(e.exit);
            }
        },
        None => config::ConfigFile::default(),
    };
    let result = match cli.command {
        Command::SweepSingle { grid, out } => commands::sweep_single(&config, grid, out),
        Command::SweepMulti {
            grid,
            rounds,
            cap,
            out,
        } => commands::sweep_multi(&config, grid, rounds, cap, out),
        Command::Count {
            x,
            x_min,
            x_max,
            lambda,
            cap,
            out,
        } => commands::count(&config, x, x_min, x_max, lambda, cap, out),
        Command::Optimize {
            x,
            x_min,
            x_max,
            restarts,
            seed,
            cap,
            out,
        } => commands::optimize(&config, x, x_min, x_max, restarts, seed, cap, out),
        Command::Verify { n_target, t, out } => commands::verify(&config, n_target, t, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.exit)
        }
    }
}
