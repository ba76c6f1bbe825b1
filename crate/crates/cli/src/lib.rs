//! Command-line front end: `analyze`, `compare`, `extremal`, `paper-check`
//! and `sweep`.
//!
//! Exit codes: 0 success, 1 failed check, 2 parse or usage error, 3 invalid
//! channel, 4 violated precondition.

pub mod checks;
pub mod commands;
pub mod format;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use thiserror::Error;

use biso::orders::DEFAULT_GRID;
use commands::{KindFlag, OrderFlag, Quantity, SweepArgs};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}: {1}")]
    Io(PathBuf, String),

    #[error("{}: {}", .0.display(), .1)]
    Channel(PathBuf, biso::Error),

    #[error("{0}")]
    Usage(String),

    #[error("{0}")]
    Precondition(String),

    #[error(transparent)]
    Core(#[from] biso::Error),
}

pub type CliResult<T> = std::result::Result<T, CliError>;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(..) | CliError::Usage(_) => 2,
            CliError::Channel(_, e) => match e {
                biso::Error::Parse { .. } => 2,
                biso::Error::InvalidChannel { .. } | biso::Error::NotStochastic { .. } => 3,
                _ => 4,
            },
            CliError::Precondition(_) | CliError::Core(_) => 4,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "biso",
    version,
    about = "Coefficients and partial orders of binary-input channels"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print all coefficients of a channel and its matched BSC/BEC.
    Analyze { path: PathBuf },
    /// Decide degradability, less-noisy and more-capable in both directions.
    Compare {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        order: OrderFlag,
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
    },
    /// BSC and BEC sharing a coefficient with the channel.
    Extremal {
        path: PathBuf,
        #[arg(long, value_enum)]
        kind: KindFlag,
        /// Directory to write bsc.txt and bec.txt into.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the regression checks of all reproduced numbers.
    #[command(name = "paper-check")]
    PaperCheck {
        #[arg(long)]
        list: bool,
        #[arg(long)]
        only: Option<String>,
    },
    /// Write a CSV sweep to standard output.
    Sweep {
        #[arg(value_enum)]
        quantity: Quantity,
        files: Vec<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
        /// Compare Z(q) with the BSC of equal capacity.
        #[arg(long)]
        z_matched: Option<f64>,
        #[arg(long, default_value_t = 1.2)]
        t_max: f64,
        #[arg(long, default_value_t = 120)]
        steps: usize,
    },
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Analyze { path } => commands::analyze(&path, out).map(|_| 0),
        Command::Compare { a, b, order, grid } => commands::compare(&a, &b, order, grid, out).map(|_| 0),
        Command::Extremal { path, kind, out: dir } => commands::extremal(&path, kind, dir.as_deref(), out).map(|_| 0),
        Command::PaperCheck { list, only } => {
            commands::paper_check(list, only.as_deref(), out).map(|ok| if ok { 0 } else { 1 })
        }
        Command::Sweep {
            quantity,
            files,
            grid,
            z_matched,
            t_max,
            steps,
        } => commands::sweep(
            &SweepArgs {
                quantity,
                files: &files,
                grid,
                z_matched,
                t_max,
                steps,
            },
            out,
        )
        .map(|_| 0),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
