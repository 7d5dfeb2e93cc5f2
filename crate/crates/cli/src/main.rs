//! `wd`: invert Wolff-Denjoy series and apply the inverse to matrices.
//!
//! Exit codes: 0 success, 2 invalid input or I/O, 3 numerical failure,
//! 4 residual above tolerance.

mod commands;
mod doc;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use commands::{CliError, Outcome};
use doc::{to_canonical, ProblemSpec};

#[derive(Parser)]
#[command(name = "wd", version, about = "Multiplicative inversion of Wolff-Denjoy series")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the inverse expansion of a real series or complex pole sum.
    Invert {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Residual tolerance on the verification grid.
        #[arg(long)]
        tol: Option<f64>,
        /// Absolute radius for grouping numerically coincident zeros.
        #[arg(long)]
        cluster_radius: Option<f64>,
    },
    /// Build f(A) and its left inverse for a matrix A.
    Operator {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Minimum distance between the spectrum and the pole region.
        #[arg(long)]
        margin: Option<f64>,
    },
    /// Check a stored expansion against a problem on a grid.
    Verify {
        expansion: PathBuf,
        problem: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn read_problem(path: &Path) -> Result<ProblemSpec, CliError> {
    serde_json::from_str(&read(path)?).map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source,
    })
}

fn emit<T: Serialize>(doc: &T, output: Option<&Path>) -> Result<(), CliError> {
    let text = to_canonical(doc);
    match output {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn finish<T: Serialize>(outcome: Outcome<T>, output: Option<&Path>) -> Result<(), CliError> {
    emit(&outcome.report, output)?;
    outcome.failure.map_or(Ok(()), Err)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Invert {
            input,
            output,
            tol,
            cluster_radius,
        } => {
            let spec = read_problem(&input)?;
            finish(commands::run_invert(&spec, tol, cluster_radius)?, output.as_deref())
        }
        Command::Operator { input, output, margin } => {
            let spec = read_problem(&input)?;
            finish(commands::run_operator(&spec, margin)?, output.as_deref())
        }
        Command::Verify {
            expansion,
            problem,
            tol,
        } => {
            let text = read(&expansion)?;
            let exp = commands::parse_expansion(&text).map_err(|source| CliError::Parse {
                path: expansion.display().to_string(),
                source,
            })?;
            let spec = read_problem(&problem)?;
            finish(commands::run_verify(&exp, &spec, tol)?, None)
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("WD_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if n > 0 {
            // Only fails if a pool already exists, which cannot happen this early.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("wd: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
