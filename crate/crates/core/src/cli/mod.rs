//! Batch front end: `heun eigs|verify|eval --spec <file>`.
//!
//! Exit codes: 0 success, 2 usage or parse error, 3 validation error,
//! 4 solver failure, 5 verification failure.

mod commands;
pub mod config;
pub mod document;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use thiserror::Error;

pub use commands::{cmd_eigs, cmd_eval, cmd_verify, thread_pool};
pub use config::{OutputFormat, ParamValue, ProblemSpec};
pub use document::{EigenRecord, NormRecord, ResultDocument, SampleRecord, VerificationSummary};

use crate::error::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_SOLVER: i32 = 4;
pub const EXIT_VERIFICATION: i32 = 5;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid problem: {0}")]
    Validation(String),
    #[error("solver failed: {0}")]
    Solver(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse { .. } => EXIT_USAGE,
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Solver(_) => EXIT_SOLVER,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NonFinite(_)
            | Error::RiemannViolation { .. }
            | Error::SingularityInInterval { .. }
            | Error::ExistenceViolated(_)
            | Error::InvalidWindow { .. }
            | Error::NonPositiveTol(_)
            | Error::EmptyRegion => CliError::Validation(e.to_string()),
            other => CliError::Solver(other),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "heun", version, about = "Eigenvalues and normalized Heun functions on [0, 1]")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, clap::Args)]
pub struct Common {
    /// Problem file of `key = value` lines.
    #[arg(long)]
    pub spec: PathBuf,
    /// Write the result here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigenvalues with continuation coefficients and norms.
    Eigs(Common),
    /// Check the basis against quadrature and shooting.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, hide = true)]
        corrupt_norm: Option<usize>,
    },
    /// Tabulate the normalized eigenfunctions.
    Eval {
        #[command(flatten)]
        common: Common,
        /// Comma separated abscissae.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        points: Vec<f64>,
    },
}

/// Runs the tool and returns the process exit code. Diagnostics go to stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("heun: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli) -> Result<i32, CliError> {
    let common = match &cli.command {
        Command::Eigs(c) => c,
        Command::Verify { common, .. } => common,
        Command::Eval { common, .. } => common,
    };
    let text = std::fs::read_to_string(&common.spec)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", common.spec.display())))?;
    let spec = ProblemSpec::parse(&text)?;
    let pool = thread_pool()?;
    let doc = pool.install(|| match &cli.command {
        Command::Eigs(_) => cmd_eigs(&spec),
        Command::Verify { corrupt_norm, .. } => cmd_verify(&spec, *corrupt_norm),
        Command::Eval { points, .. } => cmd_eval(&spec, points),
    })?;

    let rendered = match spec.format {
        OutputFormat::Text => doc.to_text(),
        OutputFormat::Csv => doc.to_csv(),
    };
    match &common.out {
        Some(path) => std::fs::write(path, rendered)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{rendered}"),
    }

    match &doc.verification {
        Some(v) if !v.passed => {
            let failed: Vec<String> = v.norms.iter().filter(|r| !r.passed).map(|r| r.n.to_string()).collect();
            eprintln!("heun: verification failed (norm checks failing for n = [{}])", failed.join(", "));
            Ok(EXIT_VERIFICATION)
        }
        _ => Ok(EXIT_OK),
    }
}
