//! Command-line front end: verification reports, CSV samples and SVG plots.

pub mod plot;
pub mod sample;
pub mod svg;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use thiserror::Error;

use dancing_core::verify::{run_suite, Suite, VerificationReport};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("I/O failure: {0}")]
    Io(#[from] std::io::Error),
    #[error("CSV failure: {0}")]
    Csv(#[from] csv::Error),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Core(#[from] dancing_core::Error),
}

/// Exit status when a verification run records failures.
pub const EXIT_FAILURES: u8 = 1;
/// Exit status for bad arguments, unreadable inputs or unwritable outputs.
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "dancing", version, about = "Numerical certification of dancing path geometries")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a verification suite and write its JSON report.
    Verify {
        /// flat-metric, rigidity-identity, sextic, ode or conics
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of samples (defaults to the acceptance size of the suite)
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Report path; the report goes to stdout when omitted
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Render a configuration as SVG.
    Plot {
        /// dancing-pair, alpha-surface, ellipse-dance or conic-dance
        kind: String,
        /// Section coordinate for ellipse-dance
        #[arg(long, conflicts_with = "pair_file")]
        b: Option<f64>,
        /// Numbers describing the configuration (see README)
        #[arg(long)]
        pair_file: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write seeded random samples as CSV.
    Sample {
        /// flat-pairs, dancing-quadruples, conic-pairs, ellipse-states, null-tangents or paths
        kind: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

/// One-line summary of a report.
pub fn summary(r: &VerificationReport) -> String {
    format!(
        "{} seed={} samples={} tol={:e} maxResidual={:e} failures={} -> {}",
        r.suite,
        r.seed,
        r.samples,
        r.tol,
        r.max_residual,
        r.failures.len(),
        if r.passed() { "PASS" } else { "FAIL" }
    )
}

/// Executes a command; returns the process exit status.
pub fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Verify {
            suite,
            seed,
            samples,
            tol,
            json,
        } => {
            let suite: Suite = suite.parse()?;
            if tol.is_nan() || tol <= 0.0 {
                return Err(CliError::InvalidParams(format!("tolerance must be positive, got {tol}")));
            }
            let report = run_suite(suite, seed, samples.unwrap_or(suite.default_samples()), tol);
            match json {
                Some(path) => {
                    std::fs::write(&path, report.to_json())?;
                    println!("{}", summary(&report));
                }
                None => print!("{}", report.to_json()),
            }
            Ok(if report.passed() { 0 } else { EXIT_FAILURES })
        }
        Command::Plot {
            kind,
            b,
            pair_file,
            out,
        } => {
            let values = pair_file.as_deref().map(plot::read_pair_file).transpose()?;
            plot::plot(&kind, &plot::PlotParams { b, values }, &out)?;
            Ok(0)
        }
        Command::Sample { kind, seed, count, out } => {
            sample::sample(&kind, seed, count, &out)?;
            Ok(0)
        }
    }
}
