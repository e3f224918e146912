//! Command line front end. `netdof <command> <network.json> [flags]`.

mod commands;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::cuts::{CutError, DEFAULT_REL_TOL};
use crate::galois::GaloisError;
use crate::model::{parse_document, sample_coefficients, validate, Document};
use crate::outage::{Estimator, OutageError};
use crate::relay::RelayError;
use crate::rng::DEFAULT_SEED;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CEILING: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "netdof", version, about = "Diversity and degrees of freedom of relay networks")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Relative singular-value tolerance for complex ranks.
    #[arg(long, global = true, default_value_t = DEFAULT_REL_TOL)]
    pub tol: f64,
    /// Master seed for every random draw.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Worker threads. Results do not depend on this.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Min-cut, diversity and DOF of every flow.
    Analyze {
        network: PathBuf,
        /// Also write the analysis as JSON.
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    /// Lift to a deterministic network over a prime field.
    Lift {
        network: PathBuf,
        #[command(flatten)]
        lift: LiftArgs,
        /// Where to write the lifted network.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Where to write the per-cut certificate CSV.
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Monte Carlo outage curve and diversity slope.
    Simulate {
        network: PathBuf,
        #[command(flatten)]
        sim: SimArgs,
        /// CSV destination; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cross-check min-cut, lift, AF rank and zero-error decoding.
    Verify {
        network: PathBuf,
        /// Use this lifted network instead of lifting afresh.
        #[arg(long)]
        lift: Option<PathBuf>,
        #[command(flatten)]
        lift_args: LiftArgs,
        /// Slots for the AF check; defaults to the flow's hop count.
        #[arg(long = "T", id = "slots")]
        slots: Option<usize>,
        /// Random relay draws per flow.
        #[arg(long, default_value_t = 5)]
        af_trials: usize,
        /// Per-trial AF ranks as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Edge-disjoint paths of every flow, one per line.
    Paths { network: PathBuf },
}

#[derive(Debug, Args)]
pub struct LiftArgs {
    /// Starting prime instead of the size rule.
    #[arg(long)]
    pub prime: Option<u64>,
    /// Draws per prime before moving to a larger one.
    #[arg(long, default_value_t = 20)]
    pub max_attempts: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EstimatorArg {
    Naive,
    Mixture,
}

impl From<EstimatorArg> for Estimator {
    fn from(e: EstimatorArg) -> Self {
        match e {
            EstimatorArg::Naive => Estimator::Naive,
            EstimatorArg::Mixture => Estimator::Mixture,
        }
    }
}

#[derive(Debug, Args)]
pub struct SimArgs {
    /// Target rate in bits per block.
    #[arg(long, default_value_t = 1.0)]
    pub rate: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub snr_min_db: f64,
    #[arg(long, default_value_t = 40.0, allow_hyphen_values = true)]
    pub snr_max_db: f64,
    #[arg(long, default_value_t = 5.0)]
    pub snr_step_db: f64,
    /// Trials per SNR point.
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, value_enum, default_value_t = EstimatorArg::Mixture)]
    pub estimator: EstimatorArg,
    /// Fit window `LO,HI` in dB; chosen from event counts when absent.
    #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
    pub window_db: Option<(f64, f64)>,
    /// Restrict to one flow.
    #[arg(long)]
    pub source: Option<String>,
    #[arg(long)]
    pub sink: Option<String>,
}

fn parse_window(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s.split_once(',').ok_or("expected LO,HI")?;
    let lo: f64 = lo.trim().parse().map_err(|e| format!("{lo}: {e}"))?;
    let hi: f64 = hi.trim().parse().map_err(|e| format!("{hi}: {e}"))?;
    if lo >= hi {
        return Err("LO must be below HI".into());
    }
    Ok((lo, hi))
}

/// A command that could not finish, with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::usage(format!("i/o error: {e}"))
    }
}

impl From<CutError> for Failure {
    fn from(e: CutError) -> Self {
        let code = match e {
            CutError::CeilingExceeded { .. } => EXIT_CEILING,
            _ => EXIT_USAGE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<GaloisError> for Failure {
    fn from(e: GaloisError) -> Self {
        let code = match &e {
            GaloisError::Cut(c) => return c.clone().into(),
            GaloisError::PrimeTooLarge(_) => EXIT_CEILING,
            GaloisError::AttemptsExhausted { .. } => EXIT_CHECK_FAILED,
            _ => EXIT_USAGE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<RelayError> for Failure {
    fn from(e: RelayError) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<OutageError> for Failure {
    fn from(e: OutageError) -> Self {
        match e {
            OutageError::Cut(c) => c.into(),
            e => Failure::usage(e.to_string()),
        }
    }
}

/// Reads, validates and completes a network file: absent coefficients are
/// drawn from `seed`.
pub(crate) fn load(path: &Path, seed: u64) -> Result<Document, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let mut doc = parse_document(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let report = validate(&doc.network);
    if !report.ok {
        return Err(Failure::usage(format!("{}: invalid network\n{report}", path.display())));
    }
    doc.network = sample_coefficients(&doc.network, seed);
    Ok(doc)
}

/// Parses `args` (program name first), runs the command and returns the exit
/// code. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let mut buf = Vec::new();
    let result = match cli.global.threads {
        Some(0) => Err(Failure::usage("--threads must be at least 1")),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| commands::dispatch(&cli, &mut buf)),
            Err(e) => Err(Failure::usage(format!("thread pool: {e}"))),
        },
        None => commands::dispatch(&cli, &mut buf),
    };
    let _ = out.write_all(&buf);
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// Entry point for the binary.
pub fn main_from_env() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
