//! `qdilog`: mutate seeds, search periods, and verify the dilogarithm
//! identities attached to them.
//!
//! Exit codes: 0 pass, 2 not a period, 3 failed check or numerical error,
//! 4 parse error, 1 anything else.

mod commands;
mod report;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;

use qdilog::{Builtin, Error, ExchangeMatrix, MutationSchedule, SeedSpec};
use report::{Format, Report};

#[derive(Parser, Debug)]
#[command(name = "qdilog", version, about = "Cluster periods and dilogarithm identities")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the numeric and tropical trajectory along the schedule.
    Mutate {
        #[command(flatten)]
        seed: SeedArgs,
        /// Initial y-values, comma separated (default: all 1).
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        y: Option<Vec<f64>>,
    },
    /// Verify an identity attached to the schedule.
    Verify {
        #[arg(value_enum)]
        kind: VerifyKind,
        #[command(flatten)]
        seed: SeedArgs,
        #[command(flatten)]
        opts: VerifyOpts,
    },
    /// Breadth-first search for periods of the seed's exchange matrix.
    Search {
        #[command(flatten)]
        seed: SeedArgs,
        /// Maximal sequence length.
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    /// Evaluate Faddeev's quantum dilogarithm or check its properties.
    Phib(PhibArgs),
}

#[derive(Args, Debug, Clone)]
pub struct SeedArgs {
    /// Built-in fixture: A1, A2, A2-principal (default A2).
    #[arg(long, conflicts_with = "seed_file")]
    builtin: Option<String>,
    /// JSON seed file `{"n", "B", "sequence", "nu"}` with 1-based indices.
    #[arg(long)]
    seed_file: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyKind {
    Classical,
    QuantumTropical,
    QuantumUniversal,
    Shuffle,
    Dual,
    Saddle,
    SaddleLambda,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyOpts {
    /// Truncation order of the torus series (default 8 for rank ≤ 2, else 6).
    #[arg(short = 'N', long = "order")]
    pub order: Option<usize>,
    /// Tolerance for numerical checks.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Number of random trials.
    #[arg(long)]
    pub trials: Option<usize>,
    /// Deformation parameter for `saddle-lambda`, e.g. `1.05+0.087i`.
    #[arg(long)]
    pub lambda: Option<Complex64>,
    /// Fixed initial point (y for classical, u(1) for saddle) instead of random draws.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub y: Option<Vec<f64>>,
    /// Seed of the random trials (default: from the clock); always reported.
    #[arg(long)]
    pub rng_seed: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PhibCheck {
    Unitarity,
    Recurrence,
    Duality,
    Product,
    Asymptotics,
}

#[derive(Args, Debug, Clone)]
pub struct PhibArgs {
    /// Parameter `b` (complex allowed, e.g. `0.9+0.43i`).
    #[arg(long, allow_negative_numbers = true)]
    pub b: Option<Complex64>,
    /// Argument `z`.
    #[arg(long, allow_negative_numbers = true)]
    pub z: Option<Complex64>,
    /// Property to check instead of plain evaluation.
    #[arg(long, value_enum)]
    pub check: Option<PhibCheck>,
    /// Sample grid; only `default` is defined.
    #[arg(long)]
    pub grid: Option<String>,
    /// Tolerance for the check.
    #[arg(long)]
    pub tol: Option<f64>,
}

/// Error with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotAPeriod { .. } => 2,
            Error::Parse(_) => 4,
            Error::Domain(_)
            | Error::NonPositive { .. }
            | Error::MixedSignCVector(_)
            | Error::ZeroCVector
            | Error::NonInvertible
            | Error::NonTruncating(_)
            | Error::QNotInDisk(_)
            | Error::PoleHit(_)
            | Error::QuadratureFailure { .. }
            | Error::BranchProximity { .. }
            | Error::Overflow(_) => 3,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

pub fn parse_error(msg: impl Into<String>) -> Failure {
    Failure { code: 4, message: msg.into() }
}

/// Resolved seed together with its JSON description.
pub struct LoadedSeed {
    pub matrix: ExchangeMatrix,
    pub schedule: MutationSchedule,
    pub spec: SeedSpec,
    pub name: String,
}

impl LoadedSeed {
    pub fn describe(&self) -> serde_json::Value {
        json!({ "name": self.name, "spec": self.spec })
    }
}

pub fn load_seed(args: &SeedArgs) -> Result<LoadedSeed, Failure> {
    let (spec, name) = match (&args.builtin, &args.seed_file) {
        (_, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure { code: 1, message: format!("{}: {e}", path.display()) })?;
            (SeedSpec::from_json(&text)?, path.display().to_string())
        }
        (Some(b), None) => {
            let b: Builtin = b.parse()?;
            (b.spec(), b.name().to_string())
        }
        (None, None) => (Builtin::A2.spec(), Builtin::A2.name().to_string()),
    };
    let (matrix, schedule) = spec.resolve()?;
    Ok(LoadedSeed { matrix, schedule, spec, name })
}

pub fn rng_seed(given: Option<u64>) -> u64 {
    given.unwrap_or_else(|| {
        SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_nanos() as u64).unwrap_or(0)
    })
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    match &cli.command {
        Command::Mutate { seed, y } => commands::mutate(&load_seed(seed)?, y.as_deref()),
        Command::Verify { kind, seed, opts } => verify::run(*kind, &load_seed(seed)?, opts),
        Command::Search { seed, depth } => commands::search(&load_seed(seed)?, *depth),
        Command::Phib(args) => commands::phib(args),
    }
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Mutate { .. } => "mutate".into(),
        Command::Verify { kind, .. } => {
            format!("verify {}", kind.to_possible_value().expect("no skipped variants").get_name())
        }
        Command::Search { .. } => "search".into(),
        Command::Phib(_) => "phib".into(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 4 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.render(cli.format));
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            if cli.format == Format::Json {
                let body = json!({
                    "command": command_name(&cli.command),
                    "error": f.message,
                    "exit_code": f.code,
                });
                println!("{}", serde_json::to_string_pretty(&body).expect("serializable"));
            }
            ExitCode::from(f.code)
        }
    }
}
