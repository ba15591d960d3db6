//! `cosetforge`: cyclotomic cosets, BCH codes, duals and claim verification
//! from the command line.
//!
//! Exit codes: 0 success, 1 domain or I/O error, 2 usage error, 3 a
//! verification point failed.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cosetforge::distance::{Method, DEFAULT_BUDGET};
use cosetforge::Family;

#[derive(Debug, Parser)]
#[command(
    name = "cosetforge",
    version,
    about = "Cyclotomic cosets and dually-BCH codes"
)]
struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Cap on worker threads; output does not depend on it
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Cyclotomic cosets modulo n
    Cosets(CosetsArgs),
    /// Construct a BCH code and report its parameters
    Code(CodeCmd),
    /// Report the dual of a BCH code
    Dual(CodeCmd),
    /// Decide whether a narrow-sense BCH code has a BCH dual
    DuallyBch(DuallyArgs),
    /// Check registered claims against brute force
    Verify(VerifyArgs),
    /// List registered claims
    Claims,
}

/// Length selection shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct LengthArgs {
    /// Subfield order, a prime power
    #[arg(long)]
    pub q: u64,

    /// Extension degree (plus and minus families)
    #[arg(long)]
    pub m: Option<u32>,

    /// plus: n=(q^m-1)/(q+1); minus: n=(q^m-1)/(q-1); raw: explicit --n
    #[arg(long, default_value = "plus")]
    pub family: Family,

    /// Code length, required for the raw family
    #[arg(long)]
    pub n: Option<u64>,
}

#[derive(Debug, Args)]
pub struct CosetsArgs {
    #[command(flatten)]
    pub len: LengthArgs,

    /// Only the k largest leaders
    #[arg(long)]
    pub top: Option<usize>,

    /// Only the coset containing this residue
    #[arg(long)]
    pub leader: Option<u64>,

    /// Omit element lists of cosets larger than this
    #[arg(long, default_value_t = 64)]
    pub max_elements: usize,
}

#[derive(Debug, Args)]
pub struct DistanceArgs {
    /// Compute the exact minimum distance
    #[arg(long)]
    pub true_distance: bool,

    /// Largest number of codewords one enumeration may visit
    #[arg(long, env = "COSETFORGE_BUDGET", default_value_t = DEFAULT_BUDGET)]
    pub max_codewords: u64,

    /// How to obtain the distance: auto, direct, dual-macwilliams or bound-only
    #[arg(long, default_value = "auto")]
    pub method: Method,
}

#[derive(Debug, Args)]
pub struct CodeCmd {
    #[command(flatten)]
    pub len: LengthArgs,

    /// Designed distance
    #[arg(long)]
    pub delta: u64,

    /// First exponent of the consecutive run
    #[arg(long, default_value_t = 1)]
    pub b: u64,

    #[command(flatten)]
    pub dist: DistanceArgs,
}

#[derive(Debug, Args)]
pub struct DuallyArgs {
    #[command(flatten)]
    pub len: LengthArgs,

    /// Designed distance
    #[arg(long, required_unless_present = "sweep", conflicts_with = "sweep")]
    pub delta: Option<u64>,

    /// Every designed distance 2..=n
    #[arg(long)]
    pub sweep: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Claim id, e.g. CLM-D1P
    #[arg(long, required_unless_present = "all", conflicts_with = "all")]
    pub claim: Option<String>,

    /// Every claim on its default grid
    #[arg(long)]
    pub all: bool,

    /// Grid override such as q=3,q=4,m=4; repeat keys to list values
    #[arg(long)]
    pub grid: Vec<String>,

    /// Largest code size enumerated by distance sub-checks
    #[arg(long, env = "COSETFORGE_BUDGET", default_value_t = DEFAULT_BUDGET)]
    pub max_codewords: u64,
}

/// A finished command: its report and whether verification failed.
pub struct Outcome {
    pub report: serde_json::Value,
    pub failed: bool,
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()?;
    }
    let outcome = match &cli.command {
        Command::Cosets(a) => commands::cosets(a)?,
        Command::Code(a) => commands::code(a)?,
        Command::Dual(a) => commands::dual(a)?,
        Command::DuallyBch(a) => commands::dually_bch(a)?,
        Command::Verify(a) => commands::verify(a)?,
        Command::Claims => commands::claims(),
    };
    let text = render::render(&outcome.report, cli.format)?;
    match &cli.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| anyhow::anyhow!("cannot write {}: {e}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(outcome)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(o) if o.failed => ExitCode::from(3),
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
