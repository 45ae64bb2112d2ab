//! `lctkit`: singularity exponents, Monte-Carlo fits, the radial Bergman
//! model and the weighted Del Pezzo certifier from the command line.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::Config;
use output::Format;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] lctkit::Error),
    #[error("{0}")]
    Usage(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(lctkit::Error::InsufficientData(_)) => 2,
            CliError::Core(lctkit::Error::Internal(_)) | CliError::Internal(_) => 3,
            CliError::Core(_) | CliError::Usage(_) => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "lctkit",
    version,
    about = "Log canonical thresholds and Kähler–Einstein certificates"
)]
pub struct Cli {
    /// Output format [default: inferred from --out, else json]
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for Monte-Carlo sampling
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// File of key=value lines mirroring the flags; flags on the command line win
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Also write the result to this file
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exponent and Arnold multiplicity from a monomial spec or resolution data
    Lct(LctArgs),
    /// Fit the growth exponent of sublevel volumes by Monte-Carlo sampling
    VolumeFit(VolumeFitArgs),
    /// Fit the family log|z1^m + t z2^p| and check lower semicontinuity at t = 0
    Semicontinuity(SemicontinuityArgs),
    /// Radial Bergman approximation of c·log|z| on the unit disk
    Bergman(BergmanArgs),
    /// Weighted Del Pezzo surfaces
    #[command(subcommand)]
    Fano(FanoCommand),
    /// Same as `fano certify`
    FanoCertify(WeightArgs),
    /// Same as `fano monomials`
    FanoMonomials(WeightArgs),
    /// Same as `fano scan`
    FanoScan(ScanArgs),
}

#[derive(Debug, Subcommand)]
enum FanoCommand {
    /// Orbifold conditions, invariants and a Kähler–Einstein verdict
    Certify(WeightArgs),
    /// All monomials of degree d
    Monomials(WeightArgs),
    /// Certify every weight system in a box
    Scan(ScanArgs),
}

#[derive(Debug, Args)]
struct LctArgs {
    /// e.g. diag:2,3  mono:3,2  dsum(diag:2;diag:3)  ssum(mono:2;mono:2)
    #[arg(long, conflicts_with = "resolution")]
    spec: Option<String>,
    /// JSON file {"divisors":[{"a":..,"b":..,"meets_k":..}, ...]}
    #[arg(long)]
    resolution: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct FitArgs {
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long)]
    rmin: Option<f64>,
    #[arg(long)]
    rmax: Option<f64>,
    #[arg(long)]
    grid: Option<usize>,
    /// Allow a (log 1/r)^(n-1) factor in the volume law
    #[arg(long)]
    log_correction: bool,
}

#[derive(Debug, Args)]
struct VolumeFitArgs {
    /// Monomial spec of the potential, e.g. mono:2,1
    #[arg(long)]
    potential: Option<String>,
    #[command(flatten)]
    fit: FitArgs,
}

#[derive(Debug, Args)]
struct SemicontinuityArgs {
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    p: Option<u32>,
    /// Comma-separated parameter values; must include 0
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    t: Vec<f64>,
    #[arg(long)]
    tolerance: Option<f64>,
    #[command(flatten)]
    fit: FitArgs,
}

#[derive(Debug, Args)]
struct BergmanArgs {
    /// Rational coefficient, e.g. 3/4
    #[arg(long)]
    c: Option<String>,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    kmax: Option<u64>,
    /// Evaluate ψ_m at this |z| in (0, 1)
    #[arg(long)]
    eval: Option<f64>,
}

#[derive(Debug, Args)]
struct WeightArgs {
    /// a0,a1,a2,a3 in increasing order
    #[arg(long, value_delimiter = ',')]
    weights: Vec<u64>,
    #[arg(long)]
    degree: Option<u64>,
}

#[derive(Debug, Args)]
struct ScanArgs {
    #[arg(long)]
    max_weight: Option<u64>,
    /// Fano index k - d
    #[arg(long)]
    index: Option<u64>,
    #[arg(long)]
    min_a0: Option<u64>,
    /// Also certify through the refined criterion
    #[arg(long)]
    refined: bool,
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("LCT_THREADS") else {
        return Ok(());
    };
    let n: usize =
        raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
            CliError::Usage(format!("LCT_THREADS={raw:?} is not a positive integer"))
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Internal(e.to_string()))
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    let cfg = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    let out: Option<PathBuf> = cfg.pick(cli.out.clone(), "out")?;
    let format = match cfg.pick(cli.format, "format")? {
        Some(f) => f,
        None => out
            .as_deref()
            .and_then(Format::from_extension)
            .unwrap_or(Format::Json),
    };
    let rendered = commands::dispatch(&cli, &cfg)?;
    let body = rendered.get(format);
    print!("{body}");
    if let Some(path) = out {
        std::fs::write(&path, &body)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
