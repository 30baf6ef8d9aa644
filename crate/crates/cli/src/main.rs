mod commands;
mod run_manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

const EXIT_RUNTIME: u8 = 1;
const EXIT_VALIDATION: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] inertia_core::Error),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("validation failed: {0}")]
    Validation(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => EXIT_VALIDATION,
            _ => EXIT_RUNTIME,
        }
    }
}

/// Cumulative production, energy scaling and CO2 commitment toolkit.
#[derive(Debug, Parser)]
#[command(name = "inertia", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Load and validate every series in a manifest; write canonical CSVs.
    Ingest(IngestArgs),
    /// Rebuild annual GDP back to year 1 and the cumulative production series.
    Reconstruct(ReconstructArgs),
    /// Estimate the energy scaling ratio and its sensitivity to initial wealth.
    Calibrate(ReconstructArgs),
    /// Write one of the summary tables (1-5) as CSV and aligned text.
    Tables(TablesArgs),
    /// Run a forward scenario and optionally the committed-equilibrium curve.
    Project(ProjectArgs),
    /// Write every table and the default projection into one text report.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
struct DataArgs {
    /// Series manifest (TOML).
    #[arg(long, default_value = "data/manifest.toml")]
    manifest: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Space {
    Log,
    Linear,
}

#[derive(Debug, Args)]
struct ReconstructionOpts {
    /// Space in which pre-splice benchmarks are interpolated.
    #[arg(long, value_enum, default_value_t = Space::Log)]
    space: Space,
    /// Multiplier applied to the calibrated initial wealth.
    #[arg(long, default_value_t = 1.0)]
    w1_factor: f64,
    /// Population growth rate near year 1, 1/yr.
    #[arg(long, default_value_t = 0.00059)]
    pop_growth: f64,
    /// First year taken from the annual market-exchange-rate record.
    #[arg(long, default_value_t = 1970)]
    splice_year: i32,
}

#[derive(Debug, Args)]
struct IngestArgs {
    #[command(flatten)]
    data: DataArgs,
    /// Output directory.
    #[arg(long, default_value = "out/ingest")]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct ReconstructArgs {
    #[command(flatten)]
    data: DataArgs,
    #[command(flatten)]
    opts: ReconstructionOpts,
    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    EndpointLog,
    OlsLog,
}

#[derive(Debug, Args)]
struct TablesArgs {
    #[command(flatten)]
    data: DataArgs,
    #[command(flatten)]
    opts: ReconstructionOpts,
    /// Table number.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=5))]
    table: u8,
    /// Growth-rate estimator.
    #[arg(long, value_enum, default_value_t = Method::EndpointLog)]
    method: Method,
    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct ProjectArgs {
    #[command(flatten)]
    data: DataArgs,
    #[command(flatten)]
    opts: ReconstructionOpts,
    /// Named initial conditions.
    #[arg(long, default_value = "paper-2017")]
    preset: String,
    /// Carbonization growth rate, 1/yr.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    eta_c: f64,
    /// Override the growth rate of cumulative production, 1/yr.
    #[arg(long, allow_hyphen_values = true)]
    eta_w: Option<f64>,
    /// Years to integrate.
    #[arg(long, default_value_t = 40.0)]
    horizon: f64,
    /// Integration step, years.
    #[arg(long, default_value_t = 0.25, allow_hyphen_values = true)]
    dt: f64,
    /// Sink rate, 1/yr.
    #[arg(long)]
    sigma: Option<f64>,
    /// Start from a perturbation integrated from observed emissions since 1959.
    #[arg(long)]
    spin_up: bool,
    /// Hold production fixed from this year and integrate to the asymptote.
    #[arg(long)]
    freeze_year: Option<f64>,
    /// Years integrated after the freeze.
    #[arg(long, default_value_t = 200.0)]
    tail_years: f64,
    /// Write every integration step rather than whole years only.
    #[arg(long)]
    every_step: bool,
    /// Trajectory CSV.
    #[arg(long, default_value = "out/trajectory.csv")]
    out: PathBuf,
    /// Also write the committed-equilibrium curve.
    #[arg(long)]
    curve: bool,
    /// Smallest cumulative production on the curve, T$2010.
    #[arg(long, default_value_t = 100.0)]
    from_w: f64,
    /// Largest cumulative production on the curve, T$2010.
    #[arg(long, default_value_t = 5000.0)]
    to_w: f64,
    /// Number of curve points.
    #[arg(long, default_value_t = 50)]
    points: usize,
    /// Curve CSV; defaults to `<out stem>_curve.csv` beside the trajectory.
    #[arg(long)]
    curve_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ReportArgs {
    #[command(flatten)]
    data: DataArgs,
    #[command(flatten)]
    opts: ReconstructionOpts,
    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Ingest(a) => commands::ingest(&a),
        Command::Reconstruct(a) => commands::reconstruct(&a),
        Command::Calibrate(a) => commands::calibrate(&a),
        Command::Tables(a) => commands::tables(&a),
        Command::Project(a) => commands::project(&a),
        Command::Report(a) => commands::report(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
