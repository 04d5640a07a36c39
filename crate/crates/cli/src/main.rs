//! `resonance-atlas`: resonance tables, counting reports, validation suites
//! and region geometry for the radial step potential.

mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exit status: success.
pub const EXIT_OK: u8 = 0;
/// Exit status: a validation suite or contour cross-check failed.
pub const EXIT_VALIDATION: u8 = 1;
/// Exit status: malformed or out-of-range arguments.
pub const EXIT_BAD_ARGS: u8 = 2;
/// Exit status: a numerical method did not converge.
pub const EXIT_NO_CONVERGENCE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "resonance-atlas", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Table of zeros of every channel on one sheet.
    Resonances(ResonanceArgs),
    /// Counting function on a radius grid with its fitted growth order.
    Count(CountArgs),
    /// Zeros of a single channel.
    Channel(ChannelArgs),
    /// Run a validation suite and print its checks as JSON.
    Validate(ValidateArgs),
    /// Polyline of the upper boundary of the eye region as CSV.
    Region(RegionArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Even space dimension, at least 2.
    #[arg(long, default_value_t = 2)]
    pub dim: u32,
    /// Barrier height.
    #[arg(long, default_value_t = 10.0)]
    pub v0: f64,
    /// Sheet index m (nonzero).
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub sheet: i64,
    /// Largest modulus |lambda| of reported zeros.
    #[arg(long, default_value_t = 60.0)]
    pub rmax: f64,
    /// Margin of the working region around the boundary, in [0.02, 0.3].
    #[arg(long, default_value_t = 0.1)]
    pub eps: f64,
    /// Output file (written atomically); standard output when absent.
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Args, Debug)]
pub struct ResonanceArgs {
    #[command(flatten)]
    pub common: Common,
    /// Depth multiplier of the search strip, > 1.
    #[arg(long, default_value_t = 1.5)]
    pub alpha: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct CountArgs {
    #[command(flatten)]
    pub common: Common,
    /// Number of radii on the geometric grid.
    #[arg(long, default_value_t = 20)]
    pub grid_points: usize,
    /// Smallest grid radius; defaults to rmax / 3.
    #[arg(long)]
    pub rmin: Option<f64>,
}

#[derive(Args, Debug)]
pub struct ChannelArgs {
    #[command(flatten)]
    pub common: Common,
    /// Angular momentum of the channel.
    #[arg(long)]
    pub ell: u32,
    /// Depth multiplier of the covering box, > 1.
    #[arg(long, default_value_t = 1.5)]
    pub alpha: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Compare the Newton count with an argument-principle count.
    #[arg(long)]
    pub contour_check: bool,
}

#[derive(Args, Debug)]
pub struct ValidateArgs {
    /// One of special, maps, asymptotics, rouche, symmetry, freecase, oracle3d.
    #[arg(long)]
    pub suite: String,
    /// Barrier height; 0 for freecase, 10 otherwise when absent.
    #[arg(long)]
    pub v0: Option<f64>,
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Args, Debug)]
pub struct RegionArgs {
    /// Number of polyline points, at least 2.
    #[arg(long, default_value_t = 201)]
    pub samples: usize,
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("RESONANCE_ATLAS_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("RESONANCE_ATLAS_THREADS must be a positive integer, got {raw:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_BAD_ARGS } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(EXIT_BAD_ARGS);
    }
    let outcome = match cli.command {
        Command::Resonances(a) => commands::resonances(&a),
        Command::Count(a) => commands::count(&a),
        Command::Channel(a) => commands::channel(&a),
        Command::Validate(a) => commands::validate(&a),
        Command::Region(a) => commands::region(&a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
