//! Batch front-end: phase-shift curves, critical-coupling tables, resonance
//! scans and wave-function dumps, emitted as plot-ready CSV with a full
//! config echo in the header.
//!
//! Exit codes: 0 success, 2 configuration error, 3 numerical failure.

mod commands;
mod output;
mod tabulated;

use std::fmt;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const HBARC_MEV_FM: f64 = 197.3269631;

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numerical(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "configuration error: {msg}"),
            CliError::Numerical(msg) => write!(f, "numerical failure: {msg}"),
        }
    }
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }
}

impl From<partialwave::Error> for CliError {
    fn from(e: partialwave::Error) -> Self {
        match e {
            partialwave::Error::InvalidConfig { .. }
            | partialwave::Error::InvalidPotential { .. }
            | partialwave::Error::BadChannelLabel(_)
            | partialwave::Error::ZeroChi => CliError::Config(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Numerical(format!("io: {e}"))
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "partialwave",
    about = "Partial-wave phase shifts, critical couplings and resonances \
             for spherical wells and barriers",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Phase-shift curve over an energy or momentum grid.
    PhaseShift(PhaseShiftArgs),
    /// Table of critical/supercritical couplings.
    Critical(CriticalArgs),
    /// C(v) or C(p) resonance scan with a peak summary sidecar.
    ResonanceScan(ResonanceScanArgs),
    /// Radial wave-function dump at a single scattering point.
    Wavefunction(WavefunctionArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Schrodinger,
    Dirac,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ShapeArg {
    Square,
    Gaussian,
    Exponential,
    WoodsSaxon,
    Tabulated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SignArg {
    Well,
    Barrier,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum UnitsArg {
    /// hbar = c = 1; all inputs share one energy unit.
    Natural,
    /// Energies/masses in MeV, lengths in fm (converted via hbar c).
    MevFm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ScanAxis {
    /// Total energy (Dirac) or kinetic energy (Schrodinger).
    E,
    /// External momentum.
    K,
    /// Incident momentum (alias of k for scans of the integrator).
    P,
    /// Coupling strength.
    V,
}

/// Flags shared by everything that builds a potential.
#[derive(Args, Debug, Clone)]
pub struct PotentialArgs {
    /// Shape function w(r/a).
    #[arg(long, value_enum, default_value = "square")]
    pub shape: ShapeArg,
    /// Two-column file (x, w) for --shape tabulated.
    #[arg(long)]
    pub shape_file: Option<std::path::PathBuf>,
    /// Attractive well or repulsive barrier.
    #[arg(long, value_enum, default_value = "well")]
    pub sign: SignArg,
    /// Coupling strength v >= 0 (well depth / barrier height).
    #[arg(long, default_value_t = 0.0)]
    pub depth: f64,
    /// Range parameter a.
    #[arg(long)]
    pub range: f64,
    /// Particle mass m.
    #[arg(long)]
    pub mass: f64,
    /// Unit system for inputs and outputs.
    #[arg(long, value_enum, default_value = "natural")]
    pub units: UnitsArg,
}

#[derive(Args, Debug)]
pub struct PhaseShiftArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    #[arg(long, value_enum, default_value = "dirac")]
    pub model: Model,
    /// Partial wave: chi or a label like s1/2 (Dirac), l (Schrodinger).
    #[arg(long)]
    pub channel: String,
    /// Scan axis: e (default) or k.
    #[arg(long, value_enum, default_value = "e")]
    pub scan: ScanAxis,
    #[arg(long)]
    pub from: f64,
    #[arg(long)]
    pub to: f64,
    #[arg(long)]
    pub points: usize,
    /// Fit-node index for non-square shapes.
    #[arg(long, default_value_t = 20)]
    pub nu: u32,
    /// Integration step override (in length units).
    #[arg(long)]
    pub step: Option<f64>,
    /// Output CSV path (stdout when omitted).
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Args, Debug)]
pub struct CriticalArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    /// Number of rows (root ordinals) per column.
    #[arg(long, default_value_t = 3)]
    pub count: u32,
    /// Well depths at E = +-m instead of the barrier/well sector layout.
    #[arg(long, default_value_t = false)]
    pub wells_only: bool,
    /// Integration step override for non-square shapes.
    #[arg(long)]
    pub step: Option<f64>,
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Args, Debug)]
pub struct ResonanceScanArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    /// Partial wave: chi or a label like s1/2.
    #[arg(long)]
    pub channel: String,
    /// Scan axis: v (needs --momentum) or p (needs --depth).
    #[arg(long, value_enum)]
    pub scan: ScanAxis,
    #[arg(long)]
    pub from: f64,
    #[arg(long)]
    pub to: f64,
    #[arg(long)]
    pub points: usize,
    /// Fixed incident momentum for coupling scans.
    #[arg(long)]
    pub momentum: Option<f64>,
    #[arg(long, default_value_t = 20)]
    pub nu: u32,
    #[arg(long)]
    pub step: Option<f64>,
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Args, Debug)]
pub struct WavefunctionArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    /// Partial wave: chi or a label like s1/2.
    #[arg(long)]
    pub channel: String,
    /// Incident momentum of the scattering point.
    #[arg(long)]
    pub momentum: f64,
    #[arg(long, default_value_t = 20)]
    pub nu: u32,
    #[arg(long)]
    pub step: Option<f64>,
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::PhaseShift(args) => commands::phase_shift(&args),
        Command::Critical(args) => commands::critical(&args),
        Command::ResonanceScan(args) => commands::resonance_scan(&args),
        Command::Wavefunction(args) => commands::wavefunction(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e @ CliError::Config(_)) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
        Err(e @ CliError::Numerical(_)) => {
            eprintln!("{e}");
            ExitCode::from(3)
        }
    }
}
