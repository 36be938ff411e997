use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nqr_core::{UnitConvention, ZeemanSign};

#[derive(Debug, Parser)]
#[command(
    name = "nqr",
    version,
    about = "Thermal entanglement of a spin-3/2 quadrupolar nucleus",
    long_about = "Thermal entanglement of a spin-3/2 quadrupolar nucleus.\n\n\
        alpha = gamma*H0/(k_B*T) and beta = eQq/(4I(2I-1) k_B*T) are dimensionless. \
        The four nuclear levels m = 3/2, 1/2, -1/2, -3/2 are read as the two-qubit states |00>, |01>, |10>, |11>."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the thermal density matrix
    State,
    /// Concurrence, entanglement of formation, subsystem entropies and Wootters values at one point
    Measure,
    /// Evaluate the measures over a 1-D or 2-D grid (--grid, once or twice)
    Sweep(SweepArgs),
    /// Concurrence against dimensionless temperature 1/beta at fixed alpha/beta (--ratio)
    ScanTemp(ScanTempArgs),
    /// Smallest beta with concurrence above --threshold, along alpha = ratio*beta
    Critical,
    /// Crystal orientation (theta, phi) that maximizes concurrence at fixed alpha, beta, eta
    Optimize(OptimizeArgs),
    /// Convert between laboratory units (MHz, tesla, kelvin) and alpha, beta
    Convert,
    /// List material presets (built-in plus the file named by NQR_PRESETS)
    Presets,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    /// beta = h*eQq/(k_B*T)
    Full,
    /// beta = h*eQq/(4I(2I-1) k_B*T)
    Reduced,
}

impl From<ConventionArg> for UnitConvention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Full => UnitConvention::Full,
            ConventionArg::Reduced => UnitConvention::Reduced,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SignArg {
    /// H = -alpha*Iz - beta*H_Q in the exponent
    Paper,
    /// H = +alpha*Iz - beta*H_Q in the exponent
    Physical,
}

impl From<SignArg> for ZeemanSign {
    fn from(s: SignArg) -> Self {
        match s {
            SignArg::Paper => ZeemanSign::Paper,
            SignArg::Physical => ZeemanSign::Physical,
        }
    }
}

#[derive(Debug, Args)]
pub struct Common {
    /// Zeeman parameter gamma*H0/(k_B*T) [dimensionless]
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub alpha: Option<f64>,

    /// Quadrupole parameter eQq/(4I(2I-1) k_B*T), or eQq/(k_B*T) under --unit-convention full [dimensionless]
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub beta: Option<f64>,

    /// Asymmetry parameter of the field gradient [dimensionless, 0..1]
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub eta: Option<f64>,

    /// Polar angle of the field in the principal-axes frame [rad, 0..pi; deg with --degrees]
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub theta: Option<f64>,

    /// Azimuthal angle of the field [rad, default 0; deg with --degrees]
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub phi: Option<f64>,

    /// Read --theta, --phi and angle grid bounds in degrees
    #[arg(long, global = true)]
    pub degrees: bool,

    /// Fixed alpha/beta ratio [dimensionless]
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub ratio: Option<f64>,

    /// Material preset label (see `nqr presets`)
    #[arg(long, global = true, value_name = "LABEL")]
    pub material: Option<String>,

    /// Gyromagnetic ratio gamma/2pi [MHz/T]
    #[arg(long = "gamma-mhz-per-t", global = true, value_name = "MHZ_PER_T")]
    pub gamma_mhz_per_t: Option<f64>,

    /// External magnetic field [T]
    #[arg(long = "field-t", global = true, value_name = "TESLA", allow_hyphen_values = true)]
    pub field_t: Option<f64>,

    /// Temperature [K]
    #[arg(long = "temp-k", global = true, value_name = "KELVIN", allow_hyphen_values = true)]
    pub temp_k: Option<f64>,

    /// Energy scale beta is measured against (required for unit conversions)
    #[arg(long = "unit-convention", global = true, value_enum)]
    pub unit_convention: Option<ConventionArg>,

    /// Sign of the Zeeman term in the thermal exponent
    #[arg(long = "zeeman-sign", global = true, value_enum, default_value = "paper")]
    pub zeeman_sign: SignArg,

    /// Level-to-qubit assignment as a permutation of 0,1,2,3 [default 0,1,2,3]
    #[arg(long = "qubit-mapping", global = true, value_name = "P0,P1,P2,P3")]
    pub qubit_mapping: Option<String>,

    /// Output file [default: standard output]
    #[arg(long, short = 'o', global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,

    /// Output format [default: csv for sweep and scan-temp, json otherwise]
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Grid axis AXIS:MIN:MAX:COUNT[:log]; AXIS is alpha, beta, eta, theta, phi or temperature
    /// [dimensionless; angles in rad or deg]; repeat for a 2-D grid
    #[arg(long, global = true, value_name = "AXIS:MIN:MAX:COUNT", allow_hyphen_values = true)]
    pub grid: Vec<String>,

    /// Concurrence threshold of the critical point [dimensionless]
    #[arg(long, global = true, default_value_t = 1e-6)]
    pub threshold: f64,

    /// Width of the final critical-point bracket in beta [dimensionless]
    #[arg(long, global = true, default_value_t = 1e-3)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Maximize over (theta, phi) at every grid point; needs an alpha and a beta grid
    #[arg(long = "optimize-angles")]
    pub optimize_angles: bool,

    /// Coarse theta grid size of the angle optimizer [points]
    #[arg(long = "angle-grid", default_value_t = 181)]
    pub angle_grid: usize,
}

#[derive(Debug, Args)]
pub struct ScanTempArgs {
    /// Smallest beta (hottest point) [dimensionless]
    #[arg(long = "beta-min", default_value_t = 1e-2)]
    pub beta_min: f64,

    /// Largest beta (coldest point) [dimensionless]
    #[arg(long = "beta-max", default_value_t = 1e2)]
    pub beta_max: f64,

    /// Number of log-spaced points [count]
    #[arg(long, default_value_t = 81)]
    pub points: usize,
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    /// Coarse theta grid size [points]
    #[arg(long = "angle-grid", default_value_t = 181)]
    pub angle_grid: usize,
}
