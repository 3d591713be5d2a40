use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::Format;

#[derive(Debug, Parser)]
#[command(
    name = "trimode",
    version,
    about = "Spectra and coherent states of the three-mode Tavis-Cummings model"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Flags every subcommand accepts.
#[derive(Clone, Debug, Default, Args)]
pub struct Common {
    /// Pump frequency.
    #[arg(long, allow_hyphen_values = true)]
    pub w1: Option<f64>,
    /// Signal frequency.
    #[arg(long, allow_hyphen_values = true)]
    pub w2: Option<f64>,
    /// Idler frequency.
    #[arg(long, allow_hyphen_values = true)]
    pub w3: Option<f64>,
    /// Coupling.
    #[arg(long, allow_hyphen_values = true)]
    pub g: Option<f64>,
    /// Flat `key = value` file; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Bogoliubov,
    Su11,
    Nm,
    Su2,
}

impl std::str::FromStr for MethodArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Self as ValueEnum>::from_str(s, false)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DeltaSignArg {
    Paper,
    Alt,
}

impl std::str::FromStr for DeltaSignArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Self as ValueEnum>::from_str(s, false)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GroupArg {
    Su11,
    Su2,
}

impl std::str::FromStr for GroupArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Self as ValueEnum>::from_str(s, false)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact block spectra.
    Spectrum(SpectrumArgs),
    /// Closed-form energies over a range of quantum numbers.
    Analytic(AnalyticArgs),
    /// Run the invariant suites.
    Verify(VerifyArgs),
    /// Number coherent state amplitudes or wavefunction samples.
    Coherent(CoherentArgs),
    /// Closed-form versus exact spectra over a coupling grid.
    Compare(CompareArgs),
}

#[derive(Clone, Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub common: Common,
    /// Smallest charge in each direction.
    #[arg(long)]
    pub qmin: Option<u32>,
    /// Largest charge in each direction.
    #[arg(long)]
    pub qmax: Option<u32>,
    /// A single block; repeatable. Replaces the range.
    #[arg(long, num_args = 2, value_names = ["Q_AB", "Q_AC"], action = clap::ArgAction::Append)]
    pub block: Vec<u32>,
}

#[derive(Clone, Debug, Args)]
pub struct AnalyticArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum)]
    pub method: Option<MethodArg>,
    /// Detuning convention of the `energy` column for `nm`.
    #[arg(long, value_enum)]
    pub delta_sign: Option<DeltaSignArg>,
    /// Each quantum number runs over `0..=nmax`; `m_n` over `-nmax..=nmax`.
    #[arg(long)]
    pub nmax: Option<u32>,
}

#[derive(Clone, Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: Common,
    /// Run only the named suite; repeatable.
    #[arg(long)]
    pub only: Vec<String>,
    /// Flip one sign inside the su(1,1) algebra suite.
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

#[derive(Clone, Debug, Args)]
pub struct CoherentArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum)]
    pub group: Option<GroupArg>,
    #[arg(long)]
    pub n_l: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    pub m_n: Option<i64>,
    /// Real part of the normal-form parameter zeta.
    #[arg(long, allow_hyphen_values = true)]
    pub zeta_re: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub zeta_im: Option<f64>,
    /// Emit wavefunction samples on a polar grid instead of amplitudes.
    #[arg(long)]
    pub grid: bool,
    #[arg(long)]
    pub rho_max: Option<f64>,
    #[arg(long)]
    pub n_rho: Option<usize>,
    #[arg(long)]
    pub n_phi: Option<usize>,
}

#[derive(Clone, Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum)]
    pub method: Option<MethodArg>,
    #[arg(long, value_enum)]
    pub delta_sign: Option<DeltaSignArg>,
    /// Blocks `q_ab, q_ac <= qmax`.
    #[arg(long)]
    pub qmax: Option<u32>,
    /// Comma-separated couplings, each >= 0.
    #[arg(long)]
    pub g_grid: Option<String>,
    /// Comma-separated |beta| values for the expectation matching scan.
    #[arg(long)]
    pub beta_grid: Option<String>,
}
