//! Command-line front end: walk experiments, model comparisons, noise
//! parameter optimization, calibration templates.
//!
//! Exit codes: 0 ok, 1 simulation/validation failure, 2 usage/IO error.

mod common;
mod compare;
mod gencalib;
mod optimize;
mod output;
mod walk;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "noisim",
    version,
    about = "Noisy quantum-circuit simulation, walk benchmarks and noise-parameter fitting"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate a discrete-time quantum walk under a noise model.
    Walk(WalkArgs),
    /// Compare the output distributions of several model variants.
    Compare(CompareArgs),
    /// Fit noise parameters to a target distribution with the GA.
    Optimize(OptimizeArgs),
    /// Write a template calibration file with average parameters.
    GenCalib(GenCalibArgs),
}

#[derive(Args, Clone)]
struct WalkArgs {
    /// Number of walk states N (power of two, at least 4).
    #[arg(long)]
    states: usize,
    /// Number of coin flips.
    #[arg(long, default_value_t = 1)]
    steps: usize,
    /// Starting position.
    #[arg(long, default_value_t = 0)]
    start: usize,
    /// Noise model variant.
    #[arg(long, value_enum, default_value_t = ModelArg::Ideal)]
    model: ModelArg,
    /// Calibration file (required for noisy variants).
    #[arg(long)]
    calib: Option<std::path::PathBuf>,
    /// Sample this many shots in addition to the exact distribution.
    #[arg(long, conflicts_with = "exact")]
    shots: Option<u64>,
    /// Exact mode only (the default when --shots is absent).
    #[arg(long)]
    exact: bool,
    /// RNG seed for shot sampling.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Replace the calibration coupling with all-to-all connectivity.
    #[arg(long)]
    assume_full_connectivity: bool,
    /// Thermal time accrued by two-qubit-gate controls.
    #[arg(long, value_enum, default_value_t = ControlTrcArg::Duration)]
    control_trc: ControlTrcArg,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: std::path::PathBuf,
}

#[derive(Args, Clone)]
struct CompareArgs {
    /// Number of walk states (omit when using --circuit).
    #[arg(long, conflicts_with = "circuit")]
    states: Option<usize>,
    #[arg(long, default_value_t = 1)]
    steps: usize,
    #[arg(long, default_value_t = 0)]
    start: usize,
    /// Circuit file in the line-based text format.
    #[arg(long)]
    circuit: Option<std::path::PathBuf>,
    /// Comma-separated variants to compare (at least two).
    #[arg(long, value_delimiter = ',', default_values_t = vec![
        ModelArg::Unm, ModelArg::Dspam, ModelArg::Trm, ModelArg::Sdm, ModelArg::Ideal
    ])]
    models: Vec<ModelArg>,
    #[arg(long)]
    calib: Option<std::path::PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    assume_full_connectivity: bool,
    #[arg(long, value_enum, default_value_t = ControlTrcArg::Duration)]
    control_trc: ControlTrcArg,
    #[arg(long, default_value = ".")]
    out: std::path::PathBuf,
}

#[derive(Args, Clone)]
struct OptimizeArgs {
    /// Number of walk states (omit when using --circuit).
    #[arg(long, conflicts_with = "circuit")]
    states: Option<usize>,
    #[arg(long, default_value_t = 1)]
    steps: usize,
    #[arg(long, default_value_t = 0)]
    start: usize,
    /// Circuit file in the line-based text format.
    #[arg(long)]
    circuit: Option<std::path::PathBuf>,
    /// Target distribution CSV (outcome,probability).
    #[arg(long)]
    target: std::path::PathBuf,
    /// Calibration file with the starting parameters.
    #[arg(long)]
    calib: std::path::PathBuf,
    #[arg(long, default_value_t = 50)]
    generations: usize,
    #[arg(long, default_value_t = 30)]
    population: usize,
    /// Which parameters the genome carries.
    #[arg(long, value_enum, default_value_t = ModeArg::Rates)]
    mode: ModeArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    assume_full_connectivity: bool,
    #[arg(long, value_enum, default_value_t = ControlTrcArg::Duration)]
    control_trc: ControlTrcArg,
    #[arg(long, default_value = ".")]
    out: std::path::PathBuf,
}

#[derive(Args, Clone)]
struct GenCalibArgs {
    /// Number of qubits.
    #[arg(long)]
    qubits: usize,
    /// Coupling graph of the template.
    #[arg(long, value_enum, default_value_t = CouplingArg::Linear)]
    coupling: CouplingArg,
    /// Output file.
    #[arg(long, default_value = "calibration.json")]
    out: std::path::PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    Unm,
    Dspam,
    Trm,
    Sdm,
    Ideal,
}

impl ModelArg {
    fn variant(self) -> noisim::Variant {
        match self {
            ModelArg::Unm => noisim::Variant::Unm,
            ModelArg::Dspam => noisim::Variant::Dspam,
            ModelArg::Trm => noisim::Variant::Trm,
            ModelArg::Sdm => noisim::Variant::Sdm,
            ModelArg::Ideal => noisim::Variant::Ideal,
        }
    }
}

impl std::fmt::Display for ModelArg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.variant().name())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ControlTrcArg {
    Duration,
    Zero,
}

impl ControlTrcArg {
    fn control_trc(self) -> noisim::ControlTrc {
        match self {
            ControlTrcArg::Duration => noisim::ControlTrc::FullDuration,
            ControlTrcArg::Zero => noisim::ControlTrc::Zero,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Rates,
    Decoherence,
}

impl ModeArg {
    fn mode(self) -> noisim::OptimizeMode {
        match self {
            ModeArg::Rates => noisim::OptimizeMode::RatesOnly,
            ModeArg::Decoherence => noisim::OptimizeMode::WithDecoherence,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CouplingArg {
    Linear,
    Full,
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Walk(args) => walk::run(&args),
        Command::Compare(args) => compare::run(&args),
        Command::Optimize(args) => optimize::run(&args),
        Command::GenCalib(args) => gencalib::run(&args),
    };
    if let Err(err) = result {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}
