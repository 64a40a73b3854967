//! `slabk` command-line interface.

mod commands;
mod report;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "slabk", version, about = "Modified k-value analysis of rigid pavement foundations")]
struct Cli {
    /// Section fixture CSV (defaults to $SLABK_FIXTURES/sections.csv or the built-in table)
    #[arg(long, global = true)]
    sections: Option<PathBuf>,
    /// Scenario fixture CSV (defaults to $SLABK_FIXTURES/scenarios.csv or the built-in table)
    #[arg(long, global = true)]
    scenarios: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the forward chain over the factorial grid and write a dataset CSV
    GenDataset(GenDatasetArgs),
    /// Train the 6-H-1 surrogate on a dataset CSV
    Train(TrainArgs),
    /// Report k for one section or input vector
    PredictK(PredictArgs),
    /// Compare full-structure and equivalent-slab basins for every section
    Validate(ValidateArgs),
    /// Bond and moisture sensitivity of k for every section
    Sensitivity(SensitivityArgs),
    /// Fatigue cracking and joint faulting from load-case tables
    Distress(DistressArgs),
    /// AREA-method k from measured or computed deflection basins
    Backcalc(BackcalcArgs),
    /// Surface deflection basin of one section
    Basin(BasinArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
pub enum ForwardKind {
    /// slab plate with interface shear spring on base and subgrade layers
    Layered,
    /// equivalent plate on an elastic half-space
    Halfspace,
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct SolverArgs {
    /// Full-structure forward model
    #[arg(long, value_enum, default_value_t = ForwardKind::Layered)]
    pub forward: ForwardKind,
    /// Subgrade thickness over a rigid stratum, m (0 for a half-space subgrade)
    #[arg(long, default_value_t = 3.0)]
    pub subgrade_depth: f64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
pub enum GridKind {
    Full,
}

#[derive(Args, Debug, Serialize)]
pub struct GenDatasetArgs {
    /// Full 27000-case grid
    #[arg(long, value_enum, conflicts_with = "reduced", required_unless_present = "reduced")]
    pub grid: Option<GridKind>,
    /// Evenly spaced sub-grid with N levels per input
    #[arg(long, value_name = "N")]
    pub reduced: Option<usize>,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[arg(long)]
    #[serde(skip)]
    pub out: PathBuf,
    /// Overwrite existing outputs
    #[arg(long)]
    #[serde(skip)]
    pub force: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
pub enum Trainer {
    /// Levenberg-Marquardt
    Lm,
    /// full-batch gradient descent
    Gd,
}

#[derive(Args, Debug, Serialize)]
pub struct TrainArgs {
    #[arg(long)]
    #[serde(skip)]
    pub data: PathBuf,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    #[serde(skip)]
    pub out: PathBuf,
    /// Hidden units
    #[arg(long, default_value_t = 20)]
    pub hidden: usize,
    #[arg(long, value_enum, default_value_t = Trainer::Lm)]
    pub trainer: Trainer,
    #[arg(long, default_value_t = 1000)]
    pub max_epochs: usize,
    /// Per-epoch log CSV (default: <out>.log.csv)
    #[arg(long)]
    #[serde(skip)]
    pub log: Option<PathBuf>,
    /// Fit plot SVG (default: <out>.fit.svg)
    #[arg(long)]
    #[serde(skip)]
    pub plot: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    pub force: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct SectionArgs {
    /// Section id `state_code-shrp_id`, e.g. 27-4034
    #[arg(long)]
    pub section: Option<String>,
    /// Base moisture scenario (sat, eq, eq80); without it the tabulated base modulus is used
    #[arg(long)]
    pub moisture: Option<String>,
    /// Override the section's degree of bonding
    #[arg(long)]
    pub delta: Option<f64>,
}

#[derive(Args, Debug, Serialize)]
pub struct PredictArgs {
    /// Run the full forward chain
    #[arg(long, conflicts_with = "model", required_unless_present = "model")]
    pub exact: bool,
    /// Trained surrogate model file
    #[arg(long)]
    #[serde(skip)]
    pub model: Option<PathBuf>,
    #[command(flatten)]
    pub target: SectionArgs,
    /// Six SI inputs: h_slab_m,h_base_m,e_slab_pa,e_base_pa,e_subgrade_pa,delta
    #[arg(long, value_delimiter = ',', conflicts_with = "section", required_unless_present = "section")]
    pub inputs: Option<Vec<f64>>,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Report CSV (default: stdout)
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    pub force: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct ValidateArgs {
    /// Use the surrogate for k instead of the exact chain
    #[arg(long)]
    #[serde(skip)]
    pub model: Option<PathBuf>,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[arg(long)]
    #[serde(skip)]
    pub out_dir: PathBuf,
    #[arg(long)]
    #[serde(skip)]
    pub force: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct SensitivityArgs {
    /// Use the surrogate for k instead of the exact chain
    #[arg(long)]
    #[serde(skip)]
    pub model: Option<PathBuf>,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[arg(long)]
    #[serde(skip)]
    pub out_dir: PathBuf,
    #[arg(long)]
    #[serde(skip)]
    pub force: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct DistressArgs {
    /// Fatigue load cases: label,position,applied_n,stress_psi,modulus_rupture_psi
    #[arg(long)]
    #[serde(skip)]
    pub cases: PathBuf,
    /// Faulting schedule: month,faultmax_in,de (blank de needs --section)
    #[arg(long)]
    #[serde(skip)]
    pub faulting: Option<PathBuf>,
    /// Section whose joint deflections supply blank DE cells
    #[arg(long)]
    pub section: Option<String>,
    /// k for the joint deflections, pci (default: exact chain for the section)
    #[arg(long)]
    pub k_pci: Option<f64>,
    /// Load transfer efficiency across the joint
    #[arg(long, default_value_t = 0.5)]
    pub lte: f64,
    /// Wheel load for the joint deflections, lbf
    #[arg(long, default_value_t = 11000.0)]
    pub wheel_load_lbf: f64,
    /// Tire contact radius, in
    #[arg(long, default_value_t = 5.9)]
    pub contact_radius_in: f64,
    #[arg(long, default_value_t = 2.0)]
    pub c1: f64,
    #[arg(long, default_value_t = 1.22)]
    pub c2: f64,
    #[arg(long, default_value_t = 0.005)]
    pub c34: f64,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[arg(long)]
    #[serde(skip)]
    pub out: PathBuf,
    #[arg(long)]
    #[serde(skip)]
    pub force: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct BackcalcArgs {
    /// Measured deflections at 0, 12, 24 and 36 in, inches
    #[arg(long, value_delimiter = ',', conflicts_with = "batch", required_unless_present = "batch")]
    pub deflections_in: Option<Vec<f64>>,
    /// Load of the measured basin, lbf
    #[arg(long, default_value_t = 9000.0)]
    pub load_lbf: f64,
    /// Batch CSV: section_id,moisture,delta (moisture and delta may be blank)
    #[arg(long)]
    #[serde(skip)]
    pub batch: Option<PathBuf>,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Report CSV (default: stdout)
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    pub force: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
pub enum UnitSystem {
    Si,
    Us,
}

#[derive(Args, Debug, Serialize)]
pub struct BasinArgs {
    #[command(flatten)]
    pub target: SectionArgs,
    /// Radial offsets, m (default: the four FWD sensors)
    #[arg(long, value_delimiter = ',')]
    pub offsets: Option<Vec<f64>>,
    /// Plate load, N
    #[arg(long, default_value_t = 40000.0)]
    pub load_n: f64,
    /// Plate radius, m
    #[arg(long, default_value_t = 0.15)]
    pub radius_m: f64,
    #[arg(long, value_enum, default_value_t = UnitSystem::Si)]
    pub units: UnitSystem,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    pub force: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let fx = commands::Fixtures { sections: cli.sections, scenarios: cli.scenarios };
    let res = match cli.command {
        Command::GenDataset(a) => commands::gen_dataset(&a),
        Command::Train(a) => commands::train(&a),
        Command::PredictK(a) => commands::predict_k(&a, &fx),
        Command::Validate(a) => commands::validate(&a, &fx),
        Command::Sensitivity(a) => commands::sensitivity(&a, &fx),
        Command::Distress(a) => commands::distress(&a, &fx),
        Command::Backcalc(a) => commands::backcalc(&a, &fx),
        Command::Basin(a) => commands::basin(&a, &fx),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
