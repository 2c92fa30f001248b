//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mdl_core::algos::{Algorithm, Estimator};
use mdl_core::eval::GeneratorTag;
use mdl_core::model::ClassFamily;

#[derive(Debug, Parser)]
#[command(
    name = "mdl",
    version,
    about = "Multi-distribution learning experiments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a seeded instance and write it as JSON
    Gen(GenArgs),
    /// Run one algorithm once and report it
    Solve(SolveArgs),
    /// Run a grid of epsilon or k values over several seeds, one CSV row each
    Sweep(SweepArgs),
    /// Estimate how often a run misses epsilon-optimality
    Audit(AuditArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum AlgoArg {
    Fast,
    Finite,
    CoverFinite,
    Mid,
    Personalized,
}

impl From<AlgoArg> for Algorithm {
    fn from(a: AlgoArg) -> Self {
        match a {
            AlgoArg::Fast => Algorithm::Fast,
            AlgoArg::Finite => Algorithm::Finite,
            AlgoArg::CoverFinite => Algorithm::CoverFinite,
            AlgoArg::Mid => Algorithm::Mid,
            AlgoArg::Personalized => Algorithm::Personalized,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum FamilyArg {
    Random,
    Realizable,
    OpposedLabels,
    SharedBayes,
}

impl From<FamilyArg> for GeneratorTag {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Random => GeneratorTag::Random,
            FamilyArg::Realizable => GeneratorTag::Realizable,
            FamilyArg::OpposedLabels => GeneratorTag::OpposedLabels,
            FamilyArg::SharedBayes => GeneratorTag::SharedBayes,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum ClassArg {
    Explicit,
    Thresholds,
    Intervals,
    Singletons,
}

impl From<ClassArg> for ClassFamily {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::Explicit => ClassFamily::Explicit,
            ClassArg::Thresholds => ClassFamily::Thresholds,
            ClassArg::Intervals => ClassFamily::Intervals,
            ClassArg::Singletons => ClassFamily::Singletons,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum EstimatorArg {
    Unbiased,
    Literal,
}

impl From<EstimatorArg> for Estimator {
    fn from(e: EstimatorArg) -> Self {
        match e {
            EstimatorArg::Unbiased => Estimator::Unbiased,
            EstimatorArg::Literal => Estimator::Literal,
        }
    }
}

/// Generator flags shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct SpecArgs {
    /// Generator family
    #[arg(long, value_enum, default_value_t = FamilyArg::Random)]
    pub family: FamilyArg,
    /// Domain size
    #[arg(long, default_value_t = 8)]
    pub n: usize,
    /// Number of distributions
    #[arg(long, default_value_t = 4)]
    pub k: usize,
    /// Hypotheses in an explicit class
    #[arg(long, default_value_t = 16)]
    pub class_size: usize,
    /// Support cells per distribution (defaults to n)
    #[arg(long)]
    pub support: Option<usize>,
    /// Hypothesis class family
    #[arg(long, value_enum, default_value_t = ClassArg::Explicit)]
    pub class_family: ClassArg,
}

#[derive(Debug, Clone, Args)]
pub struct InstanceArgs {
    /// Instance JSON file; overrides the generator flags
    #[arg(long, conflicts_with = "suite")]
    pub instance: Option<PathBuf>,
    /// Draw a fresh instance from the standard random suite for every trial
    #[arg(long)]
    pub suite: bool,
    /// Seed for the generated instance (defaults to --seed)
    #[arg(long)]
    pub instance_seed: Option<u64>,
    #[command(flatten)]
    pub spec: SpecArgs,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Algorithm to run
    #[arg(long, value_enum)]
    pub algo: AlgoArg,
    #[arg(long, default_value_t = 0.2)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 0.2)]
    pub delta: f64,
    /// Multiplicative slack; the fast algorithm uses 0.25 when unset
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Override a constant, as in `--constants c1=8` (repeatable)
    #[arg(long = "constants", value_name = "KEY=VAL")]
    pub constants: Vec<String>,
    /// Adversary estimator for the mid algorithm
    #[arg(long, value_enum)]
    pub estimator: Option<EstimatorArg>,
    /// Record wall-clock time (makes outputs non-reproducible)
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; JSON goes to stdout when unset
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub run: RunArgs,
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Write the JSON run report here
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write the CSV row here instead of stdout
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub run: RunArgs,
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Epsilon grid (defaults to --epsilon)
    #[arg(long, value_delimiter = ',')]
    pub epsilons: Vec<f64>,
    /// Grid over the number of distributions (generated instances only)
    #[arg(long, value_delimiter = ',')]
    pub ks: Vec<usize>,
    /// Seeds per cell
    #[arg(long, default_value_t = 1)]
    pub seeds: usize,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// CSV output file; stdout when unset
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct AuditArgs {
    #[command(flatten)]
    pub run: RunArgs,
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[arg(long, default_value_t = 40)]
    pub trials: usize,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Summary JSON file; stdout when unset
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write one CSV row per trial here
    #[arg(long)]
    pub csv: Option<PathBuf>,
}
