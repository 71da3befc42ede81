use clap::{Args, Parser, Subcommand};

use spinvec::sampler::DEFAULT_SAMPLES;
use spinvec::Axis;

pub const DEFAULT_TOLERANCE: f64 = 1e-10;
pub const DEFAULT_SEED: u64 = 42;

/// Vector model of quantum angular momentum (units of ħ).
#[derive(Debug, Parser)]
#[command(name = "spinvec", version)]
pub struct Cli {
    /// Emit one JSON document instead of text tables.
    #[arg(long, global = true)]
    pub json: bool,

    /// Absolute tolerance for numerical checks.
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE)]
    pub tolerance: f64,

    /// Seed for Monte Carlo sampling.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report for a single spin-j particle in |j, m>.
    Single(SpinArgs),
    /// Coupled |j, m> state of N spin-1/2 particles.
    Couple(CoupleArgs),
    /// Monte Carlo measurement of a coupled state against exact values.
    Sample(SampleArgs),
    /// Recompute every reference value and report PASS/FAIL per item.
    PaperTable,
}

/// `j` and `m` either as fractions ("3/2") or as twice-integers.
#[derive(Debug, Clone, Args)]
pub struct SpinArgs {
    /// Total angular momentum, e.g. 1/2, 3/2, 2.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "twice_j")]
    pub j: Option<String>,

    /// Twice the total angular momentum.
    #[arg(long)]
    pub twice_j: Option<i64>,

    /// Magnetic quantum number, e.g. -1/2.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "twice_m")]
    pub m: Option<String>,

    /// Twice the magnetic quantum number.
    #[arg(long, allow_hyphen_values = true)]
    pub twice_m: Option<i64>,
}

#[derive(Debug, Clone, Args)]
pub struct StateArgs {
    /// Number of spin-1/2 particles.
    #[arg(long)]
    pub n: usize,

    #[command(flatten)]
    pub spin: SpinArgs,

    /// Intermediate 2j values after each site, e.g. "1,2,1,0".
    #[arg(long, value_delimiter = ',')]
    pub path: Option<Vec<u32>>,
}

#[derive(Debug, Clone, Args)]
pub struct CoupleArgs {
    #[command(flatten)]
    pub state: StateArgs,

    /// Cross-check every axis with this many Monte Carlo shots.
    #[arg(long)]
    pub sample: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub state: StateArgs,

    /// Measurement axis; all three when omitted.
    #[arg(long)]
    pub axis: Option<Axis>,

    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
}
