use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser, Serialize)]
#[command(
    name = "rumor-inspect",
    version,
    about = "Steady states, dynamics and inspection budgets for a two-message diffusion model"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Command {
    /// Steady-state prevalences for one parameter point.
    Steady(SteadyArgs),
    /// Integrate the ODE system and optionally check global stability.
    Dynamics(DynamicsArgs),
    /// Steady states (or optima, for the A axis) along a parameter grid.
    Sweep(SweepArgs),
    /// Optimal inspection under a budget.
    Optimize(OptimizeArgs),
    /// Closed-form and numerically located thresholds.
    Thresholds(ThresholdsArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct ModelArgs {
    /// Diffusion rate nu*k/delta. Excludes --nu/--k/--delta.
    #[arg(long, conflicts_with_all = ["nu", "k", "delta"])]
    pub lambda: Option<f64>,
    /// Contact success rate; needs --k and --delta.
    #[arg(long, requires_all = ["k", "delta"])]
    pub nu: Option<f64>,
    /// Degree; needs --nu and --delta.
    #[arg(long, requires_all = ["nu", "delta"])]
    pub k: Option<f64>,
    /// Replacement rate; needs --nu and --k.
    #[arg(long, requires_all = ["nu", "k"])]
    pub delta: Option<f64>,
    /// Fraction of truth-biased agents.
    #[arg(long)]
    pub x: Option<f64>,
}

#[derive(Debug, Args, Serialize)]
pub struct AllocArgs {
    /// Common inspection rate.
    #[arg(long, conflicts_with_all = ["alpha0", "alpha1"])]
    pub alpha: Option<f64>,
    /// Inspection rate of truth-biased agents; needs --alpha1.
    #[arg(long, requires = "alpha1")]
    pub alpha0: Option<f64>,
    /// Inspection rate of rumor-biased agents; needs --alpha0.
    #[arg(long, requires = "alpha0")]
    pub alpha1: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ObjectiveArg {
    RumorMin,
    Truth,
    TruthTargeted,
    Platform,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum Axis {
    #[value(name = "alpha")]
    #[serde(rename = "alpha")]
    Alpha,
    #[value(name = "lambda")]
    #[serde(rename = "lambda")]
    Lambda,
    #[value(name = "x")]
    #[serde(rename = "x")]
    X,
    #[value(name = "A")]
    #[serde(rename = "A")]
    Budget,
}

#[derive(Debug, Args, Serialize)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write here instead of stdout.
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    #[serde(skip)]
    pub jobs: Option<usize>,
    /// Fixed-point bisection tolerance.
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
}

#[derive(Debug, Args, Serialize)]
#[command(allow_negative_numbers = true)]
pub struct SteadyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub alloc: AllocArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args, Serialize)]
#[command(allow_negative_numbers = true)]
pub struct DynamicsArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub alloc: AllocArgs,
    /// Random interior starts for the global-stability check.
    #[arg(long)]
    pub starts: Option<usize>,
    /// Seed for the random starts.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Initial fraction in every group.
    #[arg(long, default_value_t = 1e-3)]
    pub init: f64,
    /// Step size.
    #[arg(long, default_value_t = 0.01)]
    pub dt: f64,
    /// Horizon (default 1e4/delta).
    #[arg(long = "t-max")]
    pub t_max: Option<f64>,
    /// Time between trajectory rows.
    #[arg(long = "sample-interval", default_value_t = 1.0)]
    pub sample_interval: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args, Serialize)]
#[command(allow_negative_numbers = true)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub axis: Axis,
    #[arg(long)]
    pub start: Option<f64>,
    #[arg(long)]
    pub stop: Option<f64>,
    /// Grid points, endpoints included.
    #[arg(long, default_value_t = 101)]
    pub steps: usize,
    /// Objective for the A axis.
    #[arg(long, value_enum)]
    pub objective: Option<ObjectiveArg>,
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub alloc: AllocArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args, Serialize)]
#[command(allow_negative_numbers = true)]
pub struct OptimizeArgs {
    #[arg(long, value_enum)]
    pub objective: ObjectiveArg,
    /// Inspection budget.
    #[arg(long = "A")]
    #[serde(rename = "A")]
    pub budget: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args, Serialize)]
#[command(allow_negative_numbers = true)]
pub struct ThresholdsArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

impl Command {
    pub fn output(&self) -> &OutputArgs {
        match self {
            Command::Steady(a) => &a.output,
            Command::Dynamics(a) => &a.output,
            Command::Sweep(a) => &a.output,
            Command::Optimize(a) => &a.output,
            Command::Thresholds(a) => &a.output,
        }
    }
}
