//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mbm_core::SpeedLaw;

pub(crate) const UNITS: &str = "\
Units: lambda counts particles per unit volume, R is a length, times are in
units where a Brownian particle has variance t per coordinate at time t.
Speeds are lengths per unit time.";

#[derive(Parser, Debug)]
#[command(
    name = "mbm",
    version,
    about = "Detection times in the mobile Boolean model",
    after_help = "Every subcommand also accepts `--config <FILE>`, a file of `key = value` \
                  lines named after the long flags. Flags given on the command line win."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact survival function and hazard rate on a time grid.
    #[command(after_help = UNITS)]
    Analytic(AnalyticArgs),
    /// Large-time asymptote of log P(S > t) for Brownian particles.
    #[command(after_help = UNITS)]
    Asymptote(AsymptoteArgs),
    /// Numerical Laplace inversion of the unit sausage volume V1_d(t).
    #[command(after_help = UNITS)]
    Invert(InvertArgs),
    /// Coefficients of the Bessel polynomial y_n, lowest power first.
    Besselpoly(BesselPolyArgs),
    /// Monte Carlo estimate of the survival function.
    #[command(after_help = UNITS)]
    Simulate(SimulateArgs),
    /// Compare an empirical survival CSV with an analytic one.
    Compare(CompareArgs),
    /// Expected detection time, or its power-law fit in the radius.
    #[command(after_help = UNITS)]
    Expectation(ExpectationArgs),
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Motion {
    Brownian,
    Inertial,
}

#[derive(Args, Debug, Clone)]
pub struct ModelArgs {
    /// Particle motion.
    #[arg(long, value_enum)]
    pub model: Motion,
    /// Space dimension d >= 1.
    #[arg(long)]
    pub dim: u32,
    /// Intensity of the initial Poisson process, particles per unit volume.
    #[arg(long)]
    pub lambda: f64,
    /// Detection radius R = r + r0 (particle plus target radius).
    #[arg(long)]
    pub radius: f64,
    /// Inertial model: every particle moves at this speed.
    #[arg(long, conflicts_with = "speed_law")]
    pub mean_speed: Option<f64>,
    /// Inertial model speed law: const:c, exp:m, pareto:alpha,x_m or
    /// empirical:v1,v2,...
    #[arg(long)]
    pub speed_law: Option<SpeedLaw>,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Output file; `-` writes to standard output.
    #[arg(short, long, default_value = "-")]
    pub output: PathBuf,
}

#[derive(Args, Debug, Clone)]
pub struct GridArgs {
    /// First grid time.
    #[arg(long, default_value_t = 0.0)]
    pub tmin: f64,
    /// Last grid time.
    #[arg(long)]
    pub tmax: f64,
    /// Number of equally spaced grid points.
    #[arg(long, default_value_t = 21)]
    pub points: usize,
}

#[derive(Args, Debug)]
pub struct AnalyticArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Allow Brownian laws in even dimension, computed by Laplace inversion.
    #[arg(long)]
    pub even_numeric: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct AsymptoteArgs {
    /// Space dimension d >= 2.
    #[arg(long)]
    pub dim: u32,
    /// Intensity, particles per unit volume.
    #[arg(long)]
    pub lambda: f64,
    /// Detection radius.
    #[arg(long)]
    pub radius: f64,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct InvertArgs {
    /// Space dimension d >= 1.
    #[arg(long)]
    pub dim: u32,
    /// Comma-separated times.
    #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
    pub t: Vec<f64>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct BesselPolyArgs {
    /// Degree, -1 <= n <= 33.
    #[arg(long, allow_negative_numbers = true)]
    pub n: i32,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Censoring horizon; the grid spans [0, tmax].
    #[arg(long)]
    pub tmax: f64,
    /// Brownian time step, at most tmax/100. Ignored by the inertial model.
    #[arg(long)]
    pub dt: Option<f64>,
    /// Number of independent trials.
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    /// Probability budget for particles outside the window, in (0, 1e-3].
    #[arg(long, default_value_t = 1e-4)]
    pub eps: f64,
    /// Seed of the random streams.
    #[arg(long)]
    pub seed: u64,
    /// Number of equally spaced grid points on [0, tmax].
    #[arg(long, default_value_t = 21)]
    pub points: usize,
    /// Fixed truncation window radius instead of the budget-derived one.
    #[arg(long)]
    pub window: Option<f64>,
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long)]
    pub threads: Option<usize>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    /// CSV with columns t,survival[,stderr,...].
    #[arg(long)]
    pub empirical: PathBuf,
    /// CSV with columns t,survival[,...].
    #[arg(long)]
    pub analytic: PathBuf,
    /// A point agrees when |diff| <= z * SE + bias * analytic.
    #[arg(long, default_value_t = 3.0)]
    pub z_threshold: f64,
    /// Largest fraction of disagreeing points that still passes.
    #[arg(long, default_value_t = 0.1)]
    pub max_fraction: f64,
    /// Allowance for deterministic bias, relative to the analytic value.
    #[arg(long, default_value_t = 0.0)]
    pub bias: f64,
    /// Trial count behind the empirical curve (default: inferred from stderr).
    #[arg(long)]
    pub trials: Option<u64>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct ExpectationArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Allow Brownian laws in even dimension, computed by Laplace inversion.
    #[arg(long)]
    pub even_numeric: bool,
    /// Fit E S ~ c R^-p over these comma-separated radii instead.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub fit_radii: Option<Vec<f64>>,
    #[command(flatten)]
    pub out: OutputArgs,
}
