use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pcircle::PathMode;

pub const THREADS_ENV: &str = "PCIRCLE_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "pcircle",
    version,
    about = "Lattice points in p-circles, generalized Bessel functions and Hardy-type sums",
    long_about = "Lattice points in p-circles |x1|^p + |x2|^p < r^p with p = 2/q, \
                  generalized Bessel functions, Erdelyi-Kober operators and \
                  Hardy-type series for the lattice error term.",
    after_help = "Environment:\n  PCIRCLE_THREADS  worker threads when neither --threads nor the config file sets them\n\n\
                  Exit status:\n  0 success, 1 verification failure, 2 usage error,\n  \
                  3 numerical non-convergence, 4 internal invariant violation"
)]
pub struct Cli {
    /// Key-value file supplying defaults for any flag (`key = value` per line).
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write the report here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Worker threads. Output does not depend on this.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        <Self as ValueEnum>::from_str(s, true)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count lattice points strictly inside the p-circle of radius r.
    Count(CountArgs),
    /// Evaluate J_omega^[p] at a point of the plane.
    Bessel(BesselArgs),
    /// List lattice shells |n|_p^p = s up to s-max with their distorted angles.
    Shells(ShellsArgs),
    /// Partial sums of the Hardy-type series against the direct error term.
    Hardy(HardyArgs),
    /// Run the verification suites and print a pass/fail table.
    Verify(VerifyArgs),
    /// Fit the decay rate of |J_0^[p]| along a distorted ray.
    Decay(DecayArgs),
}

#[derive(Debug, Args)]
pub struct CountArgs {
    /// q = 2/p, a positive integer.
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long)]
    pub r: Option<f64>,
}

#[derive(Debug, Args)]
pub struct BesselArgs {
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long)]
    pub omega: Option<f64>,
    /// The point (x1, x2).
    #[arg(long, num_args = 2, value_names = ["X1", "X2"], allow_negative_numbers = true)]
    pub x: Option<Vec<f64>>,
    #[command(flatten)]
    pub numeric: NumericArgs,
}

#[derive(Debug, Args)]
pub struct ShellsArgs {
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long = "s-max")]
    pub s_max: Option<f64>,
}

#[derive(Debug, Args)]
pub struct HardyArgs {
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long)]
    pub r: Option<f64>,
    #[arg(long = "s-max")]
    pub s_max: Option<f64>,
    /// Comma-separated checkpoints; defaults to `window` points spread over
    /// [s-max/2, s-max].
    #[arg(long)]
    pub schedule: Option<String>,
    /// Checkpoints averaged for the tail average.
    #[arg(long)]
    pub window: Option<usize>,
    #[command(flatten)]
    pub numeric: NumericArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Run only checks whose suite or name contains this text.
    #[arg(long)]
    pub filter: Option<String>,
    /// Reduced grids.
    #[arg(long)]
    pub fast: bool,
}

#[derive(Debug, Args)]
pub struct DecayArgs {
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long, allow_negative_numbers = true)]
    pub phi: Option<f64>,
    #[arg(long = "r-min")]
    pub r_min: Option<f64>,
    #[arg(long = "r-max")]
    pub r_max: Option<f64>,
    /// Grid size.
    #[arg(long)]
    pub points: Option<usize>,
    #[command(flatten)]
    pub numeric: NumericArgs,
}

/// Tolerance overrides shared by the evaluating subcommands.
#[derive(Debug, Default, Args)]
pub struct NumericArgs {
    #[arg(long, value_enum)]
    pub path: Option<PathArg>,
    /// Switch from series to quadrature above this p-norm.
    #[arg(long = "series-limit")]
    pub series_limit: Option<f64>,
    #[arg(long = "max-terms")]
    pub max_terms: Option<usize>,
    #[arg(long = "tail-tol")]
    pub tail_tol: Option<f64>,
    #[arg(long = "rel-tol")]
    pub rel_tol: Option<f64>,
    #[arg(long = "abs-tol")]
    pub abs_tol: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PathArg {
    Series,
    Integral,
    Auto,
}

impl From<PathArg> for PathMode {
    fn from(p: PathArg) -> Self {
        match p {
            PathArg::Series => PathMode::Series,
            PathArg::Integral => PathMode::Integral,
            PathArg::Auto => PathMode::Auto,
        }
    }
}

impl std::str::FromStr for PathArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        <Self as ValueEnum>::from_str(s, true)
    }
}
