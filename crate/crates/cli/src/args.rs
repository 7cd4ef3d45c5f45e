use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "radext", version)]
#[command(about = "Lipschitz constants, dilatation fields and bi-Lipschitz bounds of radial extensions of starlike curves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute l, L, Lambda, K_qc, alpha_gamma and the explicit star bounds
    Analyze(RunArgs),
    /// Run every applicable check and report pass/fail/flagged
    Verify(RunArgs),
    /// Export the dilatation field on a polar grid of the unit disk
    Grid(GridArgs),
    /// Builtin curves
    Curves {
        #[command(subcommand)]
        command: CurvesCommand,
    },
    /// Parse an expression and print its normal form and derivative
    ParseCheck {
        expr: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum CurvesCommand {
    /// List builtin curves and their parameters
    List {
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct CurveArgs {
    /// Builtin curve name (see `curves list`)
    #[arg(long, conflicts_with = "r")]
    pub builtin: Option<String>,

    /// Curve parameter, repeatable
    #[arg(long = "param", value_name = "K=V", value_parser = parse_param)]
    pub params: Vec<(String, f64)>,

    /// Polar radius r(t) as an expression
    #[arg(long, value_name = "EXPR")]
    pub r: Option<String>,

    /// Circle homeomorphism psi(t); defaults to the identity
    #[arg(long, value_name = "EXPR")]
    pub psi: Option<String>,

    /// Seed for `--builtin trigpoly` without parameters
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Args, Debug, Clone)]
pub struct NumericArgs {
    #[arg(long, default_value_t = 4096, value_parser = clap::value_parser!(u64).range(64..=65536))]
    pub grid_n: u64,

    /// Minimum number of local refinement passes
    #[arg(long, default_value_t = 1)]
    pub refine: usize,

    /// Tolerance for pairwise-oracle comparisons
    #[arg(long, value_parser = parse_tol)]
    pub tol: Option<f64>,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Write to PATH instead of standard output
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,

    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    #[command(flatten)]
    pub curve: CurveArgs,
    #[command(flatten)]
    pub numeric: NumericArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct GridArgs {
    #[command(flatten)]
    pub run: RunArgs,

    #[arg(long, default_value_t = 8)]
    pub radial_n: usize,

    #[arg(long, default_value_t = 256)]
    pub angular_n: usize,
}

fn parse_param(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected K=V, got `{}`", s))?;
    let k = k.trim();
    if k.is_empty() || !k.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Err(format!("invalid parameter name `{}`", k));
    }
    let v: f64 = v.trim().parse().map_err(|e| format!("invalid value for `{}`: {}", k, e))?;
    if !v.is_finite() {
        return Err(format!("value for `{}` is not finite", k));
    }
    Ok((k.to_string(), v))
}

fn parse_tol(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{}", e))?;
    if !(v > 0.0 && v.is_finite()) {
        return Err(format!("tolerance must be positive, got {}", v));
    }
    Ok(v)
}
