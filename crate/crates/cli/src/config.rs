use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use mixcdf::{Algorithm, DEFAULT_KAPPA};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// One sample, explicit coefficients (`--coeffs`).
    Mixture,
    /// Bootstrap distribution of the sample mean.
    MeanBoot,
    /// Residual bootstrap of one regression coefficient (`--coef-index`).
    ResidualBoot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Distribution of a linear mixture of empirical samples.
#[derive(Debug, Parser)]
#[command(name = "mixcdf", version)]
pub struct Args {
    /// Sample file (one value per line) or, for residual-boot, a CSV with
    /// header `y,x1,x2,...`.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "mixture")]
    pub mode: Mode,
    /// Mixture coefficients a1,a2,...
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub coeffs: Vec<f64>,
    /// Regression coefficient to bootstrap (0-based column of the design).
    #[arg(long = "coef-index")]
    pub coef_index: Option<usize>,
    /// Grid resolution.
    #[arg(long = "N", default_value_t = 1000)]
    pub resolution: usize,
    /// Period padding factor T/T_Z.
    #[arg(long, default_value_t = DEFAULT_KAPPA)]
    pub kappa: f64,
    /// `1`/`alg1` (cumulative sum) or `2`/`alg2` (corrected increments).
    #[arg(long, default_value = "2", value_parser = parse_algorithm)]
    pub algorithm: Algorithm,
    /// Probabilities to report quantiles for, p1,p2,...
    #[arg(long, value_delimiter = ',')]
    pub quantiles: Vec<f64>,
    /// Emit the smoothed density column.
    #[arg(long)]
    pub density: bool,
    /// Report the uniform error bound (heuristic unless --oracle).
    #[arg(long)]
    pub bound: bool,
    /// Enumerate the atoms of Z and check the result against them.
    #[arg(long)]
    pub oracle: bool,
    /// Re-run at 16x the resolution and report the difference.
    #[arg(long)]
    pub reference: bool,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

fn parse_algorithm(raw: &str) -> Result<Algorithm, String> {
    match raw {
        "1" | "alg1" => Ok(Algorithm::Alg1),
        "2" | "alg2" => Ok(Algorithm::Alg2),
        _ => Err(format!("expected 1, 2, alg1 or alg2 (got {raw:?})")),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CoefficientSource {
    Explicit(Vec<f64>),
    MeanBootstrap,
    ResidualBootstrap(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub input_path: PathBuf,
    pub coefficient_source: CoefficientSource,
    pub resolution: usize,
    pub kappa: f64,
    pub algorithm: Algorithm,
    pub quantile_probs: Vec<f64>,
    pub emit_density: bool,
    pub emit_bound: bool,
    pub oracle: bool,
    pub reference: bool,
    pub output_path: Option<PathBuf>,
    pub output_format: Format,
}

impl TryFrom<Args> for RunConfig {
    type Error = CliError;

    fn try_from(args: Args) -> Result<Self, CliError> {
        if args.resolution < 2 {
            return Err(CliError::usage(format!(
                "--N: must be at least 2 (got {})",
                args.resolution
            )));
        }
        if !(args.kappa.is_finite() && args.kappa > 1.0) {
            return Err(CliError::usage(format!(
                "--kappa: must be > 1 (got {})",
                args.kappa
            )));
        }
        if let Some(p) = args.quantiles.iter().find(|&&p| !(p > 0.0 && p < 1.0)) {
            return Err(CliError::usage(format!(
                "--quantiles: {p} is not strictly inside (0, 1)"
            )));
        }
        let coefficient_source = match args.mode {
            Mode::Mixture => {
                if args.coeffs.is_empty() {
                    return Err(CliError::usage("--coeffs: required in mixture mode"));
                }
                if let Some(a) = args.coeffs.iter().find(|a| !a.is_finite()) {
                    return Err(CliError::usage(format!("--coeffs: {a} is not finite")));
                }
                CoefficientSource::Explicit(args.coeffs)
            }
            Mode::MeanBoot => CoefficientSource::MeanBootstrap,
            Mode::ResidualBoot => {
                CoefficientSource::ResidualBootstrap(args.coef_index.ok_or_else(|| {
                    CliError::usage("--coef-index: required in residual-boot mode")
                })?)
            }
        };
        Ok(Self {
            input_path: args.input,
            coefficient_source,
            resolution: args.resolution,
            kappa: args.kappa,
            algorithm: args.algorithm,
            quantile_probs: args.quantiles,
            emit_density: args.density,
            emit_bound: args.bound,
            oracle: args.oracle,
            reference: args.reference,
            output_path: args.output,
            output_format: args.format,
        })
    }
}
