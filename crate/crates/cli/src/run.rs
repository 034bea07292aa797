//! Orchestration of one CLI invocation.

use std::sync::Arc;

use mixcdf::bootstrap::{mean_bootstrap_spec, residual_bootstrap_spec, RegressionProblem};
use mixcdf::bound::{estimate_m2_from_density, exact_report, ErrorBoundReport, M2Source};
use mixcdf::inversion::cdf_closed_form;
use mixcdf::oracle::{enumerate_atoms, exact_cdf};
use mixcdf::quantile::quantiles;
use mixcdf::{compute_distribution, DistributionEstimate, Error, GridSpec, MixtureSpec, Sample};
use serde::Serialize;

use crate::config::{CoefficientSource, RunConfig};
use crate::input::{read_regression, read_sample};
use crate::CliError;

/// Multiplier applied to `N` by `--reference`.
pub const REFERENCE_FACTOR: usize = 16;

/// Oracle comparisons use at most this many gap midpoints.
const MAX_MIDPOINTS: usize = 2000;

#[derive(Debug, Clone, Serialize)]
pub struct QuantileValue {
    pub p: f64,
    pub x: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundSummary {
    #[serde(flatten)]
    pub report: ErrorBoundReport,
    pub heuristic: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReferenceSummary {
    pub resolution: usize,
    /// Largest |F_N(x_i) − F_16N(x_i)| over the coarse grid, with the
    /// reference interpolated linearly.
    pub max_cdf_difference: f64,
    pub quantiles: Vec<QuantileValue>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleSummary {
    pub atoms: usize,
    pub midpoints_checked: usize,
    /// Largest |F̃(x) − F_Z(x)| over gap midpoints.
    pub max_midpoint_error: f64,
    /// Largest |cdf_i − F_Z(x_i)| over grid points that are not atoms.
    pub max_grid_error: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error_bound: Option<ErrorBoundReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub estimate: DistributionEstimate,
    pub grid: GridSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error_bound: Option<BoundSummary>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub quantiles: Vec<QuantileValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference: Option<ReferenceSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSummary>,
}

pub fn build_spec(config: &RunConfig) -> Result<MixtureSpec, CliError> {
    match &config.coefficient_source {
        CoefficientSource::Explicit(coeffs) => {
            let sample = Arc::new(Sample::new(read_sample(&config.input_path)?)?);
            Ok(MixtureSpec::shared(sample, coeffs)?)
        }
        CoefficientSource::MeanBootstrap => {
            let sample = Arc::new(Sample::new(read_sample(&config.input_path)?)?);
            Ok(mean_bootstrap_spec(sample))
        }
        CoefficientSource::ResidualBootstrap(index) => {
            let (design, response) = read_regression(&config.input_path)?;
            let problem = RegressionProblem::new(design, response, *index)?;
            Ok(residual_bootstrap_spec(&problem)?)
        }
    }
}

fn labeled(probs: &[f64], values: Vec<f64>) -> Vec<QuantileValue> {
    probs
        .iter()
        .zip(values)
        .map(|(&p, x)| QuantileValue { p, x })
        .collect()
}

/// Piecewise-linear interpolation of a tabulated CDF, clamped at the ends.
fn interpolate(estimate: &DistributionEstimate, x: f64) -> f64 {
    let xs = &estimate.x;
    let j = xs.partition_point(|&v| v <= x);
    if j == 0 {
        return estimate.cdf[0];
    }
    if j == xs.len() {
        return estimate.cdf[xs.len() - 1];
    }
    let t = (x - xs[j - 1]) / (xs[j] - xs[j - 1]);
    estimate.cdf[j - 1] + t * (estimate.cdf[j] - estimate.cdf[j - 1])
}

pub fn run(config: &RunConfig) -> Result<Report, CliError> {
    let spec = build_spec(config)?;
    let want_density = config.emit_density || config.emit_bound;
    let rec = compute_distribution(
        &spec,
        config.resolution,
        config.kappa,
        config.algorithm,
        want_density,
    )?;
    let mut estimate = rec.estimate;

    let mut error_bound = None;
    if config.emit_bound && rec.coefficients.is_some() {
        let m2 = estimate_m2_from_density(&estimate, &rec.grid)?;
        let report = ErrorBoundReport::new(m2, config.resolution, M2Source::DensityRuleOfThumb)?;
        estimate.bound = Some(report.bound);
        error_bound = Some(BoundSummary {
            report,
            heuristic: true,
        });
    }

    let oracle = if config.oracle {
        let atoms = enumerate_atoms(&spec).map_err(|e| match e {
            Error::EnumerationTooLarge { .. } => CliError::guard(format!("--oracle: {e}")),
            other => other.into(),
        })?;
        let midpoints = atoms.gap_midpoints();
        let stride = midpoints.len().div_ceil(MAX_MIDPOINTS).max(1);
        let checked: Vec<f64> = midpoints.iter().copied().step_by(stride).collect();
        let mut max_midpoint_error = 0.0_f64;
        if let Some(coeffs) = &rec.coefficients {
            for &x in &checked {
                let smoothed = cdf_closed_form(coeffs, x)?;
                max_midpoint_error =
                    max_midpoint_error.max((smoothed - exact_cdf(&atoms, x)).abs());
            }
        }
        let spacing = estimate.x.get(1).map_or(1.0, |x1| x1 - estimate.x[0]);
        let max_grid_error = estimate
            .x
            .iter()
            .zip(&estimate.cdf)
            .filter(|(&x, _)| {
                let j = atoms.atoms().partition_point(|a| a.value < x);
                let near = |i: usize| {
                    atoms
                        .atoms()
                        .get(i)
                        .is_some_and(|a| (a.value - x).abs() <= 1e-9 * spacing)
                };
                !(near(j) || (j > 0 && near(j - 1)))
            })
            .map(|(&x, &c)| (c - exact_cdf(&atoms, x)).abs())
            .fold(0.0_f64, f64::max);
        let exact = match &rec.coefficients {
            Some(_) => Some(exact_report(&atoms, &rec.grid)?),
            None => None,
        };
        if let (Some(report), Some(summary)) = (exact, error_bound.as_mut()) {
            estimate.bound = Some(report.bound);
            *summary = BoundSummary {
                report,
                heuristic: false,
            };
        }
        Some(OracleSummary {
            atoms: atoms.len(),
            midpoints_checked: checked.len(),
            max_midpoint_error,
            max_grid_error,
            error_bound: exact,
        })
    } else {
        None
    };

    let quantile_values = if config.quantile_probs.is_empty() {
        Vec::new()
    } else {
        labeled(
            &config.quantile_probs,
            quantiles(&estimate, &config.quantile_probs)?,
        )
    };

    let reference = if config.reference {
        let resolution = config.resolution * REFERENCE_FACTOR;
        let fine = compute_distribution(&spec, resolution, config.kappa, config.algorithm, false)?;
        let max_cdf_difference = estimate
            .x
            .iter()
            .zip(&estimate.cdf)
            .map(|(&x, &c)| (c - interpolate(&fine.estimate, x)).abs())
            .fold(0.0_f64, f64::max);
        let q = if config.quantile_probs.is_empty() {
            Vec::new()
        } else {
            labeled(
                &config.quantile_probs,
                quantiles(&fine.estimate, &config.quantile_probs)?,
            )
        };
        Some(ReferenceSummary {
            resolution,
            max_cdf_difference,
            quantiles: q,
        })
    } else {
        None
    };

    if !config.emit_density {
        estimate.density = None;
    }
    Ok(Report {
        estimate,
        grid: rec.grid,
        error_bound,
        quantiles: quantile_values,
        reference,
        oracle,
    })
}
