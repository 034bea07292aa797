//! Linear bootstrap statistics expressed as mixtures.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::model::{Component, MixtureSpec, Sample};

/// Relative singular-value cutoff for the full-rank check.
pub const RANK_TOLERANCE: f64 = 1e-10;

/// The bootstrap mean `X̄*` of `n` resamples: `n` components `(1/n, X)`.
pub fn mean_bootstrap_spec(sample: Arc<Sample>) -> MixtureSpec {
    let n = sample.len();
    let weight = 1.0 / n as f64;
    MixtureSpec::shared(sample, &vec![weight; n]).expect("sample is non-empty")
}

/// Fixed-design linear regression with one coefficient of interest.
#[derive(Debug, Clone, PartialEq)]
pub struct RegressionProblem {
    design: DMatrix<f64>,
    response: DVector<f64>,
    coefficient_index: usize,
}

impl RegressionProblem {
    pub fn new(
        design: DMatrix<f64>,
        response: DVector<f64>,
        coefficient_index: usize,
    ) -> Result<Self> {
        let (rows, cols) = design.shape();
        if rows == 0 || cols == 0 {
            return Err(Error::Regression("empty design".into()));
        }
        if response.len() != rows {
            return Err(Error::Regression(format!(
                "response has {} entries, design has {rows} rows",
                response.len()
            )));
        }
        if coefficient_index >= cols {
            return Err(Error::param(
                "coef-index",
                format!("{coefficient_index} out of range for {cols} predictors"),
            ));
        }
        if design.iter().chain(response.iter()).any(|v| !v.is_finite()) {
            return Err(Error::Regression("non-finite entry in data".into()));
        }
        if rows < cols {
            return Err(Error::Regression(format!(
                "rank deficient: {rows} rows for {cols} predictors"
            )));
        }
        let sv = design.singular_values();
        let largest = sv.max();
        let smallest = sv.min();
        if largest <= 0.0 || smallest <= RANK_TOLERANCE * largest {
            return Err(Error::Regression(format!(
                "rank deficient: singular value ratio {:.3e}",
                if largest > 0.0 {
                    smallest / largest
                } else {
                    0.0
                }
            )));
        }
        Ok(Self {
            design,
            response,
            coefficient_index,
        })
    }

    pub fn design(&self) -> &DMatrix<f64> {
        &self.design
    }

    pub fn response(&self) -> &DVector<f64> {
        &self.response
    }

    pub fn coefficient_index(&self) -> usize {
        self.coefficient_index
    }
}

/// Least-squares pieces needed to linearize the residual bootstrap.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualFit {
    pub coefficients: DVector<f64>,
    /// Mean-centered residuals.
    pub residuals: Vec<f64>,
    /// Row `l` of `(XᵀX)⁻¹Xᵀ`: `β*_l − β̂_l = Σ_i w_i·e*_i`.
    pub weights: Vec<f64>,
}

/// `(XᵀX)⁻¹Xᵀ` from a thin QR factorization, `R⁻¹Qᵀ`.
fn pseudo_inverse(design: &DMatrix<f64>) -> DMatrix<f64> {
    let qr = design.clone().qr();
    let r = qr.r();
    let qt = qr.q().transpose();
    r.solve_upper_triangular(&qt)
        .expect("full column rank checked at construction")
}

pub fn least_squares(design: &DMatrix<f64>, response: &DVector<f64>) -> DVector<f64> {
    pseudo_inverse(design) * response
}

pub fn fit_residuals(problem: &RegressionProblem) -> ResidualFit {
    let pinv = pseudo_inverse(&problem.design);
    let coefficients = &pinv * &problem.response;
    let raw = &problem.response - &problem.design * &coefficients;
    let mean = raw.mean();
    ResidualFit {
        coefficients,
        residuals: raw.iter().map(|e| e - mean).collect(),
        weights: pinv
            .row(problem.coefficient_index)
            .iter()
            .copied()
            .collect(),
    }
}

/// `β*_l − β̂_l` under resampling of centered residuals: components
/// `(w_i, e)` for `i = 1..n`, all sharing the residual sample.
pub fn residual_bootstrap_spec(problem: &RegressionProblem) -> Result<MixtureSpec> {
    let fit = fit_residuals(problem);
    let residuals = Arc::new(Sample::new(fit.residuals)?);
    MixtureSpec::new(
        fit.weights
            .into_iter()
            .map(|coefficient| Component {
                coefficient,
                sample: Arc::clone(&residuals),
            })
            .collect(),
    )
}
