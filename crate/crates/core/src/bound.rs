//! Uniform error bound for the smoothed CDF at continuity points.
//!
//! The bound is driven by a concentration constant `M₂` satisfying
//! `max_{z0} P(|Z − z0| ≤ T·ε*) ≤ M₂·ε*`. Given `M₂` and the resolution
//! `N`, the bound is `2·sqrt(M₂/(2π))·N^{−1/2}`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{DistributionEstimate, GridSpec};
use crate::oracle::{exact_m2, max_window_mass, AtomSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum M2Source {
    ExactOracle,
    DensityRuleOfThumb,
    UserSupplied,
}

impl M2Source {
    /// Only an oracle `M₂` makes the bound rigorous.
    pub fn is_heuristic(self) -> bool {
        !matches!(self, M2Source::ExactOracle)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorBoundReport {
    pub m2: f64,
    pub epsilon_star: f64,
    pub bound: f64,
    pub n_resolution: usize,
    pub m2_source: M2Source,
}

impl ErrorBoundReport {
    pub fn new(m2: f64, resolution: usize, m2_source: M2Source) -> Result<Self> {
        Ok(Self {
            m2,
            epsilon_star: optimal_epsilon(m2, resolution)?,
            bound: error_bound(m2, resolution)?,
            n_resolution: resolution,
            m2_source,
        })
    }
}

fn check_resolution(resolution: usize) -> Result<()> {
    if resolution == 0 {
        return Err(Error::param("N", "must be positive"));
    }
    Ok(())
}

/// `2·sqrt(M₂/(2π))·N^{−1/2}`.
pub fn error_bound(m2: f64, resolution: usize) -> Result<f64> {
    check_resolution(resolution)?;
    if !(m2.is_finite() && m2 >= 0.0) {
        return Err(Error::param(
            "m2",
            format!("must be finite and non-negative (got {m2})"),
        ));
    }
    Ok(2.0 * (m2 / (2.0 * PI)).sqrt() / (resolution as f64).sqrt())
}

/// `ε* = sqrt(2/(π·N·M₂))`, the minimizer of [`bound_objective`].
pub fn optimal_epsilon(m2: f64, resolution: usize) -> Result<f64> {
    check_resolution(resolution)?;
    if !(m2.is_finite() && m2 > 0.0) {
        return Err(Error::param(
            "m2",
            format!("must be finite and positive (got {m2})"),
        ));
    }
    Ok((2.0 / (PI * resolution as f64 * m2)).sqrt())
}

/// `½·M₂·ε + 1/(π·N·ε)`: near-atom plus far-atom contribution of one
/// endpoint term. Its minimum over `ε` equals [`error_bound`].
///
/// The two endpoint terms together are bounded by twice this quantity.
pub fn bound_objective(m2: f64, resolution: usize, epsilon: f64) -> f64 {
    0.5 * m2 * epsilon + 1.0 / (PI * resolution as f64 * epsilon)
}

/// Heuristic `M₂ = 2·T·max_i f̂(x_i)`: a window of half-width `T·ε` under
/// density `f` holds mass about `2·T·ε·f`.
pub fn estimate_m2_from_density(estimate: &DistributionEstimate, grid: &GridSpec) -> Result<f64> {
    let density = estimate.density.as_ref().ok_or(Error::MissingDensity)?;
    if grid.degenerate {
        return Err(Error::DegenerateGrid);
    }
    let peak = density.iter().copied().fold(0.0_f64, f64::max);
    Ok(2.0 * grid.period * peak)
}

/// Smallest `M₂` that satisfies the window-mass condition at its own
/// optimal `ε*`, found by bisection. Returns `(M₂, ε*)`.
///
/// The condition `W(ε*(M₂)) ≤ M₂·ε*(M₂)` is monotone in `M₂`: the window
/// shrinks as `M₂` grows while the allowance grows.
pub fn self_consistent_m2(atoms: &AtomSet, period: f64, resolution: usize) -> (f64, f64) {
    let n = resolution as f64;
    let eps_of = |m2: f64| (2.0 / (PI * n * m2)).sqrt();
    let valid = |m2: f64| {
        let eps = eps_of(m2);
        max_window_mass(atoms, 2.0 * period * eps) <= m2 * eps
    };
    let heaviest = atoms.atoms().iter().map(|a| a.mass).fold(0.0_f64, f64::max);
    // any valid M₂ needs M₂·ε ≥ heaviest atom
    let mut lo = heaviest * heaviest * PI * n / 2.0 * (1.0 - 1e-12);
    let mut hi = lo.max(f64::MIN_POSITIVE);
    while !valid(hi) {
        lo = hi;
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if valid(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (hi, eps_of(hi))
}

/// Rigorous report from the enumerated atoms of `Z`.
pub fn exact_report(atoms: &AtomSet, grid: &GridSpec) -> Result<ErrorBoundReport> {
    let (m2, _) = self_consistent_m2(atoms, grid.period, grid.resolution);
    ErrorBoundReport::new(m2, grid.resolution, M2Source::ExactOracle)
}

/// `exact_m2` evaluated at the report's own `ε*`; at most `report.m2` when
/// the report came from [`exact_report`].
pub fn realized_m2(atoms: &AtomSet, grid: &GridSpec, report: &ErrorBoundReport) -> f64 {
    exact_m2(atoms, grid.period, report.epsilon_star)
}
