//! Shared data model: samples, mixture definitions, frequency grids and
//! reconstructed distributions.

use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Padding factor used when the caller does not choose one.
pub const DEFAULT_KAPPA: f64 = 1.1;

/// Relative distance to an integer below which `(N/T)·κ·z_min` is treated
/// as that integer before flooring.
const INDEX_SNAP: f64 = 1e-9;

/// A finite set of real observations, each carrying empirical mass `1/n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    values: Vec<f64>,
    min: f64,
    max: f64,
}

impl Sample {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySample);
        }
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFiniteObservation { index, value });
        }
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Ok(Self { values, min, max })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.min
    }

    pub fn max(&self) -> f64 {
        self.max
    }

    /// Midpoint of the sample range.
    pub fn center(&self) -> f64 {
        0.5 * self.min + 0.5 * self.max
    }

    pub fn is_single_atom(&self) -> bool {
        self.min == self.max
    }
}

/// One term `a·X` of the mixture.
#[derive(Debug, Clone, PartialEq)]
pub struct Component {
    pub coefficient: f64,
    pub sample: Arc<Sample>,
}

/// `Z = Σ_j a_j X^[j]` with independent `X^[j]` drawn from their samples.
#[derive(Debug, Clone, PartialEq)]
pub struct MixtureSpec {
    components: Vec<Component>,
}

impl MixtureSpec {
    pub fn new(components: Vec<Component>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::EmptyMixture);
        }
        for (index, c) in components.iter().enumerate() {
            if !c.coefficient.is_finite() {
                return Err(Error::NonFiniteCoefficient {
                    index,
                    value: c.coefficient,
                });
            }
        }
        Ok(Self { components })
    }

    /// Every component draws from the same sample.
    pub fn shared(sample: Arc<Sample>, coefficients: &[f64]) -> Result<Self> {
        Self::new(
            coefficients
                .iter()
                .map(|&coefficient| Component {
                    coefficient,
                    sample: Arc::clone(&sample),
                })
                .collect(),
        )
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// `Σ_j a_j·center(X^[j])`, the shift implied by per-sample centering.
    pub(crate) fn component_center_sum(&self) -> f64 {
        self.components
            .iter()
            .map(|c| c.coefficient * c.sample.center())
            .sum()
    }
}

/// Smallest and largest attainable values of `Z`.
///
/// Both bounds are attained by choosing, per component, the extreme
/// observation matching the coefficient's sign.
pub fn exact_support_bounds(spec: &MixtureSpec) -> (f64, f64) {
    spec.components.iter().fold((0.0, 0.0), |(lo, hi), c| {
        let a = c.coefficient;
        let (p, q) = (a * c.sample.min(), a * c.sample.max());
        (lo + p.min(q), hi + p.max(q))
    })
}

/// Frequency/space grid shared by the spectral and inversion stages.
///
/// All spatial quantities except `shift` refer to the centered variable
/// `Z − shift`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub resolution: usize,
    pub kappa: f64,
    pub z_min: f64,
    pub z_max: f64,
    pub support_width: f64,
    pub period: f64,
    pub delta_nu: f64,
    pub i_min: i64,
    pub shift: f64,
    pub degenerate: bool,
}

impl GridSpec {
    /// Lower end of the cumulative window, `i_min·T/N`, centered units.
    pub fn x0(&self) -> f64 {
        self.i_min as f64 * self.period / self.resolution as f64
    }

    pub fn spacing(&self) -> f64 {
        self.period / self.resolution as f64
    }

    /// Centered abscissa of grid index `i` (counted from `i_min`).
    pub fn centered_abscissa(&self, i: usize) -> f64 {
        (self.i_min + i as i64) as f64 * self.spacing()
    }

    /// Abscissa of grid index `i` in observation units.
    pub fn abscissa(&self, i: usize) -> f64 {
        self.centered_abscissa(i) + self.shift
    }

    /// The interval `I = [κ·z_min, κ·z_max]`, centered units.
    pub fn padded_support(&self) -> (f64, f64) {
        (self.kappa * self.z_min, self.kappa * self.z_max)
    }
}

pub fn build_grid(spec: &MixtureSpec, resolution: usize, kappa: f64) -> Result<GridSpec> {
    if resolution < 2 {
        return Err(Error::param(
            "N",
            format!("must be at least 2 (got {resolution})"),
        ));
    }
    if !(kappa.is_finite() && kappa > 1.0) {
        return Err(Error::param("kappa", format!("must be > 1 (got {kappa})")));
    }
    let (lo, hi) = exact_support_bounds(spec);
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(Error::NonFiniteBounds);
    }
    let shift = 0.5 * lo + 0.5 * hi;
    let support_width = hi - lo;
    if support_width == 0.0 {
        return Ok(GridSpec {
            resolution,
            kappa,
            z_min: 0.0,
            z_max: 0.0,
            support_width: 0.0,
            period: 0.0,
            delta_nu: 0.0,
            i_min: 0,
            shift,
            degenerate: true,
        });
    }
    let z_min = lo - shift;
    let z_max = hi - shift;
    let period = kappa * support_width;
    let raw = (resolution as f64 / period) * kappa * z_min;
    let nearest = raw.round();
    let i_min = if (raw - nearest).abs() <= INDEX_SNAP * raw.abs().max(1.0) {
        nearest
    } else {
        raw.floor()
    } as i64;
    Ok(GridSpec {
        resolution,
        kappa,
        z_min,
        z_max,
        support_width,
        period,
        delta_nu: 1.0 / period,
        i_min,
        shift,
        degenerate: false,
    })
}

/// Samples `g_k = G(k·Δν)` of the centered characteristic function,
/// `k = 0..N`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralCoefficients {
    pub g: Vec<Complex64>,
    pub grid: GridSpec,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    /// Cyclic cumulative sum of the raw inverse-transform samples.
    Alg1,
    /// Cumulative sum with the integrating correction factor applied to
    /// every coefficient; samples the smoothed CDF exactly.
    #[default]
    Alg2,
}

/// A tabulated CDF on an equispaced grid, observation units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionEstimate {
    pub x: Vec<f64>,
    pub cdf: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub density: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<f64>,
    pub algorithm: Algorithm,
}

impl DistributionEstimate {
    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// Exact step CDF of a point mass at `value`, tabulated over
    /// `[value − 1, value + 1)`.
    pub fn point_mass(value: f64, resolution: usize, algorithm: Algorithm) -> Self {
        let step = 2.0 / resolution as f64;
        let x: Vec<f64> = (0..resolution)
            .map(|i| value - 1.0 + i as f64 * step)
            .collect();
        let cdf = x
            .iter()
            .map(|&xi| if xi >= value { 1.0 } else { 0.0 })
            .collect();
        Self {
            x,
            cdf,
            density: None,
            bound: Some(0.0),
            algorithm,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(v: &[f64]) -> Arc<Sample> {
        Arc::new(Sample::new(v.to_vec()).unwrap())
    }

    #[test]
    fn support_bounds_single_component() {
        let spec = MixtureSpec::shared(sample(&[0.0, 1.0]), &[1.0]).unwrap();
        assert_eq!(exact_support_bounds(&spec), (0.0, 1.0));
    }

    #[test]
    fn support_bounds_negative_coefficient_swaps() {
        let spec = MixtureSpec::shared(sample(&[0.0, 1.0]), &[0.5, -0.5]).unwrap();
        assert_eq!(exact_support_bounds(&spec), (-0.5, 0.5));
    }

    #[test]
    fn support_bounds_two_components() {
        // atoms: -1-2, -1+4, 2-2, 2+4 = -3, 3, 0, 6
        let spec = MixtureSpec::shared(sample(&[-1.0, 2.0]), &[1.0, 2.0]).unwrap();
        assert_eq!(exact_support_bounds(&spec), (-3.0, 6.0));
    }

    #[test]
    fn grid_symmetric_sample() {
        let spec = MixtureSpec::shared(sample(&[-1.0, 1.0]), &[1.0]).unwrap();
        let g = build_grid(&spec, 8, 2.0).unwrap();
        assert_eq!(g.support_width, 2.0);
        assert_eq!(g.period, 4.0);
        assert_eq!(g.delta_nu, 0.25);
        assert_eq!(g.shift, 0.0);
        assert_eq!(g.i_min, -4);
        assert!(!g.degenerate);
    }

    #[test]
    fn grid_shifted_sample() {
        let spec = MixtureSpec::shared(sample(&[0.0, 1.0]), &[1.0]).unwrap();
        let g = build_grid(&spec, 4, 1.5).unwrap();
        assert_eq!(g.shift, 0.5);
        assert_eq!((g.z_min, g.z_max), (-0.5, 0.5));
        assert_eq!(g.period, 1.5);
        assert_eq!(g.i_min, -2);
    }

    #[test]
    fn grid_constant_sample_is_degenerate() {
        let spec = MixtureSpec::shared(sample(&[5.0, 5.0]), &[1.0]).unwrap();
        let g = build_grid(&spec, 16, 1.1).unwrap();
        assert!(g.degenerate);
        assert_eq!(g.support_width, 0.0);
        assert_eq!(g.shift, 5.0);
    }

    #[test]
    fn grid_all_zero_coefficients_is_degenerate() {
        let spec = MixtureSpec::shared(sample(&[0.0, 3.0]), &[0.0, 0.0]).unwrap();
        assert!(build_grid(&spec, 16, 1.1).unwrap().degenerate);
    }

    #[test]
    fn grid_rejects_bad_parameters() {
        let spec = MixtureSpec::shared(sample(&[0.0, 1.0]), &[1.0]).unwrap();
        assert!(matches!(
            build_grid(&spec, 16, 1.0),
            Err(Error::InvalidParameter { field: "kappa", .. })
        ));
        assert!(matches!(
            build_grid(&spec, 1, 1.5),
            Err(Error::InvalidParameter { field: "N", .. })
        ));
        assert!(build_grid(&spec, 16, f64::NAN).is_err());
    }

    #[test]
    fn grid_rejects_overflowing_bounds() {
        let spec = MixtureSpec::shared(sample(&[-1e308, 1e308]), &[10.0]).unwrap();
        assert_eq!(build_grid(&spec, 16, 1.1), Err(Error::NonFiniteBounds));
    }

    #[test]
    fn sample_validation() {
        assert_eq!(Sample::new(vec![]), Err(Error::EmptySample));
        assert!(matches!(
            Sample::new(vec![1.0, f64::INFINITY]),
            Err(Error::NonFiniteObservation { index: 1, .. })
        ));
        let s = Sample::new(vec![3.0, -2.0, 7.0]).unwrap();
        assert_eq!((s.min(), s.max(), s.len()), (-2.0, 7.0, 3));
    }

    #[test]
    fn mixture_validation() {
        assert_eq!(MixtureSpec::new(vec![]), Err(Error::EmptyMixture));
        assert!(matches!(
            MixtureSpec::shared(sample(&[1.0]), &[1.0, f64::NAN]),
            Err(Error::NonFiniteCoefficient { index: 1, .. })
        ));
    }

    #[test]
    fn point_mass_estimate() {
        let e = DistributionEstimate::point_mass(3.0, 8, Algorithm::Alg2);
        assert_eq!(e.x[0], 2.0);
        assert_eq!(e.cdf[3], 0.0);
        assert_eq!(e.cdf[4], 1.0);
    }
}
