//! Reconstruction of densities and CDFs from spectral coefficients.
//!
//! With `f̃(x) = (1/N)·Σ_{|k|<N} g_k·exp(2πi·x·k/T)`, the computed density
//! is the atomic density of `Z` smoothed by the periodic kernel
//! [`dirichlet_kernel`]; the CDF routines sample either a Riemann sum of
//! `f̃` ([`cdf_algorithm1`]) or its exact integral ([`cdf_algorithm2`]).

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::model::{Algorithm, DistributionEstimate, SpectralCoefficients};
use crate::phase::unit_phasor;

/// Distance of `π·x/T` to `πℤ` under which the kernel takes its limit value.
const KERNEL_GUARD: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelParams {
    resolution: usize,
    period: f64,
}

impl KernelParams {
    pub fn new(resolution: usize, period: f64) -> Result<Self> {
        if resolution < 2 {
            return Err(Error::param(
                "N",
                format!("must be at least 2 (got {resolution})"),
            ));
        }
        if !(period.is_finite() && period > 0.0) {
            return Err(Error::param(
                "T",
                format!("must be finite and positive (got {period})"),
            ));
        }
        Ok(Self { resolution, period })
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    fn reduced(&self, x: f64) -> f64 {
        let r = x / self.period;
        r - r.round()
    }
}

/// `R_{N,T}(x) = (1/T)·sin((2N−1)πx/T) / sin(πx/T)`, continued by its
/// limit `(2N−1)/T` at multiples of `T`.
pub fn dirichlet_kernel(params: KernelParams, x: f64) -> f64 {
    let width = (2 * params.resolution - 1) as f64;
    let r = params.reduced(x);
    if (PI * r).abs() < KERNEL_GUARD {
        return width / params.period;
    }
    (width * PI * r).sin() / ((PI * r).sin() * params.period)
}

/// `J_{N,T}(x) = x/T + (1/π)·Σ_{k=1}^{N−1} sin(2πkx/T)/k`, the integral of
/// [`dirichlet_kernel`] from 0 to `x`.
pub fn kernel_integral(params: KernelParams, x: f64) -> f64 {
    let r = params.reduced(x);
    let series: f64 = (1..params.resolution)
        .map(|k| unit_phasor(k as f64 * r).im / k as f64)
        .sum();
    x / params.period + series / PI
}

/// `Σ_{k=0}^{N−1} c_k·exp(+2πi·jk/N)` for every `j`.
fn synthesize(coefficients: &[Complex64]) -> Vec<Complex64> {
    let mut buf = coefficients.to_vec();
    FftPlanner::new()
        .plan_fft_inverse(buf.len())
        .process(&mut buf);
    buf
}

/// `2·Re(h) − 1/N` for the half-spectrum synthesis `h`, the part of the
/// full Hermitian sum the half spectrum does not cover twice.
fn hermitian_samples(coefficients: &[Complex64]) -> Vec<f64> {
    let n = coefficients.len() as f64;
    synthesize(coefficients)
        .into_iter()
        .map(|h| 2.0 * h.re / n - 1.0 / n)
        .collect()
}

/// `f̃_i = f̃(i·T/N)`, `i = 0..N`, centered units.
pub fn density_samples(coeffs: &SpectralCoefficients) -> Vec<f64> {
    hermitian_samples(&coeffs.g)
}

/// Direct `O(N)` evaluation of `f̃` at a centered abscissa.
pub fn density_proxy(coeffs: &SpectralCoefficients, centered_x: f64) -> f64 {
    let n = coeffs.g.len();
    let r = centered_x / coeffs.grid.period;
    let r = r - r.round();
    let half: f64 = coeffs.g[1..]
        .iter()
        .enumerate()
        .map(|(k, g)| (g * unit_phasor((k + 1) as f64 * r)).re)
        .sum();
    (1.0 + 2.0 * half) / n as f64
}

/// `f̂(x) = (N/T)·f̃(x − s)` inside `I = [κ·z_min, κ·z_max]`, zero outside.
pub fn smooth_density(coeffs: &SpectralCoefficients, x: f64) -> f64 {
    let grid = &coeffs.grid;
    let xc = x - grid.shift;
    let (lo, hi) = grid.padded_support();
    if xc < lo || xc > hi {
        return 0.0;
    }
    grid.resolution as f64 / grid.period * density_proxy(coeffs, xc)
}

/// `φ_k = (e^{2πik/N} − 1)/(2πik/N)`, with `φ_0 = 1`.
pub fn correction_factor(k: usize, resolution: usize) -> Complex64 {
    if k == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let half = PI * k as f64 / resolution as f64;
    unit_phasor(0.5 * k as f64 / resolution as f64) * (half.sin() / half)
}

/// Running sum from `i_min`, wrapping the period: entry `j` holds
/// `Σ_{i=i_min}^{i_min+j−1} inc[i mod N]`.
fn cyclic_cumsum(increments: &[f64], i_min: i64) -> Vec<f64> {
    let n = increments.len();
    let start = i_min.rem_euclid(n as i64) as usize;
    let mut acc = 0.0;
    (0..n)
        .map(|j| {
            let value = acc;
            acc += increments[(start + j) % n];
            value
        })
        .collect()
}

fn masked_density(coeffs: &SpectralCoefficients, samples: &[f64]) -> Vec<f64> {
    let grid = &coeffs.grid;
    let n = samples.len();
    let start = grid.i_min.rem_euclid(n as i64) as usize;
    let (lo, hi) = grid.padded_support();
    let scale = n as f64 / grid.period;
    (0..n)
        .map(|j| {
            let xc = grid.centered_abscissa(j);
            if xc < lo || xc > hi {
                0.0
            } else {
                scale * samples[(start + j) % n]
            }
        })
        .collect()
}

fn tabulate(
    coeffs: &SpectralCoefficients,
    cdf: Vec<f64>,
    algorithm: Algorithm,
) -> DistributionEstimate {
    let grid = &coeffs.grid;
    DistributionEstimate {
        x: (0..grid.resolution).map(|j| grid.abscissa(j)).collect(),
        cdf,
        density: None,
        bound: None,
        algorithm,
    }
}

/// Cyclic cumulative sum of the density samples `f̃_i`.
pub fn cdf_algorithm1(coeffs: &SpectralCoefficients) -> DistributionEstimate {
    let cdf = cyclic_cumsum(&density_samples(coeffs), coeffs.grid.i_min);
    tabulate(coeffs, cdf, Algorithm::Alg1)
}

/// Per-cell masses of the corrected pipeline; they sum to one.
pub fn corrected_increments(coeffs: &SpectralCoefficients) -> Vec<f64> {
    let n = coeffs.g.len();
    let corrected: Vec<Complex64> = coeffs
        .g
        .iter()
        .enumerate()
        .map(|(k, g)| g * correction_factor(k, n))
        .collect();
    hermitian_samples(&corrected)
}

/// Same pipeline as [`cdf_algorithm1`] on `g_k·φ_k`; the result equals
/// [`cdf_closed_form`] at every grid point.
pub fn cdf_algorithm2(coeffs: &SpectralCoefficients) -> DistributionEstimate {
    let cdf = cyclic_cumsum(&corrected_increments(coeffs), coeffs.grid.i_min);
    tabulate(coeffs, cdf, Algorithm::Alg2)
}

/// Runs the chosen algorithm, optionally attaching `f̂` at the grid points.
pub fn reconstruct(
    coeffs: &SpectralCoefficients,
    algorithm: Algorithm,
    with_density: bool,
) -> DistributionEstimate {
    let mut estimate = match algorithm {
        Algorithm::Alg1 => cdf_algorithm1(coeffs),
        Algorithm::Alg2 => cdf_algorithm2(coeffs),
    };
    if with_density {
        estimate.density = Some(masked_density(coeffs, &density_samples(coeffs)));
    }
    estimate
}

/// `F̃(x) = ∫_{x0}^{x} (N/T)·f̃`, evaluated from its closed form, with `x`
/// in observation units.
pub fn cdf_closed_form(coeffs: &SpectralCoefficients, x: f64) -> Result<f64> {
    cdf_closed_form_centered(coeffs, x - coeffs.grid.shift)
}

/// [`cdf_closed_form`] at a centered abscissa in `[x0, x0 + T]`.
pub fn cdf_closed_form_centered(coeffs: &SpectralCoefficients, centered_x: f64) -> Result<f64> {
    let grid = &coeffs.grid;
    let n = grid.resolution;
    let x0 = grid.x0();
    let slack = 1e-12 * grid.period;
    if !(centered_x >= x0 - slack && centered_x <= x0 + grid.period + slack) {
        return Err(Error::OutsideWindow {
            x: centered_x + grid.shift,
            lo: x0 + grid.shift,
            hi: x0 + grid.period + grid.shift,
        });
    }
    let r = centered_x / grid.period;
    let r = r - r.round();
    let i_min = grid.i_min.rem_euclid(n as i64) as usize;
    let series: f64 = (1..n)
        .map(|k| {
            let at_x = unit_phasor(k as f64 * r);
            let at_x0 = unit_phasor(((i_min * k) % n) as f64 / n as f64);
            let denom = Complex64::new(0.0, 2.0 * PI * k as f64);
            (coeffs.g[k] * (at_x - at_x0) / denom).re
        })
        .sum();
    Ok((centered_x - x0) / grid.period + 2.0 * series)
}

/// [`cdf_closed_form`] at every grid point, using exact twiddle indices
/// instead of floating phases. `O(N²)`.
pub fn closed_form_on_grid(coeffs: &SpectralCoefficients) -> Vec<f64> {
    let grid = &coeffs.grid;
    let n = grid.resolution;
    let twiddle: Vec<Complex64> = (0..n).map(|j| unit_phasor(j as f64 / n as f64)).collect();
    let weights: Vec<Complex64> = (0..n)
        .map(|k| {
            if k == 0 {
                Complex64::new(0.0, 0.0)
            } else {
                coeffs.g[k] / Complex64::new(0.0, 2.0 * PI * k as f64)
            }
        })
        .collect();
    let start = grid.i_min.rem_euclid(n as i64) as usize;
    let phase_sum = |index: usize| -> f64 {
        let mut j = 0;
        let mut acc = 0.0;
        for w in &weights[1..] {
            j += index;
            if j >= n {
                j -= n;
            }
            acc += (w * twiddle[j]).re;
        }
        acc
    };
    let base = phase_sum(start);
    let at = |i: usize| i as f64 / n as f64 + 2.0 * (phase_sum((start + i) % n) - base);

    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(at).collect()
    }
    #[cfg(not(feature = "parallel"))]
    (0..n).map(at).collect()
}
