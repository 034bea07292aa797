//! Browser bindings for the demo page in `www/`.
//!
//! Each exported function is a thin wrapper over a plain Rust function of
//! the same shape, so the numerics can be tested natively.

use std::sync::Arc;

use mixcdf::bootstrap::mean_bootstrap_spec;
use mixcdf::bound::{error_bound, estimate_m2_from_density};
use mixcdf::inversion::{dirichlet_kernel, kernel_integral, KernelParams};
use mixcdf::quantile::quantiles;
use mixcdf::{compute_distribution, Algorithm, MixtureSpec, Result, Sample, DEFAULT_KAPPA};
use wasm_bindgen::prelude::*;

/// Tabulated CDF and density with quantiles and a heuristic error bound.
#[wasm_bindgen]
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    x: Vec<f64>,
    cdf: Vec<f64>,
    density: Vec<f64>,
    quantiles: Vec<f64>,
    bound: f64,
}

#[wasm_bindgen]
impl Curve {
    #[wasm_bindgen(getter)]
    pub fn x(&self) -> Vec<f64> {
        self.x.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn cdf(&self) -> Vec<f64> {
        self.cdf.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn density(&self) -> Vec<f64> {
        self.density.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn quantiles(&self) -> Vec<f64> {
        self.quantiles.clone()
    }

    /// Uniform error bound from the rule-of-thumb `M₂`; 0 for a point mass.
    #[wasm_bindgen(getter)]
    pub fn bound(&self) -> f64 {
        self.bound
    }
}

fn curve(
    spec: &MixtureSpec,
    resolution: usize,
    kappa: f64,
    algorithm: Algorithm,
    probs: &[f64],
) -> Result<Curve> {
    let rec = compute_distribution(spec, resolution, kappa, algorithm, true)?;
    let bound = match rec.coefficients {
        Some(_) => error_bound(
            estimate_m2_from_density(&rec.estimate, &rec.grid)?,
            resolution,
        )?,
        None => 0.0,
    };
    let quantiles = if probs.is_empty() {
        Vec::new()
    } else {
        quantiles(&rec.estimate, probs)?
    };
    let estimate = rec.estimate;
    let density = estimate
        .density
        .unwrap_or_else(|| vec![0.0; estimate.x.len()]);
    Ok(Curve {
        x: estimate.x,
        cdf: estimate.cdf,
        density,
        quantiles,
        bound,
    })
}

fn algorithm_from(code: u8) -> Algorithm {
    if code == 1 {
        Algorithm::Alg1
    } else {
        Algorithm::Alg2
    }
}

/// `Z = Σ_j a_j·X_j` with every `X_j` drawn from the same sample.
pub fn mixture_curve(
    values: &[f64],
    coefficients: &[f64],
    resolution: usize,
    kappa: f64,
    algorithm: u8,
    probs: &[f64],
) -> Result<Curve> {
    let sample = Arc::new(Sample::new(values.to_vec())?);
    let spec = MixtureSpec::shared(sample, coefficients)?;
    curve(&spec, resolution, kappa, algorithm_from(algorithm), probs)
}

/// Bootstrap distribution of the sample mean.
pub fn mean_bootstrap_curve(values: &[f64], resolution: usize, probs: &[f64]) -> Result<Curve> {
    let spec = mean_bootstrap_spec(Arc::new(Sample::new(values.to_vec())?));
    curve(&spec, resolution, DEFAULT_KAPPA, Algorithm::Alg2, probs)
}

/// `R_{N,T}` and its integral `J_{N,T}` over two periods.
#[wasm_bindgen]
#[derive(Debug, Clone, PartialEq)]
pub struct KernelCurves {
    x: Vec<f64>,
    kernel: Vec<f64>,
    integral: Vec<f64>,
}

#[wasm_bindgen]
impl KernelCurves {
    #[wasm_bindgen(getter)]
    pub fn x(&self) -> Vec<f64> {
        self.x.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn kernel(&self) -> Vec<f64> {
        self.kernel.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn integral(&self) -> Vec<f64> {
        self.integral.clone()
    }
}

/// `points` samples of both kernels on `[−T, T]`.
pub fn kernel_table(resolution: usize, period: f64, points: usize) -> Result<KernelCurves> {
    let params = KernelParams::new(resolution, period)?;
    let points = points.max(2);
    let x: Vec<f64> = (0..points)
        .map(|i| period * (2.0 * i as f64 / (points - 1) as f64 - 1.0))
        .collect();
    Ok(KernelCurves {
        kernel: x.iter().map(|&v| dirichlet_kernel(params, v)).collect(),
        integral: x.iter().map(|&v| kernel_integral(params, v)).collect(),
        x,
    })
}

fn js(e: mixcdf::Error) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen(js_name = mixtureCdf)]
pub fn mixture_cdf(
    values: &[f64],
    coefficients: &[f64],
    resolution: usize,
    kappa: f64,
    algorithm: u8,
    probs: &[f64],
) -> std::result::Result<Curve, JsError> {
    mixture_curve(values, coefficients, resolution, kappa, algorithm, probs).map_err(js)
}

#[wasm_bindgen(js_name = meanBootstrap)]
pub fn mean_bootstrap(
    values: &[f64],
    resolution: usize,
    probs: &[f64],
) -> std::result::Result<Curve, JsError> {
    mean_bootstrap_curve(values, resolution, probs).map_err(js)
}

#[wasm_bindgen(js_name = kernelCurves)]
pub fn kernel_curves(
    resolution: usize,
    period: f64,
    points: usize,
) -> std::result::Result<KernelCurves, JsError> {
    kernel_table(resolution, period, points).map_err(js)
}
