//! Distribution of a linear mixture `Z = Σ_j a_j X^[j]` of independent draws
//! from empirical samples.
//!
//! The characteristic function of `Z` is a product of empirical
//! characteristic functions ([`charfn`]); sampling it on a frequency grid
//! and inverting with a corrected discrete transform ([`inversion`]) yields
//! the CDF on an equispaced grid, with a uniform error bound at continuity
//! points ([`bound`]). [`oracle`] enumerates the atoms of `Z` for exact
//! verification on small problems.

pub mod bootstrap;
pub mod bound;
pub mod charfn;
pub mod error;
pub mod inversion;
pub mod model;
pub mod oracle;
mod phase;
pub mod quantile;

pub use error::{Error, Result};
pub use model::{
    build_grid, exact_support_bounds, Algorithm, Component, DistributionEstimate, GridSpec,
    MixtureSpec, Sample, SpectralCoefficients, DEFAULT_KAPPA,
};

/// Everything produced by [`compute_distribution`].
#[derive(Debug, Clone)]
pub struct Reconstruction {
    pub grid: GridSpec,
    /// `None` for a degenerate (single-point) `Z`.
    pub coefficients: Option<SpectralCoefficients>,
    pub estimate: DistributionEstimate,
}

/// Grid, coefficients and CDF for `spec` at resolution `resolution`.
///
/// A single-point `Z` skips the spectral stage and returns its exact step
/// CDF.
pub fn compute_distribution(
    spec: &MixtureSpec,
    resolution: usize,
    kappa: f64,
    algorithm: Algorithm,
    with_density: bool,
) -> Result<Reconstruction> {
    let grid = build_grid(spec, resolution, kappa)?;
    if grid.degenerate {
        return Ok(Reconstruction {
            grid,
            coefficients: None,
            estimate: DistributionEstimate::point_mass(grid.shift, resolution, algorithm),
        });
    }
    let coefficients = charfn::spectral_coefficients(spec, &grid)?;
    let estimate = inversion::reconstruct(&coefficients, algorithm, with_density);
    Ok(Reconstruction {
        grid,
        coefficients: Some(coefficients),
        estimate,
    })
}
