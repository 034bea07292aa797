//! Empirical characteristic functions and their product over the mixture.
//!
//! The convention throughout is `G(ν) = E exp(−2πi·Z·ν)`; the usual
//! characteristic function `E exp(itZ)` is `G(−t/2π)`.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{GridSpec, MixtureSpec, Sample, SpectralCoefficients};
use crate::phase::{pairwise_sum, unit_phasor};

/// Number of consecutive frequencies advanced by phasor recurrence before
/// the phasors are re-seeded from trigonometry. Block boundaries are fixed,
/// so the output does not depend on how blocks are spread over threads.
pub const RESEED_INTERVAL: usize = 512;

/// `(1/n)·Σ_i exp(−2πi·a·X_i·ν)`.
pub fn component_cf(sample: &Sample, coefficient: f64, nu: f64) -> Complex64 {
    let terms: Vec<Complex64> = sample
        .values()
        .iter()
        .map(|&x| unit_phasor(-coefficient * x * nu))
        .collect();
    pairwise_sum(&terms) / sample.len() as f64
}

/// `G(ν) = Π_j G_{a_j X^[j]}(ν)`, multiplied in component order.
pub fn mixture_cf(spec: &MixtureSpec, nu: f64) -> Complex64 {
    spec.components()
        .iter()
        .fold(Complex64::new(1.0, 0.0), |acc, c| {
            acc * component_cf(&c.sample, c.coefficient, nu)
        })
}

/// Components sharing a coefficient and sample have identical factors;
/// each distinct factor is evaluated once.
struct Factor {
    coefficient: f64,
    sample: Arc<Sample>,
}

impl Factor {
    /// Factor values for `k = k0 .. k0 + len`, centered on the sample
    /// midpoint.
    fn block_values(&self, k0: usize, len: usize, delta_nu: f64) -> Vec<Complex64> {
        let center = self.sample.center();
        let n = self.sample.len() as f64;
        let steps: Vec<f64> = self
            .sample
            .values()
            .iter()
            .map(|&x| -self.coefficient * (x - center) * delta_nu)
            .collect();
        let mut phasors: Vec<Complex64> =
            steps.iter().map(|&s| unit_phasor(s * k0 as f64)).collect();
        let step_phasors: Vec<Complex64> = steps.iter().map(|&s| unit_phasor(s)).collect();
        let mut out = Vec::with_capacity(len);
        for _ in 0..len {
            out.push(pairwise_sum(&phasors) / n);
            for (p, s) in phasors.iter_mut().zip(&step_phasors) {
                *p *= s;
            }
        }
        out
    }
}

fn factorize(spec: &MixtureSpec) -> (Vec<Factor>, Vec<usize>) {
    let mut factors: Vec<Factor> = Vec::new();
    let mut order = Vec::with_capacity(spec.len());
    for c in spec.components() {
        let found = factors.iter().position(|f| {
            f.coefficient.to_bits() == c.coefficient.to_bits()
                && (Arc::ptr_eq(&f.sample, &c.sample) || f.sample == c.sample)
        });
        let index = found.unwrap_or_else(|| {
            factors.push(Factor {
                coefficient: c.coefficient,
                sample: Arc::clone(&c.sample),
            });
            factors.len() - 1
        });
        order.push(index);
    }
    (factors, order)
}

/// `g_k = exp(2πi·s·kΔν)·G(kΔν)` for `k = 0..N`, where `s` is the grid's
/// centering shift, i.e. the spectrum of `Z − s`.
///
/// Each sample is centered on its own midpoint before its phases are
/// formed; the leftover shift `s − Σ a_j·center_j` is applied as a single
/// phase. Cost is `O(n·N)` per distinct factor.
pub fn spectral_coefficients(spec: &MixtureSpec, grid: &GridSpec) -> Result<SpectralCoefficients> {
    if grid.degenerate {
        return Err(Error::DegenerateGrid);
    }
    if !(grid.delta_nu.is_finite() && grid.delta_nu > 0.0 && grid.shift.is_finite()) {
        return Err(Error::param("grid", "non-finite frequency step or shift"));
    }
    let (factors, order) = factorize(spec);
    let residual_cycles = (grid.shift - spec.component_center_sum()) * grid.delta_nu;
    if !residual_cycles.is_finite() {
        return Err(Error::NonFiniteBounds);
    }
    let delta_nu = grid.delta_nu;
    let fill = |block_index: usize, block: &mut [Complex64]| {
        let k0 = block_index * RESEED_INTERVAL;
        let values: Vec<Vec<Complex64>> = factors
            .iter()
            .map(|f| f.block_values(k0, block.len(), delta_nu))
            .collect();
        for (offset, out) in block.iter_mut().enumerate() {
            let product = order.iter().fold(Complex64::new(1.0, 0.0), |acc, &fi| {
                acc * values[fi][offset]
            });
            *out = product * unit_phasor(residual_cycles * (k0 + offset) as f64);
        }
    };

    let mut g = vec![Complex64::new(0.0, 0.0); grid.resolution];
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        g.par_chunks_mut(RESEED_INTERVAL)
            .enumerate()
            .for_each(|(b, block)| fill(b, block));
    }
    #[cfg(not(feature = "parallel"))]
    g.chunks_mut(RESEED_INTERVAL)
        .enumerate()
        .for_each(|(b, block)| fill(b, block));
    g[0] = Complex64::new(1.0, 0.0);

    Ok(SpectralCoefficients { g, grid: *grid })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::build_grid;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::TAU;

    fn sample(v: &[f64]) -> Arc<Sample> {
        Arc::new(Sample::new(v.to_vec()).unwrap())
    }

    /// Straight trig evaluation of `exp(2πi s kΔν)·Π_j (1/n)Σ_i exp(−2πi a_j X_i kΔν)`.
    fn direct_coefficient(spec: &MixtureSpec, grid: &GridSpec, k: usize) -> Complex64 {
        let nu = k as f64 * grid.delta_nu;
        let mut acc = Complex64::from_polar(1.0, TAU * grid.shift * nu);
        for c in spec.components() {
            let s: Complex64 = c
                .sample
                .values()
                .iter()
                .map(|&x| Complex64::from_polar(1.0, -TAU * c.coefficient * x * nu))
                .sum();
            acc *= s / c.sample.len() as f64;
        }
        acc
    }

    fn random_spec(rng: &mut ChaCha8Rng, n: usize, m: usize) -> MixtureSpec {
        let s = sample(
            &(0..n)
                .map(|_| rng.random_range(-3.0..3.0))
                .collect::<Vec<_>>(),
        );
        let a: Vec<f64> = (0..m).map(|_| rng.random_range(-2.0..2.0)).collect();
        MixtureSpec::shared(s, &a).unwrap()
    }

    #[test]
    fn component_cf_at_zero_is_one() {
        let s = sample(&[0.3, -1.2, 4.0]);
        assert_eq!(component_cf(&s, 2.5, 0.0), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn antipodal_phasors_cancel() {
        assert!(component_cf(&sample(&[-1.0, 1.0]), 1.0, 0.25).norm() < 1e-15);
        assert!(component_cf(&sample(&[0.0, 1.0]), 1.0, 0.5).norm() < 1e-15);
    }

    #[test]
    fn mixture_cf_is_product() {
        let s = sample(&[0.0, 1.0]);
        let spec = MixtureSpec::shared(Arc::clone(&s), &[0.5, 0.5]).unwrap();
        let single = component_cf(&s, 0.5, 1.0);
        assert_eq!(
            mixture_cf(&spec, 1.0),
            Complex64::new(1.0, 0.0) * single * single
        );
        // atoms 0, 0.5, 0.5, 1 with mass 1/4 each
        let by_atoms: Complex64 = [0.0, 0.5, 0.5, 1.0]
            .iter()
            .map(|&z| Complex64::from_polar(0.25, -TAU * z))
            .sum();
        assert!((mixture_cf(&spec, 1.0) - by_atoms).norm() < 1e-15);
        assert_eq!(mixture_cf(&spec, 0.0), Complex64::new(1.0, 0.0));

        let one = MixtureSpec::shared(Arc::clone(&s), &[0.7]).unwrap();
        assert_eq!(mixture_cf(&one, 0.3), component_cf(&s, 0.7, 0.3));
    }

    #[test]
    fn hermitian_symmetry() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let spec = random_spec(&mut rng, 5, 3);
        for &nu in &[0.1, 0.77, 3.2] {
            let d = mixture_cf(&spec, -nu) - mixture_cf(&spec, nu).conj();
            assert!(d.norm() < 1e-14);
        }
    }

    #[test]
    fn single_atom_has_unit_modulus() {
        let spec = MixtureSpec::shared(sample(&[2.0]), &[1.0]).unwrap();
        assert!(build_grid(&spec, 64, 1.1).unwrap().degenerate);

        // constant samples with a non-degenerate grid borrowed from another spec
        let other = MixtureSpec::shared(sample(&[0.0, 1.0]), &[1.0]).unwrap();
        let grid = build_grid(&other, 64, 1.1).unwrap();
        let c = spectral_coefficients(&spec, &grid).unwrap();
        for (k, gk) in c.g.iter().enumerate() {
            assert!((gk.norm() - 1.0).abs() < 1e-12);
            let expect =
                Complex64::from_polar(1.0, TAU * (grid.shift - 2.0) * k as f64 * grid.delta_nu);
            assert!((gk - expect).norm() < 1e-10);
        }
    }

    #[test]
    fn g0_is_exactly_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let spec = random_spec(&mut rng, 7, 2);
        let grid = build_grid(&spec, 100, 1.3).unwrap();
        let c = spectral_coefficients(&spec, &grid).unwrap();
        assert_eq!(c.g[0], Complex64::new(1.0, 0.0));
        assert_eq!(c.g.len(), 100);
    }

    #[test]
    fn recurrence_matches_direct_trig() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..4 {
            let spec = random_spec(&mut rng, 6, 3);
            let grid = build_grid(&spec, 1 << 16, 1.1).unwrap();
            let c = spectral_coefficients(&spec, &grid).unwrap();
            let worst = (0..grid.resolution)
                .step_by(37)
                .chain(grid.resolution - 5..grid.resolution)
                .map(|k| (c.g[k] - direct_coefficient(&spec, &grid, k)).norm())
                .fold(0.0, f64::max);
            assert!(worst <= 1e-10, "drift {worst}");
            assert!(c.g.iter().all(|g| g.norm() <= 1.0 + 1e-12));
        }
    }

    #[test]
    fn coefficients_match_mixture_cf_with_shift() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let spec = random_spec(&mut rng, 4, 2);
        let grid = build_grid(&spec, 1500, 1.2).unwrap();
        let c = spectral_coefficients(&spec, &grid).unwrap();
        for k in [1, 2, 511, 512, 513, 1499] {
            let nu = k as f64 * grid.delta_nu;
            let expect = Complex64::from_polar(1.0, TAU * grid.shift * nu) * mixture_cf(&spec, nu);
            assert!((c.g[k] - expect).norm() <= 1e-10 * expect.norm().max(1e-3));
        }
    }

    #[test]
    fn distinct_samples_per_component() {
        let spec = MixtureSpec::new(vec![
            crate::model::Component {
                coefficient: 1.0,
                sample: sample(&[0.0, 1.0, 3.0]),
            },
            crate::model::Component {
                coefficient: -0.5,
                sample: sample(&[2.0, 2.5]),
            },
        ])
        .unwrap();
        let grid = build_grid(&spec, 300, 1.1).unwrap();
        let c = spectral_coefficients(&spec, &grid).unwrap();
        for k in 0..300 {
            assert!((c.g[k] - direct_coefficient(&spec, &grid, k)).norm() < 1e-12);
        }
    }

    #[test]
    fn scale_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let spec = random_spec(&mut rng, 5, 2);
        let lambda = 3.7;
        let scaled = MixtureSpec::new(
            spec.components()
                .iter()
                .map(|c| crate::model::Component {
                    coefficient: c.coefficient * lambda,
                    sample: Arc::clone(&c.sample),
                })
                .collect(),
        )
        .unwrap();
        let g1 = build_grid(&spec, 700, 1.1).unwrap();
        let g2 = build_grid(&scaled, 700, 1.1).unwrap();
        let c1 = spectral_coefficients(&spec, &g1).unwrap();
        let c2 = spectral_coefficients(&scaled, &g2).unwrap();
        let worst =
            c1.g.iter()
                .zip(&c2.g)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
        assert!(worst < 1e-12, "{worst}");
    }

    #[test]
    fn degenerate_grid_rejected() {
        let spec = MixtureSpec::shared(sample(&[1.0, 1.0]), &[1.0]).unwrap();
        let grid = build_grid(&spec, 8, 1.1).unwrap();
        assert_eq!(
            spectral_coefficients(&spec, &grid),
            Err(Error::DegenerateGrid)
        );
    }
}
