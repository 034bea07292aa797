use std::sync::Arc;

use mixcdf::bootstrap::mean_bootstrap_spec;
use mixcdf::bound::{estimate_m2_from_density, optimal_epsilon};
use mixcdf::inversion::cdf_algorithm2;
use mixcdf::oracle::{enumerate_atoms, exact_cdf, exact_m2, AtomSet};
use mixcdf::{
    build_grid, compute_distribution, exact_support_bounds, Algorithm, Component, MixtureSpec,
    Sample, DEFAULT_KAPPA,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn spec_from(samples: &[Vec<f64>], coefficients: &[f64]) -> MixtureSpec {
    MixtureSpec::new(
        samples
            .iter()
            .zip(coefficients)
            .map(|(values, &coefficient)| Component {
                coefficient,
                sample: Arc::new(Sample::new(values.clone()).unwrap()),
            })
            .collect(),
    )
    .unwrap()
}

fn random_spec(rng: &mut ChaCha8Rng, n: usize, m: usize) -> MixtureSpec {
    let samples: Vec<Vec<f64>> = (0..m)
        .map(|_| (0..n).map(|_| rng.random_range(-2.0..2.0)).collect())
        .collect();
    let coefficients: Vec<f64> = (0..m).map(|_| rng.random_range(-1.5..1.5)).collect();
    spec_from(&samples, &coefficients)
}

fn arb_spec() -> impl Strategy<Value = (Vec<Vec<f64>>, Vec<f64>)> {
    (1usize..=3, 2usize..=5).prop_flat_map(|(m, n)| {
        (
            prop::collection::vec(prop::collection::vec(-5.0f64..5.0, n), m),
            prop::collection::vec(prop_oneof![-2.0f64..-0.1, 0.1f64..2.0], m),
        )
    })
}

fn nondegenerate(samples: &[Vec<f64>]) -> bool {
    samples
        .iter()
        .any(|s| s.iter().any(|&v| (v - s[0]).abs() > 1e-3))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn grid_is_scale_equivariant((samples, a) in arb_spec(), lambda in 0.1f64..10.0, n in 8usize..2000) {
        prop_assume!(nondegenerate(&samples));
        let base = build_grid(&spec_from(&samples, &a), n, DEFAULT_KAPPA).unwrap();
        let scaled_a: Vec<f64> = a.iter().map(|c| c * lambda).collect();
        let scaled = build_grid(&spec_from(&samples, &scaled_a), n, DEFAULT_KAPPA).unwrap();
        let close = |u: f64, v: f64| (u - v).abs() <= 1e-12 * v.abs().max(base.period * lambda);
        prop_assert!(close(scaled.z_min, lambda * base.z_min));
        prop_assert!(close(scaled.z_max, lambda * base.z_max));
        prop_assert!(close(scaled.support_width, lambda * base.support_width));
        prop_assert!(close(scaled.period, lambda * base.period));
        prop_assert!(close(scaled.shift, lambda * base.shift));
        prop_assert_eq!(scaled.i_min, base.i_min);
    }

    #[test]
    fn centered_support_straddles_zero((samples, a) in arb_spec()) {
        prop_assume!(nondegenerate(&samples));
        let spec = spec_from(&samples, &a);
        let grid = build_grid(&spec, 64, DEFAULT_KAPPA).unwrap();
        prop_assert!(grid.z_min < 0.0 && grid.z_max > 0.0);
        prop_assert!((grid.z_min + grid.z_max).abs() <= 1e-12 * grid.support_width);
        let (lo, hi) = grid.padded_support();
        // i_min snaps to an integer within 1e-9 cells
        let slack = 1e-9 * grid.spacing();
        prop_assert!(grid.x0() <= lo + slack && lo < grid.x0() + grid.spacing() + slack);
        prop_assert!(hi >= grid.x0() + grid.period - slack);
        prop_assert!(grid.z_max < grid.x0() + grid.period);
    }

    #[test]
    fn support_bounds_are_extreme_atoms((samples, a) in arb_spec()) {
        let spec = spec_from(&samples, &a);
        let atoms = enumerate_atoms(&spec).unwrap();
        let (lo, hi) = exact_support_bounds(&spec);
        let tol = 1e-12 * lo.abs().max(hi.abs()).max(1.0);
        prop_assert!((atoms.min() - lo).abs() <= tol);
        prop_assert!((atoms.max() - hi).abs() <= tol);
    }

    #[test]
    fn cdf_is_shift_equivariant((raw, a) in arb_spec(), c_units in -51_200i32..51_200) {
        // dyadic data so that `v + c` is an exact shift
        let samples: Vec<Vec<f64>> = raw
            .iter()
            .map(|s| s.iter().map(|v| (v * 1024.0).round() / 1024.0).collect())
            .collect();
        let c = f64::from(c_units) / 1024.0;
        prop_assume!(nondegenerate(&samples));
        let n = 512;
        let shifted: Vec<Vec<f64>> = samples.iter().map(|s| s.iter().map(|v| v + c).collect()).collect();
        let base = compute_distribution(&spec_from(&samples, &a), n, DEFAULT_KAPPA, Algorithm::Alg2, false).unwrap();
        let moved = compute_distribution(&spec_from(&shifted, &a), n, DEFAULT_KAPPA, Algorithm::Alg2, false).unwrap();
        let offset = c * a.iter().sum::<f64>();
        let scale = base.grid.shift.abs() + offset.abs() + base.grid.period;
        prop_assert_eq!(base.grid.i_min, moved.grid.i_min);
        for i in 0..n {
            prop_assert!((moved.estimate.x[i] - base.estimate.x[i] - offset).abs() <= 1e-12 * scale);
            prop_assert!((moved.estimate.cdf[i] - base.estimate.cdf[i]).abs() <= 1e-12);
        }
    }
}

#[test]
fn rule_of_thumb_m2_is_usually_valid() {
    let mut rng = ChaCha8Rng::seed_from_u64(298);
    let n_res = 1000;
    let mut valid = 0;
    for _ in 0..100 {
        let spec = random_spec(&mut rng, 4, 3);
        let rec = compute_distribution(&spec, n_res, DEFAULT_KAPPA, Algorithm::Alg2, true).unwrap();
        let atoms = enumerate_atoms(&spec).unwrap();
        let heuristic = estimate_m2_from_density(&rec.estimate, &rec.grid).unwrap();
        let eps = optimal_epsilon(heuristic, n_res).unwrap();
        if heuristic >= exact_m2(&atoms, rec.grid.period, eps) {
            valid += 1;
        }
    }
    assert!(valid >= 95, "rule of thumb valid in {valid}/100 trials");
}

#[test]
fn mean_bootstrap_of_five_matches_exhaustive_resampling() {
    let values = vec![0.3, -1.2, 2.5, 0.9, 1.7];
    let mut means = Vec::with_capacity(3125);
    for code in 0..3125usize {
        let mut c = code;
        let mut total = 0.0;
        for _ in 0..5 {
            total += values[c % 5];
            c /= 5;
        }
        means.push(total / 5.0);
    }
    let brute = AtomSet::from_values(means);
    let spec = mean_bootstrap_spec(Arc::new(Sample::new(values).unwrap()));
    let atoms = enumerate_atoms(&spec).unwrap();
    assert_eq!(brute.len(), atoms.len());
    for (a, b) in brute.atoms().iter().zip(atoms.atoms()) {
        assert!((a.value - b.value).abs() <= 1e-12 * 2.5);
        assert_eq!(a.mass, b.mass);
    }
    // and the reconstruction approaches the exhaustive CDF between atoms
    let rec = compute_distribution(&spec, 4096, DEFAULT_KAPPA, Algorithm::Alg2, false).unwrap();
    let coeffs = rec.coefficients.unwrap();
    let est = cdf_algorithm2(&coeffs);
    let worst = est
        .x
        .iter()
        .zip(&est.cdf)
        .map(|(&x, &c)| (c - exact_cdf(&brute, x)).abs())
        .fold(0.0, f64::max);
    assert!(worst < 0.05, "{worst}");
}
