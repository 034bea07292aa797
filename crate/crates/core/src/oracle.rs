//! Ground truth by brute-force enumeration of the atoms of `Z`, plus an
//! independent quadrature of the Lévy inversion integral.

use std::f64::consts::PI;

use log::warn;
use serde::Serialize;

use crate::charfn::mixture_cf;
use crate::error::{Error, Result};
use crate::model::{GridSpec, MixtureSpec};
use crate::phase::unit_phasor;

/// Maximum number of tuples [`enumerate_atoms`] will visit.
pub const ENUMERATION_LIMIT: usize = 1_000_000;

/// Relative tolerance (to the largest |atom|) for merging equal sums.
pub const MERGE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Atom {
    pub value: f64,
    pub mass: f64,
}

/// Distinct values of `Z` with their probabilities, sorted by value.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomSet {
    atoms: Vec<Atom>,
    cumulative: Vec<f64>,
    total_count: usize,
}

impl AtomSet {
    /// Builds the set from raw (unmerged, unsorted) equally likely values.
    pub fn from_values(mut values: Vec<f64>) -> Self {
        let total_count = values.len();
        values.sort_by(f64::total_cmp);
        let scale = values
            .iter()
            .fold(0.0_f64, |m, v| m.max(v.abs()))
            .max(f64::MIN_POSITIVE);
        let tol = MERGE_TOLERANCE * scale;
        let mut groups: Vec<(f64, usize)> = Vec::new();
        for v in values {
            match groups.last_mut() {
                Some((head, count)) if v - *head <= tol => *count += 1,
                _ => groups.push((v, 1)),
            }
        }
        let atoms: Vec<Atom> = groups
            .into_iter()
            .map(|(value, count)| Atom {
                value,
                mass: count as f64 / total_count as f64,
            })
            .collect();
        let mut cumulative = Vec::with_capacity(atoms.len() + 1);
        cumulative.push(0.0);
        let mut acc = 0.0;
        for a in &atoms {
            acc += a.mass;
            cumulative.push(acc);
        }
        Self {
            atoms,
            cumulative,
            total_count,
        }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Size of the underlying multiset, before merging.
    pub fn total_count(&self) -> usize {
        self.total_count
    }

    pub fn min(&self) -> f64 {
        self.atoms[0].value
    }

    pub fn max(&self) -> f64 {
        self.atoms[self.atoms.len() - 1].value
    }

    /// Midpoints between consecutive distinct atoms.
    pub fn gap_midpoints(&self) -> Vec<f64> {
        self.atoms
            .windows(2)
            .map(|w| 0.5 * (w[0].value + w[1].value))
            .collect()
    }
}

pub fn enumerate_atoms(spec: &MixtureSpec) -> Result<AtomSet> {
    let count: f64 = spec
        .components()
        .iter()
        .map(|c| c.sample.len() as f64)
        .product();
    if count > ENUMERATION_LIMIT as f64 {
        return Err(Error::EnumerationTooLarge {
            count,
            limit: ENUMERATION_LIMIT,
        });
    }
    let mut sums = vec![0.0];
    for c in spec.components() {
        sums = sums
            .iter()
            .flat_map(|&z| {
                c.sample
                    .values()
                    .iter()
                    .map(move |&x| z + c.coefficient * x)
            })
            .collect();
    }
    Ok(AtomSet::from_values(sums))
}

/// `F_Z(x) = Σ_{z ≤ x} p_z`.
pub fn exact_cdf(atoms: &AtomSet, x: f64) -> f64 {
    let below = atoms.atoms.partition_point(|a| a.value <= x);
    atoms.cumulative[below]
}

/// Largest probability held by a closed window of the given width.
pub fn max_window_mass(atoms: &AtomSet, width: f64) -> f64 {
    let a = &atoms.atoms;
    let mut best = 0.0_f64;
    let mut right = 0;
    for left in 0..a.len() {
        if right < left {
            right = left;
        }
        while right + 1 < a.len() && a[right + 1].value - a[left].value <= width {
            right += 1;
        }
        best = best.max(atoms.cumulative[right + 1] - atoms.cumulative[left]);
    }
    best
}

/// `max_{z0} P(|Z − z0| ≤ T·ε*) / ε*`: the smallest `M₂` satisfying the
/// window-mass condition at this `ε*`. Some optimal window has its left
/// edge on an atom, so a sweep over left edges is exact.
pub fn exact_m2(atoms: &AtomSet, period: f64, epsilon_star: f64) -> f64 {
    max_window_mass(atoms, 2.0 * period * epsilon_star) / epsilon_star
}

/// Trapezoid quadrature of
/// `F(x) = (1/π)∫_0^∞ Im[(e^{2πixν} − e^{2πix0ν})·G(ν)]/ν dν`
/// truncated at `nu_max`, with `x0` the grid's window start.
///
/// Only meaningful where `F_Z` is continuous.
pub fn levy_inversion_quadrature(
    spec: &MixtureSpec,
    grid: &GridSpec,
    x: f64,
    nu_max: f64,
    steps: usize,
) -> f64 {
    let x0 = grid.x0() + grid.shift;
    let h = nu_max / steps as f64;
    let integrand = |nu: f64| -> f64 {
        if nu == 0.0 {
            return 2.0 * PI * (x - x0);
        }
        let g = mixture_cf(spec, nu);
        ((unit_phasor(x * nu) - unit_phasor(x0 * nu)) * g).im / nu
    };
    let tail = mixture_cf(spec, nu_max).norm();
    if tail > 0.01 {
        warn!("|G(nu_max)| = {tail:.3}: the truncated Lévy integral may not have converged");
    }
    let interior: f64 = (1..steps).map(|j| integrand(j as f64 * h)).sum();
    let total = h * (0.5 * integrand(0.0) + interior + 0.5 * integrand(nu_max));
    total / PI
}
