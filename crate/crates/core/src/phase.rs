//! Unit phasors with argument reduction.

use std::f64::consts::TAU;

use num_complex::Complex64;

/// `exp(2πi·cycles)`, reducing `cycles` to `[-0.5, 0.5]` first so large
/// arguments keep their fractional precision.
#[inline]
pub(crate) fn unit_phasor(cycles: f64) -> Complex64 {
    let r = cycles - cycles.round();
    let (s, c) = (TAU * r).sin_cos();
    Complex64::new(c, s)
}

/// Compensation-free pairwise summation; rounding error grows as `log n`.
pub(crate) fn pairwise_sum(terms: &[Complex64]) -> Complex64 {
    const LEAF: usize = 16;
    if terms.len() <= LEAF {
        return terms
            .iter()
            .fold(Complex64::new(0.0, 0.0), |acc, &t| acc + t);
    }
    let (left, right) = terms.split_at(terms.len() / 2);
    pairwise_sum(left) + pairwise_sum(right)
}
