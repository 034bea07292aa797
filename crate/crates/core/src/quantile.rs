//! Quantiles from a tabulated CDF.

use crate::error::{Error, Result};
use crate::model::DistributionEstimate;

/// Running maximum, which removes the small oscillations of the raw CDF.
pub fn monotone_repair(cdf: &[f64]) -> Vec<f64> {
    let mut high = f64::NEG_INFINITY;
    cdf.iter()
        .map(|&c| {
            high = high.max(c);
            high
        })
        .collect()
}

/// Linearly interpolated crossing of each `p` on the repaired CDF,
/// clamped to the grid.
pub fn quantiles(estimate: &DistributionEstimate, probs: &[f64]) -> Result<Vec<f64>> {
    if estimate.is_empty() {
        return Err(Error::param("estimate", "no grid points"));
    }
    let cdf = monotone_repair(&estimate.cdf);
    let x = &estimate.x;
    probs
        .iter()
        .map(|&p| {
            if !(p > 0.0 && p < 1.0) {
                return Err(Error::param(
                    "quantiles",
                    format!("{p} is not strictly inside (0, 1)"),
                ));
            }
            let j = cdf.partition_point(|&c| c < p);
            Ok(if j == 0 {
                x[0]
            } else if j == cdf.len() {
                x[x.len() - 1]
            } else {
                let t = (p - cdf[j - 1]) / (cdf[j] - cdf[j - 1]);
                x[j - 1] + t * (x[j] - x[j - 1])
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Algorithm;
    use proptest::prelude::*;

    fn estimate(cdf: Vec<f64>) -> DistributionEstimate {
        DistributionEstimate {
            x: (0..cdf.len()).map(|i| i as f64).collect(),
            cdf,
            density: None,
            bound: None,
            algorithm: Algorithm::Alg2,
        }
    }

    #[test]
    fn interpolates() {
        let e = estimate(vec![0.0, 0.2, 0.6, 1.0]);
        let q = quantiles(&e, &[0.1, 0.4, 0.6]).unwrap();
        assert_eq!(q, vec![0.5, 1.5, 2.0]);
    }

    #[test]
    fn clamps_to_grid() {
        let e = estimate(vec![0.01, 0.5, 0.98]);
        assert_eq!(quantiles(&e, &[1e-9, 0.999]).unwrap(), vec![0.0, 2.0]);
    }

    #[test]
    fn repairs_dips() {
        let e = estimate(vec![0.0, 0.3, 0.25, 0.3, 1.0]);
        assert_eq!(monotone_repair(&e.cdf), vec![0.0, 0.3, 0.3, 0.3, 1.0]);
        assert_eq!(quantiles(&e, &[0.65]).unwrap(), vec![3.5]);
        // stored values untouched
        assert_eq!(e.cdf[2], 0.25);
    }

    #[test]
    fn rejects_out_of_range() {
        let e = estimate(vec![0.0, 1.0]);
        assert!(quantiles(&e, &[0.0]).is_err());
        assert!(quantiles(&e, &[1.0]).is_err());
        assert!(quantiles(&e, &[f64::NAN]).is_err());
    }

    proptest! {
        #[test]
        fn monotone_in_p(
            raw in proptest::collection::vec(-0.05f64..1.05, 2..60),
            p1 in 0.001f64..0.999,
            p2 in 0.001f64..0.999,
        ) {
            let e = estimate(raw);
            let (lo, hi) = if p1 <= p2 { (p1, p2) } else { (p2, p1) };
            let q = quantiles(&e, &[lo, hi]).unwrap();
            prop_assert!(q[0] <= q[1]);
            prop_assert!(q[0] >= e.x[0] && q[1] <= e.x[e.x.len() - 1]);
        }
    }
}
