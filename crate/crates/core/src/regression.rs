// SPDX-License-Identifier: Apache-2.0

//! Ordinary least squares for the log-log slope fits.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegressionFit {
    pub slope: f64,
    pub intercept: f64,
    pub n_points: usize,
    pub residual_ss: f64,
}

/// Fits `y = slope * x + intercept` minimizing squared vertical residuals.
///
/// Means and co-moments are accumulated with Welford-style updates, so
/// large offsets in either coordinate do not cancel catastrophically.
pub fn fit<I>(points: I) -> Result<RegressionFit>
where
    I: IntoIterator<Item = (f64, f64)>,
{
    let mut n = 0usize;
    let (mut mean_x, mut mean_y) = (0.0f64, 0.0f64);
    let (mut sxx, mut sxy, mut syy) = (0.0f64, 0.0f64, 0.0f64);
    for (x, y) in points {
        n += 1;
        let dx = x - mean_x;
        let dy = y - mean_y;
        mean_x += dx / n as f64;
        mean_y += dy / n as f64;
        // uses the pre-update delta on one side and post-update on the other
        sxx += dx * (x - mean_x);
        sxy += dx * (y - mean_y);
        syy += dy * (y - mean_y);
    }
    if n < 2 {
        return Err(Error::InsufficientPoints { points: n });
    }
    if sxx <= 0.0 || !sxx.is_finite() {
        return Err(Error::DegenerateRegression);
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let residual_ss = (syy - slope * sxy).max(0.0);
    if !slope.is_finite() || !intercept.is_finite() {
        return Err(Error::DegenerateRegression);
    }
    Ok(RegressionFit {
        slope,
        intercept,
        n_points: n,
        residual_ss,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn exact_line() {
        let f = fit((0..10).map(|i| (i as f64, 3.0 * i as f64 - 2.0))).unwrap();
        assert_relative_eq!(f.slope, 3.0, epsilon = 1e-12);
        assert_relative_eq!(f.intercept, -2.0, epsilon = 1e-12);
        assert_eq!(f.n_points, 10);
        assert!(f.residual_ss < 1e-18);
    }

    #[test]
    fn residuals() {
        // (0,0),(1,2),(2,1): slope 0.5, intercept 0.5, residuals -0.5, 1, -0.5
        let f = fit([(0.0, 0.0), (1.0, 2.0), (2.0, 1.0)]).unwrap();
        assert_relative_eq!(f.slope, 0.5, epsilon = 1e-12);
        assert_relative_eq!(f.intercept, 0.5, epsilon = 1e-12);
        assert_relative_eq!(f.residual_ss, 1.5, epsilon = 1e-12);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(
            fit([(1.0, 1.0)]),
            Err(Error::InsufficientPoints { points: 1 })
        ));
        assert!(matches!(
            fit([(1.0, 1.0), (1.0, 2.0)]),
            Err(Error::DegenerateRegression)
        ));
    }

    proptest! {
        #[test]
        fn recovers_generating_line(
            a in -50.0f64..50.0,
            b in -1e3f64..1e3,
            xs in proptest::collection::btree_set(-1000i32..1000, 2..40),
        ) {
            let pts: Vec<(f64, f64)> = xs.iter().map(|&x| {
                let x = f64::from(x) / 10.0;
                (x, a * x + b)
            }).collect();
            let f = fit(pts).unwrap();
            prop_assert!((f.slope - a).abs() <= 1e-9 * (1.0 + a.abs()));
            prop_assert!((f.intercept - b).abs() <= 1e-8 * (1.0 + b.abs() + a.abs() * 100.0));
        }
    }
}
