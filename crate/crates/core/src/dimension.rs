// SPDX-License-Identifier: Apache-2.0

//! Box measures around a node and the dimensions estimated from them.
//!
//! For a center `i` and box size `l = 1..=xi_i` (the node's eccentricity),
//! `N_i(l)` counts the nodes within hop distance `l` and the box measure is
//! `mu_i(l) = N_i(l) / |N|`. The multi-local dimension `MLD_i(q)` is the OLS
//! slope of a q-dependent transform of `mu` against `ln l`:
//!
//! | q           | regressed value              |
//! |-------------|------------------------------|
//! | q = 1       | `mu ln mu`                   |
//! | q = 0       | `ln mu / (0 - 1)` (`Z = mu`) |
//! | otherwise   | `q ln mu / (q - 1)`          |
//!
//! Smaller values mark more influential nodes. The local dimension is the
//! slope of `ln N_i(l)` against `ln l`, so `MLD_i(0) = -LD_i` up to rounding.

use rayon::prelude::*;
use serde::Serialize;

use crate::distance::DistanceMatrix;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::regression::{self, RegressionFit};
use crate::score::{Measure, ScoreVector};

/// Node counts of the boxes centred on one node, for sizes `1..=xi`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoxSeries {
    center: usize,
    total_nodes: usize,
    inclusive: bool,
    counts: Vec<usize>,
}

impl BoxSeries {
    /// With `inclusive`, box `l` holds nodes at distance `<= l`; otherwise
    /// `< l`. The center is covered at every size either way.
    pub fn new(d: &DistanceMatrix, center: usize, inclusive: bool) -> Result<Self> {
        let xi = d
            .eccentricity(center)
            .ok_or(Error::NoLocalityScale { node: center })? as usize;
        // histogram of shell sizes, then prefix sums
        let mut shells = vec![0usize; xi + 1];
        for dist in d.row(center).flatten() {
            shells[dist as usize] += 1;
        }
        let mut counts = Vec::with_capacity(xi);
        let mut covered = shells[0];
        for &shell in &shells[1..] {
            if inclusive {
                covered += shell;
                counts.push(covered);
            } else {
                counts.push(covered);
                covered += shell;
            }
        }
        Ok(Self {
            center,
            total_nodes: d.node_count(),
            inclusive,
            counts,
        })
    }

    pub fn center(&self) -> usize {
        self.center
    }

    pub fn is_inclusive(&self) -> bool {
        self.inclusive
    }

    /// Largest box size, the center's eccentricity.
    pub fn max_size(&self) -> usize {
        self.counts.len()
    }

    /// `N(l)` for `l = 1..=max_size`.
    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn count(&self, size: usize) -> usize {
        self.counts[size - 1]
    }

    /// `(l, mu(l))` pairs.
    pub fn measures(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        let n = self.total_nodes as f64;
        self.counts
            .iter()
            .enumerate()
            .map(move |(k, &c)| (k + 1, c as f64 / n))
    }

    fn ensure_regressable(&self) -> Result<()> {
        if self.counts.len() < 2 {
            return Err(Error::InsufficientPoints {
                points: self.counts.len(),
            });
        }
        Ok(())
    }
}

/// `Z(q, mu)`: `mu^q` in general, `mu ln mu` at q = 1 and `mu` itself at q = 0.
pub fn partition_value(mu: f64, q: f64) -> Result<f64> {
    if !(mu > 0.0 && mu <= 1.0) {
        return Err(Error::Domain(mu));
    }
    Ok(if q == 1.0 {
        mu * mu.ln()
    } else if q == 0.0 {
        mu
    } else {
        mu.powf(q)
    })
}

/// The value regressed against `ln l` for a given measure `mu`.
fn regressand(mu: f64, q: f64) -> f64 {
    let ln_mu = mu.ln();
    if q == 1.0 {
        mu * ln_mu
    } else if q == 0.0 {
        -ln_mu
    } else {
        // ln(mu^q) / (q - 1), taken in log space
        q * ln_mu / (q - 1.0)
    }
}

/// Full regression behind [`mld`].
pub fn mld_fit(series: &BoxSeries, q: f64) -> Result<RegressionFit> {
    series.ensure_regressable()?;
    let measures: Vec<f64> = series.measures().map(|(_, mu)| mu).collect();
    mld_fit_measures(&measures, q)
}

/// MLD regression over an explicit measure series, `measures[k] = mu(k + 1)`.
pub fn mld_fit_measures(measures: &[f64], q: f64) -> Result<RegressionFit> {
    if !q.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "q must be finite, got {q}"
        )));
    }
    if let Some(&bad) = measures.iter().find(|&&mu| !(mu > 0.0 && mu <= 1.0)) {
        return Err(Error::Domain(bad));
    }
    regression::fit(
        measures
            .iter()
            .enumerate()
            .map(|(k, &mu)| (((k + 1) as f64).ln(), regressand(mu, q))),
    )
}

pub fn mld(series: &BoxSeries, q: f64) -> Result<f64> {
    mld_fit(series, q).map(|f| f.slope)
}

pub fn local_dimension_fit(series: &BoxSeries) -> Result<RegressionFit> {
    series.ensure_regressable()?;
    regression::fit(
        series
            .counts()
            .iter()
            .enumerate()
            .map(|(k, &c)| (((k + 1) as f64).ln(), (c as f64).ln())),
    )
}

pub fn local_dimension(series: &BoxSeries) -> Result<f64> {
    local_dimension_fit(series).map(|f| f.slope)
}

/// Point-wise local dimension `r * b(r) / B(r)` at one radius, where `b(r)`
/// is the shell at exactly distance `r`. Diagnostic only; rankings use the
/// regression slope. Requires an inclusive series.
pub fn local_dimension_at(series: &BoxSeries, radius: usize) -> Result<f64> {
    if !series.is_inclusive() {
        return Err(Error::InvalidParameter(
            "point-wise local dimension needs inclusive boxes".into(),
        ));
    }
    if radius == 0 || radius > series.max_size() {
        return Err(Error::InvalidParameter(format!(
            "radius {radius} outside 1..={}",
            series.max_size()
        )));
    }
    let ball = series.count(radius);
    let inner = if radius == 1 {
        1
    } else {
        series.count(radius - 1)
    };
    Ok(radius as f64 * (ball - inner) as f64 / ball as f64)
}

/// Scores every node with `Mld { q }` or `Ld`. Nodes with eccentricity
/// below 2 (isolated, or adjacent to everything they reach) are flagged.
pub fn score_all(
    g: &Graph,
    d: &DistanceMatrix,
    measure: &Measure,
    inclusive: bool,
) -> Result<ScoreVector> {
    let per_node = |i: usize| -> Option<f64> {
        let series = BoxSeries::new(d, i, inclusive).ok()?;
        match measure {
            Measure::Mld { q } => mld(&series, *q).ok(),
            Measure::Ld => local_dimension(&series).ok(),
            _ => unreachable!("checked below"),
        }
    };
    match measure {
        Measure::Mld { q } if !q.is_finite() => {
            return Err(Error::InvalidParameter(format!(
                "q must be finite, got {q}"
            )))
        }
        Measure::Mld { .. } | Measure::Ld => {}
        other => {
            return Err(Error::InvalidParameter(format!(
                "{other} is not a dimension measure"
            )))
        }
    }
    let scores: Vec<Option<f64>> = (0..g.node_count()).into_par_iter().map(per_node).collect();
    ScoreVector::for_measure(measure.clone(), g.labels().to_vec(), scores)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use approx::assert_relative_eq;

    fn series(g: &Graph, i: usize) -> BoxSeries {
        BoxSeries::new(&DistanceMatrix::compute(g), i, true).unwrap()
    }

    #[test]
    fn cycle_boxes_grow_by_two() {
        let s = series(&generators::cycle(9), 3);
        assert_eq!(s.max_size(), 4);
        for l in 1..=4 {
            assert_eq!(s.count(l), 2 * l + 1);
        }
    }

    #[test]
    fn star_center_box() {
        let s = series(&generators::star(5), 0);
        assert_eq!(s.max_size(), 1);
        assert_eq!(s.count(1), 6);
        assert!(matches!(
            mld(&s, 2.0),
            Err(Error::InsufficientPoints { points: 1 })
        ));
    }

    #[test]
    fn exclusive_boxes_lag_by_one_shell() {
        let g = generators::path(5);
        let d = DistanceMatrix::compute(&g);
        let s = BoxSeries::new(&d, 0, false).unwrap();
        assert_eq!(s.counts(), &[1, 2, 3, 4]);
        let s = BoxSeries::new(&d, 0, true).unwrap();
        assert_eq!(s.counts(), &[2, 3, 4, 5]);
    }

    #[test]
    fn isolated_node_has_no_scale() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        let d = DistanceMatrix::compute(&g);
        assert!(matches!(
            BoxSeries::new(&d, 2, true),
            Err(Error::NoLocalityScale { node: 2 })
        ));
    }

    #[test]
    fn partition_values() {
        assert_eq!(partition_value(1.0, 3.0).unwrap(), 1.0);
        assert_eq!(partition_value(1.0, 1.0).unwrap(), 0.0);
        assert_relative_eq!(partition_value(0.5, 2.0).unwrap(), 0.25);
        assert_eq!(partition_value(0.3, 0.0).unwrap(), 0.3);
        assert!(matches!(partition_value(0.0, 2.0), Err(Error::Domain(_))));
        assert!(matches!(partition_value(1.5, 2.0), Err(Error::Domain(_))));
    }

    #[test]
    fn regressand_matches_partition_value() {
        for &mu in &[0.05, 0.3, 0.9, 1.0] {
            for &q in &[-2.0, 0.5, 2.0, 3.0] {
                let via_z = partition_value(mu, q).unwrap().ln() / (q - 1.0);
                assert_relative_eq!(regressand(mu, q), via_z, epsilon = 1e-12);
            }
            assert_eq!(regressand(mu, 1.0), partition_value(mu, 1.0).unwrap());
            assert_relative_eq!(
                regressand(mu, 0.0),
                partition_value(mu, 0.0).unwrap().ln() / -1.0
            );
        }
    }

    #[test]
    fn q_zero_is_negated_local_dimension() {
        let g = generators::gnp(40, 0.08, 7);
        let d = DistanceMatrix::compute(&g);
        for i in 0..g.node_count() {
            let Ok(s) = BoxSeries::new(&d, i, true) else {
                continue;
            };
            if s.max_size() < 2 {
                continue;
            }
            let ld = local_dimension(&s).unwrap();
            assert!((mld(&s, 0.0).unwrap() + ld).abs() < 1e-9);
        }
    }

    #[test]
    fn pointwise_local_dimension() {
        let s = series(&generators::cycle(20), 0);
        // B(3) = 7, b(3) = 2: 3 * 2 / 7
        assert_relative_eq!(local_dimension_at(&s, 3).unwrap(), 6.0 / 7.0);
        assert!(local_dimension_at(&s, 0).is_err());
        assert!(local_dimension_at(&s, 11).is_err());
    }

    #[test]
    fn score_all_flags_complete_graph() {
        let g = generators::complete(10);
        let d = DistanceMatrix::compute(&g);
        let s = score_all(&g, &d, &Measure::Mld { q: 2.0 }, true).unwrap();
        assert_eq!(s.flagged_count(), 10);
        assert!(score_all(&g, &d, &Measure::Dc, true).is_err());
        assert!(score_all(&g, &d, &Measure::Mld { q: f64::NAN }, true).is_err());
    }
}
