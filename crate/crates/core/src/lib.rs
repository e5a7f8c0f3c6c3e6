// SPDX-License-Identifier: Apache-2.0

//! Node-importance analysis for small undirected networks.
//!
//! The central measure is the multi-local dimension (MLD): for every node,
//! boxes of growing hop radius are centred on it and the slope of a
//! q-weighted log-log series of box measures is taken as its score; smaller
//! slopes mark more influential spreaders. Around it sit the pieces needed
//! to evaluate it: graph loading and shortest-path structure, classical
//! centralities, ranking comparisons, and SI spreading simulation.
//!
//! ```
//! use mld_core::{dimension, generators, ranking, DistanceMatrix, Measure};
//!
//! let g = generators::cycle(12);
//! let d = DistanceMatrix::compute(&g);
//! let scores = dimension::score_all(&g, &d, &Measure::Mld { q: 2.0 }, true).unwrap();
//! let table = ranking::rank(&scores);
//! assert_eq!(table.len(), 12);
//! ```

pub mod centrality;
pub mod correlation;
pub mod dimension;
pub mod distance;
pub mod epidemic;
pub mod error;
pub mod export;
pub mod generators;
pub mod graph;
#[cfg(feature = "oracles")]
pub mod oracle;
pub mod ranking;
pub mod regression;
pub mod score;

pub use dimension::BoxSeries;
pub use distance::{DistanceMatrix, NetworkStats};
pub use epidemic::{Exposure, SiConfig, SiTrace};
pub use error::{Error, Result};
pub use graph::{Format, Graph, ParseOptions};
pub use ranking::{RankTable, Scatter, ScatterRecord, TieBreak};
pub use regression::RegressionFit;
pub use score::{Direction, Measure, ScoreVector};

/// Scores any supported measure. Dimension measures honour `inclusive_box`.
pub fn score(
    g: &Graph,
    d: &DistanceMatrix,
    measure: &Measure,
    inclusive_box: bool,
) -> Result<ScoreVector> {
    match measure {
        Measure::Mld { .. } | Measure::Ld => dimension::score_all(g, d, measure, inclusive_box),
        Measure::Bc => Ok(centrality::betweenness(g)),
        Measure::Cc => Ok(centrality::closeness(g, d)),
        Measure::Dc => Ok(centrality::degree(g)),
        Measure::Custom { label } => Err(Error::InvalidParameter(format!(
            "custom measure '{label}' cannot be computed"
        ))),
    }
}
