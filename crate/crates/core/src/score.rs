// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// Which end of the score range marks the more important node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    HigherIsBetter,
    LowerIsBetter,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "name", rename_all = "lowercase")]
pub enum Measure {
    /// Multi-local dimension with weighting exponent `q`.
    Mld {
        q: f64,
    },
    /// Local dimension (log-log slope of ball size against radius).
    Ld,
    Bc,
    Cc,
    Dc,
    /// Caller-supplied scores, mostly for tests and external data.
    Custom {
        label: String,
    },
}

impl Measure {
    pub fn short_name(&self) -> &str {
        match self {
            Measure::Mld { .. } => "mld",
            Measure::Ld => "ld",
            Measure::Bc => "bc",
            Measure::Cc => "cc",
            Measure::Dc => "dc",
            Measure::Custom { label } => label,
        }
    }

    pub fn q(&self) -> Option<f64> {
        match self {
            Measure::Mld { q } => Some(*q),
            _ => None,
        }
    }

    /// Natural importance direction; custom measures default to higher-is-better.
    pub fn direction(&self) -> Direction {
        match self {
            Measure::Mld { .. } | Measure::Ld => Direction::LowerIsBetter,
            _ => Direction::HigherIsBetter,
        }
    }

    /// Uniqueness tolerance used when none is given: exact for integer-valued
    /// degree, relative 1e-9 for real-valued measures.
    pub fn default_epsilon(&self) -> f64 {
        match self {
            Measure::Dc => 0.0,
            _ => 1e-9,
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Measure::Mld { q } => write!(f, "mld(q={q})"),
            other => f.write_str(other.short_name()),
        }
    }
}

impl FromStr for Measure {
    type Err = Error;

    /// Accepts `mld`, `mld(q=2)`, `mld:2`, `ld`, `bc`, `cc`, `dc`; a bare
    /// `mld` gets q = 2.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let q_from = |text: &str| -> Result<f64> {
            text.parse::<f64>()
                .ok()
                .filter(|q| q.is_finite())
                .ok_or_else(|| Error::InvalidParameter(format!("invalid q in measure '{s}'")))
        };
        match lower.as_str() {
            "mld" => Ok(Measure::Mld { q: 2.0 }),
            "ld" => Ok(Measure::Ld),
            "bc" => Ok(Measure::Bc),
            "cc" => Ok(Measure::Cc),
            "dc" => Ok(Measure::Dc),
            other => {
                if let Some(rest) = other.strip_prefix("mld:") {
                    return Ok(Measure::Mld { q: q_from(rest)? });
                }
                if let Some(rest) = other
                    .strip_prefix("mld(q=")
                    .and_then(|r| r.strip_suffix(')'))
                {
                    return Ok(Measure::Mld { q: q_from(rest)? });
                }
                Err(Error::InvalidParameter(format!("unknown measure '{s}'")))
            }
        }
    }
}

/// One score per node, or `None` where the measure is undefined for that node
/// (such nodes are "flagged" and always rank last).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScoreVector {
    measure: Measure,
    direction: Direction,
    labels: Vec<u64>,
    scores: Vec<Option<f64>>,
    warnings: Vec<String>,
}

impl ScoreVector {
    pub fn new(
        measure: Measure,
        direction: Direction,
        labels: Vec<u64>,
        scores: Vec<Option<f64>>,
    ) -> Result<Self> {
        if labels.len() != scores.len() {
            return Err(Error::InvalidParameter(format!(
                "{} labels but {} scores",
                labels.len(),
                scores.len()
            )));
        }
        if scores.iter().flatten().any(|s| !s.is_finite()) {
            return Err(Error::InvalidParameter("scores must be finite".into()));
        }
        Ok(Self {
            measure,
            direction,
            labels,
            scores,
            warnings: Vec::new(),
        })
    }

    /// Scores with the measure's natural direction.
    pub fn for_measure(
        measure: Measure,
        labels: Vec<u64>,
        scores: Vec<Option<f64>>,
    ) -> Result<Self> {
        let direction = measure.direction();
        Self::new(measure, direction, labels, scores)
    }

    pub fn with_warning(mut self, warning: impl Into<String>) -> Self {
        self.warnings.push(warning.into());
        self
    }

    pub fn measure(&self) -> &Measure {
        &self.measure
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn scores(&self) -> &[Option<f64>] {
        &self.scores
    }

    pub fn get(&self, i: usize) -> Option<f64> {
        self.scores[i]
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    pub fn is_flagged(&self, i: usize) -> bool {
        self.scores[i].is_none()
    }

    pub fn flagged_count(&self) -> usize {
        self.scores.iter().filter(|s| s.is_none()).count()
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn measure_parsing() {
        assert_eq!("mld".parse::<Measure>().unwrap(), Measure::Mld { q: 2.0 });
        assert_eq!(
            "MLD:-0.5".parse::<Measure>().unwrap(),
            Measure::Mld { q: -0.5 }
        );
        assert_eq!(
            "mld(q=3)".parse::<Measure>().unwrap(),
            Measure::Mld { q: 3.0 }
        );
        assert_eq!("cc".parse::<Measure>().unwrap(), Measure::Cc);
        assert!("pagerank".parse::<Measure>().is_err());
        assert!("mld:abc".parse::<Measure>().is_err());
        assert!("mld:inf".parse::<Measure>().is_err());
    }

    #[test]
    fn display_round_trips() {
        for m in [Measure::Mld { q: 0.5 }, Measure::Ld, Measure::Dc] {
            assert_eq!(m.to_string().parse::<Measure>().unwrap(), m);
        }
    }

    #[test]
    fn construction_checks() {
        assert!(ScoreVector::for_measure(Measure::Dc, vec![1, 2], vec![Some(1.0)]).is_err());
        assert!(ScoreVector::for_measure(Measure::Dc, vec![1], vec![Some(f64::NAN)]).is_err());
        let s = ScoreVector::for_measure(Measure::Ld, vec![1, 2], vec![Some(1.0), None]).unwrap();
        assert_eq!(s.direction(), Direction::LowerIsBetter);
        assert!(s.is_flagged(1));
        assert_eq!(s.flagged_count(), 1);
    }
}
