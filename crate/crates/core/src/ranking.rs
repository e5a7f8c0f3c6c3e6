// SPDX-License-Identifier: Apache-2.0

//! Rankings built from score vectors, and the comparisons run on them:
//! top-k overlap, individuation, rank-frequency histograms, and scatter data.

use std::cmp::Ordering;

use serde::Serialize;

use crate::correlation;
use crate::error::{Error, Result};
use crate::score::{Direction, ScoreVector};

/// Order among nodes whose scores are exactly equal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TieBreak {
    /// Sort by `(score, label)` in the measure's direction: larger labels
    /// first for higher-is-better measures, smaller first otherwise.
    #[default]
    FollowScore,
    AscendingLabel,
}

/// Nodes ordered best-first with dense ranks. Flagged nodes (no score) come
/// last in ascending label order and share a single final rank.
#[derive(Debug, Clone, Serialize)]
pub struct RankTable {
    scores: ScoreVector,
    tie_break: TieBreak,
    order: Vec<usize>,
    ranks: Vec<usize>,
    frequencies: Vec<usize>,
}

impl RankTable {
    pub fn scores(&self) -> &ScoreVector {
        &self.scores
    }

    pub fn tie_break(&self) -> TieBreak {
        self.tie_break
    }

    /// Node indices, best first.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Labels, best first.
    pub fn ordered_labels(&self) -> Vec<u64> {
        self.order
            .iter()
            .map(|&i| self.scores.labels()[i])
            .collect()
    }

    pub fn top_labels(&self, k: usize) -> Vec<u64> {
        self.order
            .iter()
            .take(k)
            .map(|&i| self.scores.labels()[i])
            .collect()
    }

    /// Dense 1-based rank of node index `i`.
    pub fn rank_of(&self, i: usize) -> usize {
        self.ranks[i]
    }

    /// Node count per rank; entry `r - 1` belongs to rank `r`.
    pub fn frequencies(&self) -> &[usize] {
        &self.frequencies
    }

    pub fn rank_count(&self) -> usize {
        self.frequencies.len()
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

pub fn rank(scores: &ScoreVector) -> RankTable {
    rank_with(scores, TieBreak::default())
}

pub fn rank_with(scores: &ScoreVector, tie_break: TieBreak) -> RankTable {
    let labels = scores.labels();
    let values = scores.scores();
    let (scored, flagged): (Vec<usize>, Vec<usize>) =
        (0..scores.len()).partition(|&i| values[i].is_some());

    let score_order = |a: f64, b: f64| -> Ordering {
        let asc = a.total_cmp(&b);
        match scores.direction() {
            Direction::LowerIsBetter => asc,
            Direction::HigherIsBetter => asc.reverse(),
        }
    };
    let label_order = |a: u64, b: u64| -> Ordering {
        match (tie_break, scores.direction()) {
            (TieBreak::FollowScore, Direction::HigherIsBetter) => b.cmp(&a),
            _ => a.cmp(&b),
        }
    };

    let mut order = scored;
    order.sort_by(|&a, &b| {
        score_order(values[a].unwrap(), values[b].unwrap())
            .then_with(|| label_order(labels[a], labels[b]))
    });
    let mut flagged = flagged;
    flagged.sort_by_key(|&i| labels[i]);

    let mut ranks = vec![0usize; scores.len()];
    let mut frequencies: Vec<usize> = Vec::new();
    let mut previous: Option<f64> = None;
    for &i in &order {
        let v = values[i].unwrap();
        if previous != Some(v) {
            frequencies.push(0);
            previous = Some(v);
        }
        *frequencies.last_mut().unwrap() += 1;
        ranks[i] = frequencies.len();
    }
    if !flagged.is_empty() {
        frequencies.push(flagged.len());
        for &i in &flagged {
            ranks[i] = frequencies.len();
        }
    }
    order.extend(flagged);

    RankTable {
        scores: scores.clone(),
        tie_break,
        order,
        ranks,
        frequencies,
    }
}

/// Two scores are equal when `|a - b| <= epsilon * max(1, |a|, |b|)`.
fn within(a: f64, b: f64, epsilon: f64) -> bool {
    (a - b).abs() <= epsilon * 1f64.max(a.abs()).max(b.abs())
}

fn sorted_scored(scores: &ScoreVector) -> Vec<f64> {
    let mut v: Vec<f64> = scores.scores().iter().flatten().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

/// Individuation: the number of distinct score values divided by `|N|`.
///
/// Sorted scores are split into classes wherever consecutive values differ
/// by more than the tolerance, so a larger `epsilon` can only merge classes.
/// Flagged nodes contribute no class. An all-distinct vector gives 1.
pub fn individuation(scores: &ScoreVector, epsilon: f64) -> f64 {
    if scores.is_empty() {
        return 0.0;
    }
    let sorted = sorted_scored(scores);
    let classes = if sorted.is_empty() {
        0
    } else {
        1 + sorted
            .windows(2)
            .filter(|w| !within(w[0], w[1], epsilon))
            .count()
    };
    classes as f64 / scores.len() as f64
}

/// Fraction of nodes whose score matches no other node's score (singleton
/// classes only). Reported alongside [`individuation`] as a diagnostic.
pub fn singleton_fraction(scores: &ScoreVector, epsilon: f64) -> f64 {
    if scores.is_empty() {
        return 0.0;
    }
    let sorted = sorted_scored(scores);
    let singletons = (0..sorted.len())
        .filter(|&k| {
            let left = k > 0 && within(sorted[k - 1], sorted[k], epsilon);
            let right = k + 1 < sorted.len() && within(sorted[k], sorted[k + 1], epsilon);
            !left && !right
        })
        .count();
    singletons as f64 / scores.len() as f64
}

/// `(rank, node count)` for every dense rank.
pub fn rank_frequency(table: &RankTable) -> Vec<(usize, usize)> {
    table
        .frequencies()
        .iter()
        .enumerate()
        .map(|(r, &c)| (r + 1, c))
        .collect()
}

/// Size of the intersection of the two top-`k` label sets.
pub fn overlap(a: &RankTable, b: &RankTable, k: usize) -> Result<usize> {
    if k > a.len() || k > b.len() {
        return Err(Error::InvalidParameter(format!(
            "k = {k} exceeds the node count ({})",
            a.len().min(b.len())
        )));
    }
    let top_a = a.top_labels(k);
    let top_b = b.top_labels(k);
    Ok(top_a.iter().filter(|l| top_b.contains(l)).count())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScatterRecord {
    pub label: u64,
    pub x: Option<f64>,
    pub y: Option<f64>,
    pub ability: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Scatter {
    pub x_measure: String,
    pub y_measure: String,
    pub records: Vec<ScatterRecord>,
    /// Nodes scored by both measures; the correlations use only these.
    pub used: usize,
    pub pearson: Option<f64>,
    pub kendall_tau_b: Option<f64>,
}

/// Joins two score vectors with per-node spreading ability and correlates
/// the scores over nodes that neither measure flagged.
pub fn scatter(x: &ScoreVector, y: &ScoreVector, ability: &[f64]) -> Result<Scatter> {
    if x.labels() != y.labels() || ability.len() != x.len() {
        return Err(Error::NodeSetMismatch);
    }
    let records: Vec<ScatterRecord> = (0..x.len())
        .map(|i| ScatterRecord {
            label: x.labels()[i],
            x: x.get(i),
            y: y.get(i),
            ability: ability[i],
        })
        .collect();
    let (xs, ys): (Vec<f64>, Vec<f64>) = records.iter().filter_map(|r| Some((r.x?, r.y?))).unzip();
    if xs.len() < 3 {
        return Err(Error::CorrelationUndefined { usable: xs.len() });
    }
    Ok(Scatter {
        x_measure: x.measure().to_string(),
        y_measure: y.measure().to_string(),
        used: xs.len(),
        pearson: correlation::pearson(&xs, &ys),
        kendall_tau_b: correlation::kendall_tau_b(&xs, &ys),
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::score::Measure;

    fn custom(labels: Vec<u64>, scores: Vec<Option<f64>>, direction: Direction) -> ScoreVector {
        ScoreVector::new(
            Measure::Custom { label: "t".into() },
            direction,
            labels,
            scores,
        )
        .unwrap()
    }

    #[test]
    fn ties_share_rank() {
        // a=1, b=2, c=3 with scores a:3, b:1, c:3
        let s = custom(
            vec![1, 2, 3],
            vec![Some(3.0), Some(1.0), Some(3.0)],
            Direction::HigherIsBetter,
        );
        let t = rank_with(&s, TieBreak::AscendingLabel);
        assert_eq!(t.ordered_labels(), vec![1, 3, 2]);
        assert_eq!((t.rank_of(0), t.rank_of(2), t.rank_of(1)), (1, 1, 2));
        assert_eq!(rank_frequency(&t), vec![(1, 2), (2, 1)]);

        let t = rank(&s);
        assert_eq!(t.ordered_labels(), vec![3, 1, 2]);
        assert_eq!(rank_frequency(&t), vec![(1, 2), (2, 1)]);
    }

    #[test]
    fn lower_is_better_and_flagged_last() {
        let s = custom(
            vec![5, 6, 7, 8, 9],
            vec![None, Some(0.2), Some(-1.0), None, Some(0.2)],
            Direction::LowerIsBetter,
        );
        let t = rank(&s);
        assert_eq!(t.ordered_labels(), vec![7, 6, 9, 5, 8]);
        assert_eq!(t.frequencies(), &[1, 2, 2]);
        assert_eq!(t.rank_of(0), 3);
        assert_eq!(t.frequencies().iter().sum::<usize>(), 5);
    }

    #[test]
    fn individuation_counts_distinct_classes() {
        let s = custom(
            vec![1, 2, 3, 4],
            vec![Some(1.0), Some(2.0), Some(2.0), Some(3.0)],
            Direction::HigherIsBetter,
        );
        assert_eq!(individuation(&s, 0.0), 0.75);
        assert_eq!(singleton_fraction(&s, 0.0), 0.5);
        let s = custom(
            vec![1, 2, 3],
            vec![Some(1.0), Some(2.0), Some(3.0)],
            Direction::HigherIsBetter,
        );
        assert_eq!(individuation(&s, 0.0), 1.0);
        assert_eq!(singleton_fraction(&s, 0.0), 1.0);
        // relative tolerance merges near-equal values
        let s = custom(
            vec![1, 2],
            vec![Some(1.0), Some(1.0 + 1e-12)],
            Direction::HigherIsBetter,
        );
        assert_eq!(individuation(&s, 1e-9), 0.5);
        assert_eq!(individuation(&s, 0.0), 1.0);
    }

    #[test]
    fn overlap_rules() {
        let s = custom(
            vec![1, 2, 3, 4],
            vec![Some(4.0), Some(3.0), Some(2.0), Some(1.0)],
            Direction::HigherIsBetter,
        );
        let r = custom(
            vec![1, 2, 3, 4],
            vec![Some(1.0), Some(2.0), Some(3.0), Some(4.0)],
            Direction::HigherIsBetter,
        );
        let (a, b) = (rank(&s), rank(&r));
        assert_eq!(overlap(&a, &a, 3).unwrap(), 3);
        assert_eq!(overlap(&a, &b, 2).unwrap(), 0);
        assert_eq!(overlap(&a, &b, 3).unwrap(), 2);
        assert!(overlap(&a, &b, 5).is_err());
    }

    #[test]
    fn scatter_correlations() {
        let labels = vec![1, 2, 3, 4];
        let x = custom(
            labels.clone(),
            vec![Some(1.0), Some(2.0), Some(3.0), Some(5.0)],
            Direction::LowerIsBetter,
        );
        let y = custom(
            labels.clone(),
            vec![Some(-1.0), Some(-2.0), Some(-3.0), Some(-5.0)],
            Direction::HigherIsBetter,
        );
        let sc = scatter(&x, &y, &[1.0; 4]).unwrap();
        assert!((sc.pearson.unwrap() + 1.0).abs() < 1e-12);
        assert_eq!(sc.kendall_tau_b, Some(-1.0));
        assert_eq!(sc.records.len(), 4);

        let y = custom(
            labels.clone(),
            vec![Some(1.0), None, None, Some(2.0)],
            Direction::HigherIsBetter,
        );
        assert!(matches!(
            scatter(&x, &y, &[1.0; 4]),
            Err(Error::CorrelationUndefined { usable: 2 })
        ));
        assert!(matches!(
            scatter(&x, &y, &[1.0; 3]),
            Err(Error::NodeSetMismatch)
        ));
    }
}
