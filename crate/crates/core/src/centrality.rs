// SPDX-License-Identifier: Apache-2.0

//! Betweenness, closeness, and degree centrality.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::distance::DistanceMatrix;
use crate::graph::Graph;
use crate::score::{Measure, ScoreVector};

/// Sources per work unit. Fixed so the summation order never depends on the
/// thread count.
const SOURCE_CHUNK: usize = 32;

/// Unnormalized betweenness over unordered pairs `{s, t}` with `s != i != t`
/// (Brandes accumulation, halved to undo the ordered-pair double count).
pub fn betweenness(g: &Graph) -> ScoreVector {
    let n = g.node_count();
    let sources: Vec<usize> = (0..n).collect();
    let partials: Vec<Vec<f64>> = sources
        .par_chunks(SOURCE_CHUNK)
        .map(|chunk| {
            let mut ws = BrandesWorkspace::new(n);
            let mut acc = vec![0.0; n];
            for &s in chunk {
                ws.accumulate(g, s, &mut acc);
            }
            acc
        })
        .collect();

    let mut total = vec![0.0; n];
    for part in &partials {
        for (t, p) in total.iter_mut().zip(part) {
            *t += p;
        }
    }
    let scores = total.into_iter().map(|b| Some(b / 2.0)).collect();
    ScoreVector::for_measure(Measure::Bc, g.labels().to_vec(), scores)
        .expect("one finite score per node")
        .with_warning("betweenness counts each unordered pair once; not normalized")
}

struct BrandesWorkspace {
    dist: Vec<i64>,
    sigma: Vec<f64>,
    delta: Vec<f64>,
    preds: Vec<Vec<usize>>,
    order: Vec<usize>,
    queue: VecDeque<usize>,
}

impl BrandesWorkspace {
    fn new(n: usize) -> Self {
        Self {
            dist: vec![-1; n],
            sigma: vec![0.0; n],
            delta: vec![0.0; n],
            preds: vec![Vec::new(); n],
            order: Vec::with_capacity(n),
            queue: VecDeque::with_capacity(n),
        }
    }

    fn accumulate(&mut self, g: &Graph, s: usize, acc: &mut [f64]) {
        for &v in &self.order {
            self.dist[v] = -1;
            self.sigma[v] = 0.0;
            self.delta[v] = 0.0;
            self.preds[v].clear();
        }
        self.order.clear();

        self.dist[s] = 0;
        self.sigma[s] = 1.0;
        self.queue.push_back(s);
        while let Some(v) = self.queue.pop_front() {
            self.order.push(v);
            for &w in g.neighbors(v) {
                if self.dist[w] < 0 {
                    self.dist[w] = self.dist[v] + 1;
                    self.queue.push_back(w);
                }
                if self.dist[w] == self.dist[v] + 1 {
                    self.sigma[w] += self.sigma[v];
                    self.preds[w].push(v);
                }
            }
        }

        for &w in self.order.iter().rev() {
            let coeff = (1.0 + self.delta[w]) / self.sigma[w];
            for &v in &self.preds[w] {
                self.delta[v] += self.sigma[v] * coeff;
            }
            if w != s {
                acc[w] += self.delta[w];
            }
        }
    }
}

/// `1 / sum of distances to reachable nodes`; isolated nodes score 0. On a
/// disconnected graph the vector carries a warning.
pub fn closeness(g: &Graph, d: &DistanceMatrix) -> ScoreVector {
    let scores = (0..g.node_count())
        .map(|i| {
            let total: u64 = d.row(i).flatten().map(u64::from).sum();
            Some(if total == 0 { 0.0 } else { 1.0 / total as f64 })
        })
        .collect();
    let sv = ScoreVector::for_measure(Measure::Cc, g.labels().to_vec(), scores)
        .expect("one finite score per node");
    if d.is_connected() {
        sv
    } else {
        sv.with_warning("graph is disconnected; closeness sums over reachable nodes only")
    }
}

pub fn degree(g: &Graph) -> ScoreVector {
    let scores = (0..g.node_count())
        .map(|i| Some(g.degree(i) as f64))
        .collect();
    ScoreVector::for_measure(Measure::Dc, g.labels().to_vec(), scores)
        .expect("one finite score per node")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn path_betweenness() {
        let b = betweenness(&generators::path(3));
        assert_eq!(b.scores(), &[Some(0.0), Some(1.0), Some(0.0)]);
    }

    #[test]
    fn star_betweenness_counts_leaf_pairs() {
        // 5 leaves -> C(5, 2) = 10 pairs through the center
        let b = betweenness(&generators::star(5));
        assert_eq!(b.get(0), Some(10.0));
        assert!((1..6).all(|i| b.get(i) == Some(0.0)));
    }

    #[test]
    fn cycle_betweenness_splits_paths() {
        // C4: the opposite pair has two shortest paths, each node gets 1/2
        let b = betweenness(&generators::cycle(4));
        assert!(b.scores().iter().all(|&s| s == Some(0.5)));
    }

    #[test]
    fn closeness_basics() {
        let g = generators::path(3);
        let c = closeness(&g, &DistanceMatrix::compute(&g));
        assert_eq!(c.get(1), Some(0.5));
        assert_eq!(c.get(0), Some(1.0 / 3.0));

        let g = generators::star(5);
        let c = closeness(&g, &DistanceMatrix::compute(&g));
        assert_eq!(c.get(0), Some(0.2));
        assert!(c.warnings().is_empty());
    }

    #[test]
    fn closeness_disconnected() {
        let g = Graph::from_edges(4, [(0, 1)]).unwrap();
        let c = closeness(&g, &DistanceMatrix::compute(&g));
        assert_eq!(c.get(0), Some(1.0));
        assert_eq!(c.get(3), Some(0.0));
        assert_eq!(c.warnings().len(), 1);
    }

    #[test]
    fn degree_basics() {
        let d = degree(&generators::complete(3));
        assert!(d.scores().iter().all(|&s| s == Some(2.0)));
        let d = degree(&Graph::from_edges(2, []).unwrap());
        assert_eq!(d.get(0), Some(0.0));
    }
}
