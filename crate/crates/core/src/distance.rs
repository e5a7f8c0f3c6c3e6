// SPDX-License-Identifier: Apache-2.0

//! All-pairs hop distances, eccentricities, and the summary statistics built on them.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::Serialize;

use crate::graph::Graph;

const UNREACHABLE: u32 = u32::MAX;

/// Row-major hop distances from every source, computed by one BFS per node.
///
/// Unreachable pairs are reported as `None`; no numeric stand-in ever leaves
/// this type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u32>,
    eccentricity: Vec<Option<u32>>,
    reachable: Vec<usize>,
}

impl DistanceMatrix {
    pub fn compute(g: &Graph) -> Self {
        let n = g.node_count();
        let rows: Vec<Vec<u32>> = (0..n).into_par_iter().map(|s| bfs_row(g, s)).collect();

        let mut dist = Vec::with_capacity(n * n);
        let mut eccentricity = Vec::with_capacity(n);
        let mut reachable = Vec::with_capacity(n);
        for row in rows {
            let finite = row.iter().copied().filter(|&d| d != UNREACHABLE);
            let (count, max) = finite.fold((0usize, 0u32), |(c, m), d| (c + 1, m.max(d)));
            // count includes the source itself
            eccentricity.push(if count > 1 { Some(max) } else { None });
            reachable.push(count);
            dist.extend(row);
        }
        Self {
            n,
            dist,
            eccentricity,
            reachable,
        }
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Option<u32> {
        match self.dist[i * self.n + j] {
            UNREACHABLE => None,
            d => Some(d),
        }
    }

    /// Distances from `i` to every node, `None` where unreachable.
    pub fn row(&self, i: usize) -> impl ExactSizeIterator<Item = Option<u32>> + '_ {
        self.dist[i * self.n..(i + 1) * self.n].iter().map(|&d| {
            if d == UNREACHABLE {
                None
            } else {
                Some(d)
            }
        })
    }

    /// Largest finite distance from `i` to another node; `None` when `i` is isolated.
    pub fn eccentricity(&self, i: usize) -> Option<u32> {
        self.eccentricity[i]
    }

    /// Number of nodes reachable from `i`, counting `i` itself.
    pub fn reachable_count(&self, i: usize) -> usize {
        self.reachable[i]
    }

    pub fn is_connected(&self) -> bool {
        self.reachable.iter().all(|&c| c == self.n)
    }
}

fn bfs_row(g: &Graph, source: usize) -> Vec<u32> {
    let mut row = vec![UNREACHABLE; g.node_count()];
    let mut queue = VecDeque::new();
    row[source] = 0;
    queue.push_back(source);
    while let Some(v) = queue.pop_front() {
        let next = row[v] + 1;
        for &w in g.neighbors(v) {
            if row[w] == UNREACHABLE {
                row[w] = next;
                queue.push_back(w);
            }
        }
    }
    row
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NetworkStats {
    pub nodes: usize,
    pub edges: usize,
    pub mean_degree: f64,
    pub max_degree: usize,
    /// Mean over ordered reachable pairs `i != j`; `None` when no such pair exists.
    pub mean_distance: Option<f64>,
    pub max_distance: u32,
    pub disconnected: bool,
}

impl NetworkStats {
    pub fn compute(g: &Graph, d: &DistanceMatrix) -> Self {
        let n = g.node_count();
        let mut sum = 0u64;
        let mut pairs = 0u64;
        for i in 0..n {
            for dist in d.row(i).flatten().filter(|&x| x > 0) {
                sum += u64::from(dist);
                pairs += 1;
            }
        }
        Self {
            nodes: n,
            edges: g.edge_count(),
            mean_degree: 2.0 * g.edge_count() as f64 / n as f64,
            max_degree: (0..n).map(|i| g.degree(i)).max().unwrap_or(0),
            mean_distance: (pairs > 0).then(|| sum as f64 / pairs as f64),
            max_distance: (0..n).filter_map(|i| d.eccentricity(i)).max().unwrap_or(0),
            disconnected: !d.is_connected(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn path_distances() {
        let g = generators::path(3);
        let d = DistanceMatrix::compute(&g);
        assert_eq!(d.get(0, 2), Some(2));
        assert_eq!(d.get(2, 0), Some(2));
        assert_eq!(d.get(1, 1), Some(0));
        assert_eq!(d.eccentricity(1), Some(1));
        assert_eq!(d.eccentricity(0), Some(2));
    }

    #[test]
    fn isolated_and_disconnected() {
        let g = Graph::from_edges(4, [(0, 1)]).unwrap();
        let d = DistanceMatrix::compute(&g);
        assert_eq!(d.get(0, 2), None);
        assert_eq!(d.eccentricity(2), None);
        assert_eq!(d.reachable_count(2), 1);
        assert_eq!(d.row(3).filter(Option::is_some).count(), 1);
        assert!(!d.is_connected());

        let s = NetworkStats::compute(&g, &d);
        assert!(s.disconnected);
        assert_eq!(s.mean_distance, Some(1.0));
        assert_eq!(s.max_distance, 1);
    }

    #[test]
    fn triangle_stats() {
        let g = generators::complete(3);
        let s = NetworkStats::compute(&g, &DistanceMatrix::compute(&g));
        assert_eq!(s.mean_degree, 2.0);
        assert_eq!(s.mean_distance, Some(1.0));
        assert_eq!(s.max_distance, 1);
        assert_eq!(s.max_degree, 2);
        assert!(!s.disconnected);
    }

    #[test]
    fn single_node_has_no_mean_distance() {
        let g = Graph::from_edges(1, []).unwrap();
        let s = NetworkStats::compute(&g, &DistanceMatrix::compute(&g));
        assert_eq!(s.mean_distance, None);
        assert_eq!(s.max_distance, 0);
    }
}
