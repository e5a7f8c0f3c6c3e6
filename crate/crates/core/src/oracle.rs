// SPDX-License-Identifier: Apache-2.0

//! Slow reference implementations used only to check the fast paths.
//! Compiled with the `oracles` feature.

use crate::graph::Graph;

/// Floyd-Warshall over the adjacency matrix; `None` marks unreachable pairs.
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<Option<u32>>> {
    let n = g.node_count();
    let mut d = vec![vec![None; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = Some(0);
        for &j in g.neighbors(i) {
            row[j] = Some(1);
        }
    }
    for k in 0..n {
        let through = d[k].clone();
        for row in d.iter_mut() {
            let Some(ik) = row[k] else { continue };
            for (cell, kj) in row.iter_mut().zip(&through) {
                if let Some(kj) = kj {
                    let via = ik + kj;
                    if cell.is_none_or(|cur| via < cur) {
                        *cell = Some(via);
                    }
                }
            }
        }
    }
    d
}

/// Betweenness by listing every shortest path between every unordered pair
/// and counting the interior visits of each node.
pub fn exhaustive_betweenness(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let dist = floyd_warshall(g);
    let mut bc = vec![0.0; n];
    for s in 0..n {
        for t in s + 1..n {
            let Some(target_dist) = dist[s][t] else {
                continue;
            };
            let mut paths: Vec<Vec<usize>> = Vec::new();
            let mut stack = vec![s];
            enumerate_paths(g, &dist, t, target_dist, &mut stack, &mut paths);
            let total = paths.len() as f64;
            let mut through = vec![0usize; n];
            for p in &paths {
                for &v in &p[1..p.len() - 1] {
                    through[v] += 1;
                }
            }
            for v in 0..n {
                bc[v] += through[v] as f64 / total;
            }
        }
    }
    bc
}

fn enumerate_paths(
    g: &Graph,
    dist: &[Vec<Option<u32>>],
    target: usize,
    length: u32,
    stack: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let here = *stack.last().unwrap();
    if here == target {
        out.push(stack.clone());
        return;
    }
    let walked = stack.len() as u32 - 1;
    for &w in g.neighbors(here) {
        // stay on a geodesic: remaining distance must shrink by exactly one
        if dist[w][target] == Some(length - walked - 1) {
            stack.push(w);
            enumerate_paths(g, dist, target, length, stack, out);
            stack.pop();
        }
    }
}

/// OLS slope from the textbook two-pass formula: means first, then centred
/// cross-products.
pub fn two_pass_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let num: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    num / den
}

/// `|{ j : d(center, j) <= l }|` by a direct scan of Floyd-Warshall distances.
pub fn ball_size(dist: &[Vec<Option<u32>>], center: usize, l: u32) -> usize {
    dist[center]
        .iter()
        .filter(|d| d.is_some_and(|d| d <= l))
        .count()
}
