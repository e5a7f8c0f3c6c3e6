// SPDX-License-Identifier: Apache-2.0

//! Fixture networks shared by the benchmarks.

use mld_core::{generators, Format, Graph, ParseOptions};

const KARATE: &str = include_str!("../../../data/karate.net");

pub fn karate() -> Graph {
    Graph::parse_str(KARATE, ParseOptions::new(Format::Pajek))
        .expect("vendored karate network parses")
}

/// Sparse random graph with mean degree close to `mean_degree`.
pub fn sparse_random(n: usize, mean_degree: f64, seed: u64) -> Graph {
    generators::gnp(n, mean_degree / (n - 1) as f64, seed)
}
