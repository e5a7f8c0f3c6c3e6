// SPDX-License-Identifier: Apache-2.0

//! Discrete-time Susceptible-Infected spreading.
//!
//! Updates are synchronous: infections at step `t + 1` depend only on the
//! infected set at the end of step `t`, and infection is permanent. A
//! susceptible node with `m` infected neighbours is infected with
//! probability `1 - (1 - lambda)^m` under per-edge exposure, or `lambda` under
//! single exposure.
//!
//! Trial `r` draws from a ChaCha8 stream selected by `(master_seed, r)`, and
//! every step consumes exactly one uniform per node in index order, whatever
//! the node's state. Runs that share a config therefore share random numbers
//! draw for draw, which makes results independent of scheduling and couples
//! runs over different seed sets monotonically.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Exposure {
    /// Independent attempt per infected neighbour.
    #[default]
    PerEdge,
    /// One attempt per step as soon as any neighbour is infected.
    Single,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SiConfig {
    pub lambda: f64,
    pub steps: usize,
    pub trials: usize,
    pub master_seed: u64,
    pub exposure: Exposure,
    /// Keep every trial's counts in the trace.
    pub keep_raw: bool,
}

impl SiConfig {
    pub fn new(lambda: f64, steps: usize, trials: usize, master_seed: u64) -> Result<Self> {
        let cfg = Self {
            lambda,
            steps,
            trials,
            master_seed,
            exposure: Exposure::PerEdge,
            keep_raw: false,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Infection probability `(1/2)^beta`.
    pub fn from_beta(beta: f64, steps: usize, trials: usize, master_seed: u64) -> Result<Self> {
        if !beta.is_finite() || beta < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "beta must be finite and >= 0, got {beta}"
            )));
        }
        Self::new(0.5f64.powf(beta), steps, trials, master_seed)
    }

    pub fn with_exposure(mut self, exposure: Exposure) -> Self {
        self.exposure = exposure;
        self
    }

    pub fn with_raw(mut self, keep_raw: bool) -> Self {
        self.keep_raw = keep_raw;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.lambda) {
            return Err(Error::InvalidParameter(format!(
                "lambda must lie in [0, 1], got {}",
                self.lambda
            )));
        }
        if self.trials == 0 {
            return Err(Error::InvalidParameter(
                "at least one trial is required".into(),
            ));
        }
        Ok(())
    }

    fn trial_rng(&self, trial: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(trial as u64);
        rng
    }
}

/// Infected counts per step, `t = 0..=steps`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SiTrace {
    pub mean: Vec<f64>,
    pub min: Vec<usize>,
    pub max: Vec<usize>,
    pub trials: usize,
    pub lambda: f64,
    /// Per-trial counts when requested.
    pub raw: Option<Vec<Vec<usize>>>,
}

impl SiTrace {
    fn from_trials(runs: Vec<Vec<usize>>, cfg: &SiConfig) -> Self {
        let len = cfg.steps + 1;
        let mut sum = vec![0u64; len];
        let mut min = vec![usize::MAX; len];
        let mut max = vec![0usize; len];
        for run in &runs {
            for t in 0..len {
                sum[t] += run[t] as u64;
                min[t] = min[t].min(run[t]);
                max[t] = max[t].max(run[t]);
            }
        }
        let trials = runs.len();
        Self {
            mean: sum.iter().map(|&s| s as f64 / trials as f64).collect(),
            min,
            max,
            trials,
            lambda: cfg.lambda,
            raw: cfg.keep_raw.then_some(runs),
        }
    }

    pub fn steps(&self) -> usize {
        self.mean.len() - 1
    }
}

fn resolve_seeds(g: &Graph, seeds: &[u64]) -> Result<Vec<usize>> {
    if seeds.is_empty() {
        return Err(Error::EmptySeedSet);
    }
    let mut idx = g.indices_of(seeds)?;
    idx.sort_unstable();
    idx.dedup();
    Ok(idx)
}

fn run_trial(g: &Graph, seeds: &[usize], cfg: &SiConfig, trial: usize) -> Vec<usize> {
    let n = g.node_count();
    let mut rng = cfg.trial_rng(trial);
    let mut infected = vec![false; n];
    for &s in seeds {
        infected[s] = true;
    }
    let mut count = seeds.len();
    let mut counts = Vec::with_capacity(cfg.steps + 1);
    counts.push(count);

    let survive = 1.0 - cfg.lambda;
    let mut newly = Vec::new();
    for _ in 0..cfg.steps {
        if count == n {
            counts.push(count);
            continue;
        }
        newly.clear();
        for v in 0..n {
            let u: f64 = rng.random();
            if infected[v] {
                continue;
            }
            let m = g.neighbors(v).iter().filter(|&&w| infected[w]).count();
            if m == 0 {
                continue;
            }
            let p = match cfg.exposure {
                Exposure::PerEdge => 1.0 - survive.powi(m as i32),
                Exposure::Single => cfg.lambda,
            };
            if u < p {
                newly.push(v);
            }
        }
        for &v in &newly {
            infected[v] = true;
        }
        count += newly.len();
        counts.push(count);
    }
    counts
}

fn run_resolved(g: &Graph, seeds: &[usize], cfg: &SiConfig) -> SiTrace {
    let runs: Vec<Vec<usize>> = (0..cfg.trials)
        .into_par_iter()
        .map(|r| run_trial(g, seeds, cfg, r))
        .collect();
    SiTrace::from_trials(runs, cfg)
}

/// Averages `cfg.trials` independent runs started from the labelled seed set.
pub fn si_run(g: &Graph, seeds: &[u64], cfg: &SiConfig) -> Result<SiTrace> {
    cfg.validate()?;
    let seeds = resolve_seeds(g, seeds)?;
    Ok(run_resolved(g, &seeds, cfg))
}

/// Mean `F(t_star)` when `node` alone is the seed.
pub fn seed_ability(g: &Graph, node: u64, cfg: &SiConfig, t_star: usize) -> Result<f64> {
    check_t_star(cfg, t_star)?;
    let trace = si_run(
        g,
        &[node],
        &SiConfig {
            steps: t_star,
            keep_raw: false,
            ..cfg.clone()
        },
    )?;
    Ok(trace.mean[t_star])
}

/// [`seed_ability`] for every node, in index order.
pub fn all_seed_abilities(g: &Graph, cfg: &SiConfig, t_star: usize) -> Result<Vec<f64>> {
    check_t_star(cfg, t_star)?;
    cfg.validate()?;
    let short = SiConfig {
        steps: t_star,
        keep_raw: false,
        ..cfg.clone()
    };
    Ok((0..g.node_count())
        .into_par_iter()
        .map(|i| run_resolved(g, &[i], &short).mean[t_star])
        .collect())
}

fn check_t_star(cfg: &SiConfig, t_star: usize) -> Result<()> {
    if t_star > cfg.steps {
        return Err(Error::InvalidParameter(format!(
            "t* = {t_star} exceeds the step count {}",
            cfg.steps
        )));
    }
    Ok(())
}

/// Runs each named seed set under the same per-trial random streams.
pub fn compare_seed_sets(
    g: &Graph,
    sets: &[(String, Vec<u64>)],
    cfg: &SiConfig,
) -> Result<Vec<(String, SiTrace)>> {
    cfg.validate()?;
    let resolved = sets
        .iter()
        .map(|(name, labels)| Ok((name.clone(), resolve_seeds(g, labels)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(resolved
        .into_iter()
        .map(|(name, seeds)| {
            let trace = run_resolved(g, &seeds, cfg);
            (name, trace)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn certain_infection_on_star() {
        let g = generators::star(5);
        let cfg = SiConfig::new(1.0, 3, 5, 1).unwrap().with_raw(true);
        let tr = si_run(&g, &[1], &cfg).unwrap();
        assert_eq!(tr.mean, vec![1.0, 6.0, 6.0, 6.0]);
        assert!(tr.raw.unwrap().iter().all(|r| r[1] == 6));
    }

    #[test]
    fn zero_lambda_is_flat() {
        let g = generators::cycle(10);
        let cfg = SiConfig::new(0.0, 5, 3, 9).unwrap();
        let tr = si_run(&g, &[1, 4], &cfg).unwrap();
        assert!(tr.mean.iter().all(|&f| f == 2.0));
        assert_eq!(seed_ability(&g, 3, &cfg, 5).unwrap(), 1.0);
    }

    #[test]
    fn isolated_seed_stays_alone() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        let cfg = SiConfig::new(0.9, 10, 20, 3).unwrap();
        assert_eq!(seed_ability(&g, 3, &cfg, 10).unwrap(), 1.0);
    }

    #[test]
    fn duplicate_seeds_counted_once() {
        let g = generators::path(4);
        let cfg = SiConfig::new(0.0, 1, 1, 0).unwrap();
        assert_eq!(si_run(&g, &[2, 2, 3], &cfg).unwrap().mean[0], 2.0);
    }

    #[test]
    fn errors() {
        let g = generators::path(3);
        let cfg = SiConfig::new(0.5, 2, 2, 0).unwrap();
        assert!(matches!(si_run(&g, &[], &cfg), Err(Error::EmptySeedSet)));
        assert!(matches!(
            si_run(&g, &[9], &cfg),
            Err(Error::UnknownLabel(9))
        ));
        assert!(seed_ability(&g, 1, &cfg, 3).is_err());
        assert!(SiConfig::new(1.5, 1, 1, 0).is_err());
        assert!(SiConfig::new(0.5, 1, 0, 0).is_err());
        assert!(SiConfig::from_beta(-1.0, 1, 1, 0).is_err());
    }

    #[test]
    fn beta_to_lambda() {
        assert_eq!(SiConfig::from_beta(3.0, 1, 1, 0).unwrap().lambda, 0.125);
    }

    #[test]
    fn single_exposure_ignores_multiplicity() {
        // centre of a star with every leaf infected: per-edge exposure infects
        // far more often than a single attempt
        let g = generators::star(8);
        let leaves: Vec<u64> = (2..=9).collect();
        let base = SiConfig::new(0.2, 1, 4000, 11).unwrap();
        let per_edge = si_run(&g, &leaves, &base).unwrap().mean[1] - 8.0;
        let single = si_run(&g, &leaves, &base.clone().with_exposure(Exposure::Single))
            .unwrap()
            .mean[1]
            - 8.0;
        assert!((single - 0.2).abs() < 0.03, "{single}");
        assert!(
            (per_edge - (1.0 - 0.8f64.powi(8))).abs() < 0.03,
            "{per_edge}"
        );
    }
}
