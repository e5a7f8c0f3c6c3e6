// SPDX-License-Identifier: Apache-2.0

//! One function per subcommand. Each returns a typed report together with
//! the rendered files, so callers decide whether to write them.

use std::fs;
use std::path::Path;

use mld_core::epidemic::{all_seed_abilities, compare_seed_sets};
use mld_core::export::{self, real};
use mld_core::ranking::{individuation, rank_with, scatter, singleton_fraction};
use mld_core::{
    DistanceMatrix, Format, Graph, Measure, NetworkStats, RankTable, Scatter, SiConfig, SiTrace,
};
use serde::Serialize;
use serde_json::json;
use sha2::{Digest, Sha256};

use crate::args::{InputArgs, OutputArgs, RankArgs, ScatterArgs, SiArgs, SpreadArgs, StatsArgs};
use crate::error::{CliError, CliResult};
use crate::manifest::{InputRecord, RunManifest};

pub const DEFAULT_Q: f64 = 2.0;
pub const DEFAULT_BETA: f64 = 3.0;
pub const DEFAULT_SCATTER_LAMBDA: f64 = 0.05;

/// A loaded network plus the record that identifies it.
pub struct Dataset {
    pub graph: Graph,
    pub input: InputRecord,
}

pub fn load(args: &InputArgs) -> CliResult<Dataset> {
    let path = args.graph.display().to_string();
    let bytes = fs::read(&args.graph).map_err(|e| CliError::from(e).context(&path))?;
    let format = args.resolved_format();
    let mut opts = mld_core::ParseOptions::new(format);
    opts.zero_based = args.zero_based;
    let graph = Graph::parse_str(&String::from_utf8_lossy(&bytes), opts)
        .map_err(|e| CliError::from(e).context(&path))?;
    let input = InputRecord {
        path,
        format: match format {
            Format::Pajek => "pajek",
            Format::EdgeList => "edgelist",
        },
        zero_based: args.zero_based,
        sha256: hex(&Sha256::digest(&bytes)),
    };
    Ok(Dataset { graph, input })
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// A file produced by a command.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub name: String,
    pub bytes: Vec<u8>,
}

/// Rendered result of a command: a text summary for the terminal, notices
/// about defaults that were filled in, and the output files.
#[derive(Debug, Clone)]
pub struct Output {
    pub summary: String,
    pub notices: Vec<String>,
    pub artifacts: Vec<Artifact>,
    pub manifest: RunManifest,
}

impl Output {
    fn new(manifest: RunManifest) -> Self {
        Self {
            summary: String::new(),
            notices: Vec::new(),
            artifacts: Vec::new(),
            manifest,
        }
    }

    fn add(&mut self, name: impl Into<String>, bytes: Vec<u8>) {
        let name = name.into();
        self.manifest.outputs.push(name.clone());
        self.artifacts.push(Artifact { name, bytes });
    }

    fn add_json<T: Serialize>(&mut self, out: &OutputArgs, name: &str, value: &T) -> CliResult<()> {
        if out.json {
            let mut bytes = serde_json::to_vec_pretty(value)?;
            bytes.push(b'\n');
            self.add(name, bytes);
        }
        Ok(())
    }

    /// Writes every artifact and `manifest.json` into `dir`.
    pub fn write_to(&self, dir: &Path) -> CliResult<()> {
        let ctx = |e: std::io::Error, p: &Path| CliError::from(e).context(p.display());
        fs::create_dir_all(dir).map_err(|e| ctx(e, dir))?;
        for a in &self.artifacts {
            let p = dir.join(&a.name);
            fs::write(&p, &a.bytes).map_err(|e| ctx(e, &p))?;
        }
        let p = dir.join("manifest.json");
        fs::write(&p, self.manifest.to_json()).map_err(|e| ctx(e, &p))?;
        Ok(())
    }
}

/// A typed report and its rendering.
pub struct Run<T> {
    pub report: T,
    pub output: Output,
}

fn csv_bytes(f: impl FnOnce(&mut Vec<u8>) -> mld_core::Result<()>) -> CliResult<Vec<u8>> {
    let mut buf = Vec::new();
    f(&mut buf)?;
    Ok(buf)
}

// ---------------------------------------------------------------- stats

pub fn cmd_stats(args: &StatsArgs) -> CliResult<Run<NetworkStats>> {
    let data = load(&args.input)?;
    let d = DistanceMatrix::compute(&data.graph);
    let stats = NetworkStats::compute(&data.graph, &d);
    let name = network_name(&args.input);

    let mut out = Output::new(RunManifest::new("stats", data.input, json!({})));
    out.add(
        "stats.csv",
        csv_bytes(|w| export::write_stats(w, &name, &stats))?,
    );
    out.add_json(&args.output, "stats.json", &stats)?;
    out.summary = format!(
        "{:<12} {:>6} {:>7} {:>9} {:>6} {:>9} {:>6}\n{:<12} {:>6} {:>7} {:>9.4} {:>6} {:>9} {:>6}\n",
        "network",
        "|N|",
        "|E|",
        "<k>",
        "k_max",
        "<w>",
        "w_max",
        name,
        stats.nodes,
        stats.edges,
        stats.mean_degree,
        stats.max_degree,
        stats.mean_distance.map(|m| format!("{m:.4}")).unwrap_or_else(|| "-".into()),
        stats.max_distance,
    );
    if stats.disconnected {
        out.notices
            .push("network is disconnected; distances are averaged over reachable pairs".into());
    }
    Ok(Run {
        report: stats,
        output: out,
    })
}

fn network_name(input: &InputArgs) -> String {
    input
        .graph
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("network")
        .to_string()
}

// ---------------------------------------------------------------- rank

/// Ranking of one measure.
#[derive(Debug, Clone, Serialize)]
pub struct RankEntry {
    pub measure: Measure,
    pub epsilon: f64,
    pub individuation: f64,
    pub singleton_fraction: f64,
    pub rank_count: usize,
    pub flagged: usize,
    pub top: Vec<TopRow>,
    pub warnings: Vec<String>,
    #[serde(skip)]
    pub table: RankTable,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TopRow {
    pub rank: usize,
    pub label: u64,
    pub score: Option<f64>,
}

impl RankEntry {
    pub fn top_labels(&self) -> Vec<u64> {
        self.top.iter().map(|r| r.label).collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RankReport {
    pub entries: Vec<RankEntry>,
}

/// Parses `start:end:step` (inclusive) or a comma list.
pub fn parse_q_sweep(spec: &str) -> CliResult<Vec<f64>> {
    let bad = || {
        CliError::input(format!(
            "invalid q sweep '{spec}'; expected start:end:step or a comma list"
        ))
    };
    let num = |s: &str| {
        s.trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(bad)
    };
    let parts: Vec<&str> = spec.split(':').collect();
    let qs = match parts.as_slice() {
        [start, end, step] => {
            let (start, end, step) = (num(start)?, num(end)?, num(step)?);
            if step <= 0.0 || end < start {
                return Err(bad());
            }
            let n = ((end - start) / step + 1e-9).floor() as usize;
            // round away accumulated binary noise so 0.1 steps land on 0.3, not 0.30000000000000004
            (0..=n)
                .map(|i| ((start + i as f64 * step) * 1e9).round() / 1e9)
                .collect()
        }
        [list] => list.split(',').map(num).collect::<CliResult<Vec<_>>>()?,
        _ => return Err(bad()),
    };
    if qs.is_empty() {
        return Err(bad());
    }
    Ok(qs)
}

/// Resolves a measure name plus an optional separate `q`. A bare `mld`
/// without `q` falls back to [`DEFAULT_Q`] and reports a notice.
fn resolve_measure(name: &str, q: Option<f64>, notices: &mut Vec<String>) -> CliResult<Measure> {
    let bare_mld = name.trim().eq_ignore_ascii_case("mld");
    let measure: Measure = name.parse()?;
    match (&measure, q) {
        (Measure::Mld { .. }, Some(q)) if bare_mld => {
            if !q.is_finite() {
                return Err(CliError::input(format!("q must be finite, got {q}")));
            }
            Ok(Measure::Mld { q })
        }
        (Measure::Mld { .. }, Some(_)) => Err(CliError::input(format!(
            "q given both in '{name}' and by --q"
        ))),
        (Measure::Mld { .. }, None) => {
            if bare_mld {
                notices.push(format!("q not given; using q = {DEFAULT_Q}"));
            }
            Ok(measure)
        }
        (_, _) => Ok(measure),
    }
}

fn measure_tag(m: &Measure) -> String {
    match m.q() {
        Some(q) => format!("{}_q{}", m.short_name(), real(q)),
        None => m.short_name().to_string(),
    }
}

pub fn cmd_rank(args: &RankArgs) -> CliResult<Run<RankReport>> {
    let data = load(&args.input)?;
    let g = &data.graph;
    if args.k > g.node_count() {
        return Err(CliError::input(format!(
            "k = {} exceeds the node count {}",
            args.k,
            g.node_count()
        )));
    }
    if let Some(eps) = args.epsilon {
        if !(eps >= 0.0 && eps.is_finite()) {
            return Err(CliError::input(format!(
                "epsilon must be finite and >= 0, got {eps}"
            )));
        }
    }
    let mut notices = Vec::new();
    let measures = match &args.q_sweep {
        Some(spec) => {
            let base: Measure = args.measure.parse()?;
            if !matches!(base, Measure::Mld { .. })
                || !args.measure.trim().eq_ignore_ascii_case("mld")
            {
                return Err(CliError::input("--q-sweep needs --measure mld"));
            }
            parse_q_sweep(spec)?
                .into_iter()
                .map(|q| Measure::Mld { q })
                .collect()
        }
        None => vec![resolve_measure(&args.measure, args.q, &mut notices)?],
    };

    let d = DistanceMatrix::compute(g);
    let mut entries = Vec::with_capacity(measures.len());
    for m in measures {
        let scores = mld_core::score(g, &d, &m, args.inclusive_box)?;
        let eps = args.epsilon.unwrap_or_else(|| m.default_epsilon());
        let table = rank_with(&scores, args.tie_break.into());
        let top = table
            .order()
            .iter()
            .take(args.k)
            .map(|&i| TopRow {
                rank: table.rank_of(i),
                label: g.label(i),
                score: scores.get(i),
            })
            .collect();
        entries.push(RankEntry {
            individuation: individuation(&scores, eps),
            singleton_fraction: singleton_fraction(&scores, eps),
            rank_count: table.rank_count(),
            flagged: scores.flagged_count(),
            warnings: scores.warnings().to_vec(),
            measure: m,
            epsilon: eps,
            top,
            table,
        });
    }

    let params = json!({
        "measures": entries.iter().map(|e| e.measure.to_string()).collect::<Vec<_>>(),
        "k": args.k,
        "epsilon": args.epsilon,
        "inclusive_box": args.inclusive_box,
        "tie_break": format!("{:?}", args.tie_break),
    });
    let mut out = Output::new(RunManifest::new("rank", data.input, params));
    out.notices = notices;

    let mut summary_csv =
        String::from("measure,q,epsilon,individuation,singleton_fraction,rank_count,flagged\n");
    for e in &entries {
        let tag = measure_tag(&e.measure);
        out.add(
            format!("scores_{tag}.csv"),
            csv_bytes(|w| export::write_scores(w, e.table.scores()))?,
        );
        out.add(
            format!("top{}_{tag}.csv", args.k),
            csv_bytes(|w| export::write_top_k(w, &e.table, args.k))?,
        );
        out.add(
            format!("rank_frequency_{tag}.csv"),
            csv_bytes(|w| export::write_rank_frequency(w, &e.table))?,
        );
        summary_csv.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            e.measure.short_name(),
            e.measure.q().map(real).unwrap_or_default(),
            real(e.epsilon),
            real(e.individuation),
            real(e.singleton_fraction),
            e.rank_count,
            e.flagged
        ));
        for w in &e.warnings {
            out.notices.push(format!("{}: {w}", e.measure));
        }
        if e.flagged > 0 {
            out.notices.push(format!(
                "{}: {} node(s) flagged without a score",
                e.measure, e.flagged
            ));
        }
    }
    out.add("individuation.csv", summary_csv.into_bytes());
    let report = RankReport { entries };
    out.add_json(&args.output, "rank.json", &report)?;

    for e in &report.entries {
        let labels: Vec<String> = e.top_labels().iter().map(u64::to_string).collect();
        out.summary.push_str(&format!(
            "{:<14} gamma={:<8} top{}: {}\n",
            e.measure.to_string(),
            real(e.individuation),
            args.k,
            labels.join(" ")
        ));
    }
    Ok(Run {
        report,
        output: out,
    })
}

// ---------------------------------------------------------------- si

fn spread_lambda(s: &SpreadArgs, default_lambda: f64) -> CliResult<f64> {
    match (s.beta, s.lambda) {
        (Some(_), Some(_)) => Err(CliError::input("give either --beta or --lambda, not both")),
        (Some(beta), None) => Ok(SiConfig::from_beta(beta, 0, 1, 0)?.lambda),
        (None, Some(lambda)) => Ok(lambda),
        (None, None) => Ok(default_lambda),
    }
}

/// A named seed set as resolved from its specification.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeedSet {
    pub name: String,
    pub labels: Vec<u64>,
}

struct SeedContext<'a> {
    graph: &'a Graph,
    distances: Option<DistanceMatrix>,
    k: usize,
    q: Option<f64>,
    inclusive_box: bool,
}

impl SeedContext<'_> {
    fn resolve(&mut self, spec: &str, notices: &mut Vec<String>) -> CliResult<SeedSet> {
        let g = self.graph;
        let spec = spec.trim();
        if spec.eq_ignore_ascii_case("all") {
            return Ok(SeedSet {
                name: "all".into(),
                labels: g.labels().to_vec(),
            });
        }
        if let Some(measure) = spec.strip_prefix("top:") {
            if self.k > g.node_count() {
                return Err(CliError::input(format!(
                    "k = {} exceeds the node count {}",
                    self.k,
                    g.node_count()
                )));
            }
            let m = resolve_measure(measure, self.q, notices)?;
            let d = self
                .distances
                .get_or_insert_with(|| DistanceMatrix::compute(g));
            let scores = mld_core::score(g, d, &m, self.inclusive_box)?;
            let labels = mld_core::ranking::rank(&scores).top_labels(self.k);
            return Ok(SeedSet {
                name: format!("top{}:{m}", self.k),
                labels,
            });
        }
        let labels = spec
            .split([',', ' '])
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<u64>()
                    .map_err(|_| CliError::input(format!("invalid seed label '{s}'")))
            })
            .collect::<CliResult<Vec<_>>>()?;
        if labels.is_empty() {
            return Err(mld_core::Error::EmptySeedSet.into());
        }
        Ok(SeedSet {
            name: spec.to_string(),
            labels,
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SiReport {
    pub seed_sets: Vec<SeedSet>,
    pub config: SiConfig,
    pub traces: Vec<(String, SiTrace)>,
}

pub fn cmd_si(args: &SiArgs) -> CliResult<Run<SiReport>> {
    let data = load(&args.input)?;
    let g = &data.graph;
    let lambda = spread_lambda(&args.spread, 0.5f64.powf(DEFAULT_BETA))?;
    let cfg = SiConfig::new(lambda, args.steps, args.trials, args.spread.seed)?
        .with_exposure(args.spread.exposure.into())
        .with_raw(args.raw);

    let mut notices = Vec::new();
    if args.spread.beta.is_none() && args.spread.lambda.is_none() {
        notices.push(format!(
            "infection rate not given; using beta = {DEFAULT_BETA}"
        ));
    }
    let mut ctx = SeedContext {
        graph: g,
        distances: None,
        k: args.k,
        q: args.q,
        inclusive_box: args.inclusive_box,
    };
    let seed_sets = args
        .seeds
        .iter()
        .map(|s| ctx.resolve(s, &mut notices))
        .collect::<CliResult<Vec<_>>>()?;
    let named: Vec<(String, Vec<u64>)> = seed_sets
        .iter()
        .map(|s| (s.name.clone(), s.labels.clone()))
        .collect();
    let traces = compare_seed_sets(g, &named, &cfg)?;

    let params = json!({
        "seeds": seed_sets,
        "k": args.k,
        "beta": args.spread.beta,
        "lambda": cfg.lambda,
        "trials": cfg.trials,
        "steps": cfg.steps,
        "master_seed": cfg.master_seed,
        "exposure": cfg.exposure,
        "inclusive_box": args.inclusive_box,
    });
    let mut out = Output::new(RunManifest::new("si", data.input, params));
    out.notices = notices;
    out.add(
        "traces.csv",
        csv_bytes(|w| export::write_traces(w, &traces))?,
    );
    if args.raw {
        out.add(
            "traces_raw.csv",
            csv_bytes(|w| export::write_raw_traces(w, &traces))?,
        );
    }
    for (name, tr) in &traces {
        out.summary.push_str(&format!(
            "{name}: F(0)={} F({})={} (lambda={}, {} trials)\n",
            real(tr.mean[0]),
            tr.steps(),
            real(*tr.mean.last().unwrap()),
            real(tr.lambda),
            tr.trials
        ));
    }
    let report = SiReport {
        seed_sets,
        config: cfg,
        traces,
    };
    out.add_json(&args.output, "traces.json", &report)?;
    Ok(Run {
        report,
        output: out,
    })
}

// ---------------------------------------------------------------- scatter

pub fn cmd_scatter(args: &ScatterArgs) -> CliResult<Run<Scatter>> {
    let data = load(&args.input)?;
    let g = &data.graph;
    let lambda = spread_lambda(&args.spread, DEFAULT_SCATTER_LAMBDA)?;
    let cfg = SiConfig::new(lambda, args.t_star, args.trials, args.spread.seed)?
        .with_exposure(args.spread.exposure.into());

    let mut notices = Vec::new();
    let x = resolve_measure(&args.x, args.q, &mut notices)?;
    let y = resolve_measure(&args.y, args.q, &mut notices)?;
    notices.dedup();
    let d = DistanceMatrix::compute(g);
    let xs = mld_core::score(g, &d, &x, args.inclusive_box)?;
    let ys = mld_core::score(g, &d, &y, args.inclusive_box)?;
    let ability = all_seed_abilities(g, &cfg, args.t_star)?;
    let sc = scatter(&xs, &ys, &ability)?;

    let params = json!({
        "x": x.to_string(),
        "y": y.to_string(),
        "beta": args.spread.beta,
        "lambda": cfg.lambda,
        "trials": cfg.trials,
        "t_star": args.t_star,
        "master_seed": cfg.master_seed,
        "exposure": cfg.exposure,
        "inclusive_box": args.inclusive_box,
    });
    let context = format!(
        "lambda={} trials={} t_star={} seed={}",
        real(cfg.lambda),
        cfg.trials,
        args.t_star,
        cfg.master_seed
    );
    let mut out = Output::new(RunManifest::new("scatter", data.input, params));
    out.notices = notices;
    out.add(
        "scatter.csv",
        csv_bytes(|w| export::write_scatter(w, &sc, &context))?,
    );
    out.add_json(&args.output, "scatter.json", &sc)?;
    let fmt = |v: Option<f64>| v.map(real).unwrap_or_else(|| "undefined".into());
    out.summary = format!(
        "{} vs {}: pearson={} kendall_tau_b={} over {} nodes\n",
        sc.x_measure,
        sc.y_measure,
        fmt(sc.pearson),
        fmt(sc.kendall_tau_b),
        sc.used
    );
    Ok(Run {
        report: sc,
        output: out,
    })
}
