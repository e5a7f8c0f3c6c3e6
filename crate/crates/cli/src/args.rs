// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mld_core::{Exposure, Format, TieBreak};

#[derive(Debug, Parser)]
#[command(
    name = "mld",
    version,
    about = "Multi-local dimension node rankings and SI spreading experiments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Size, degree and distance summary of a network.
    Stats(StatsArgs),
    /// Score and rank every node by one measure.
    Rank(RankArgs),
    /// SI spreading curves from one or more seed sets.
    Si(SiArgs),
    /// A measure against another and against single-seed spreading ability.
    Scatter(ScatterArgs),
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// Network file.
    pub graph: PathBuf,
    /// Input format; guessed from the extension when omitted (.net/.paj are Pajek).
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
    /// Edge-list ids start at 0 instead of 1.
    #[arg(long)]
    pub zero_based: bool,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Directory for CSV files and manifest.json.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write a JSON copy of the results.
    #[arg(long, requires = "out")]
    pub json: bool,
}

#[derive(Debug, Clone, Args)]
pub struct StatsArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct RankArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// mld, ld, bc, cc or dc; `mld:<q>` fixes q inline.
    #[arg(long, default_value = "mld")]
    pub measure: String,
    /// MLD order (default 2).
    #[arg(long, allow_negative_numbers = true)]
    pub q: Option<f64>,
    /// Repeat MLD over `start:end:step` or a comma list of q values.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "q")]
    pub q_sweep: Option<String>,
    /// Length of the top list.
    #[arg(long, default_value_t = 10)]
    pub k: usize,
    /// Score gap below which two nodes count as tied (default: 0 for dc, 1e-9 otherwise).
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Box of size l includes distance l.
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    pub inclusive_box: bool,
    #[arg(long, value_enum, default_value_t = TieBreakArg::FollowScore)]
    pub tie_break: TieBreakArg,
}

#[derive(Debug, Clone, Args)]
pub struct SpreadArgs {
    /// Infection probability is (1/2)^beta.
    #[arg(long, conflicts_with = "lambda")]
    pub beta: Option<f64>,
    /// Per-contact infection probability.
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Master seed for the random streams.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = ExposureArg::PerEdge)]
    pub exposure: ExposureArg,
}

#[derive(Debug, Clone, Args)]
pub struct SiArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Seed set: comma-separated labels, `all`, or `top:<measure>`; repeat to compare sets.
    #[arg(long = "seeds", required = true)]
    pub seeds: Vec<String>,
    /// Size of `top:` seed sets.
    #[arg(long, default_value_t = 10)]
    pub k: usize,
    /// q for `top:mld` seed sets (default 2).
    #[arg(long, allow_negative_numbers = true)]
    pub q: Option<f64>,
    #[command(flatten)]
    pub spread: SpreadArgs,
    #[arg(long, default_value_t = 30)]
    pub trials: usize,
    /// Time steps per trial.
    #[arg(long, default_value_t = 50)]
    pub steps: usize,
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    pub inclusive_box: bool,
    /// Also write every trial's curve.
    #[arg(long)]
    pub raw: bool,
}

#[derive(Debug, Clone, Args)]
pub struct ScatterArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Measure on the x axis.
    #[arg(long, default_value = "mld")]
    pub x: String,
    /// Measure on the y axis.
    #[arg(long, default_value = "cc")]
    pub y: String,
    /// q for a bare `mld` (default 2).
    #[arg(long, allow_negative_numbers = true)]
    pub q: Option<f64>,
    #[command(flatten)]
    pub spread: SpreadArgs,
    #[arg(long, default_value_t = 50)]
    pub trials: usize,
    /// Step at which spreading ability is read off.
    #[arg(long, default_value_t = 10)]
    pub t_star: usize,
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    pub inclusive_box: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Pajek,
    Edgelist,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Pajek => Format::Pajek,
            FormatArg::Edgelist => Format::EdgeList,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExposureArg {
    PerEdge,
    Single,
}

impl From<ExposureArg> for Exposure {
    fn from(e: ExposureArg) -> Self {
        match e {
            ExposureArg::PerEdge => Exposure::PerEdge,
            ExposureArg::Single => Exposure::Single,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TieBreakArg {
    /// Larger label first for higher-is-better measures, smaller otherwise.
    FollowScore,
    AscendingLabel,
}

impl From<TieBreakArg> for TieBreak {
    fn from(t: TieBreakArg) -> Self {
        match t {
            TieBreakArg::FollowScore => TieBreak::FollowScore,
            TieBreakArg::AscendingLabel => TieBreak::AscendingLabel,
        }
    }
}

impl InputArgs {
    pub fn new(graph: impl Into<PathBuf>) -> Self {
        Self {
            graph: graph.into(),
            format: None,
            zero_based: false,
        }
    }

    pub fn resolved_format(&self) -> Format {
        match self.format {
            Some(f) => f.into(),
            None => {
                let ext = self
                    .graph
                    .extension()
                    .and_then(|e| e.to_str())
                    .unwrap_or("")
                    .to_ascii_lowercase();
                if matches!(ext.as_str(), "net" | "paj" | "pajek") {
                    Format::Pajek
                } else {
                    Format::EdgeList
                }
            }
        }
    }
}
