// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: node {label} outside declared vertex range 1..={max}")]
    LabelOutOfRange { line: usize, label: u64, max: usize },

    #[error("graph has no nodes")]
    EmptyGraph,

    #[error("node index {node}: no locality scale (isolated node)")]
    NoLocalityScale { node: usize },

    #[error("insufficient points for regression ({points} < 2)")]
    InsufficientPoints { points: usize },

    #[error("regression x values have zero variance")]
    DegenerateRegression,

    #[error("measure value {0} outside (0, 1]")]
    Domain(f64),

    #[error("seed set is empty")]
    EmptySeedSet,

    #[error("unknown node label {0}")]
    UnknownLabel(u64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("correlation undefined: only {usable} scored nodes (need at least 3)")]
    CorrelationUndefined { usable: usize },

    #[error("score vectors cover different node sets")]
    NodeSetMismatch,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Short machine-readable category, used for CLI exit reporting.
    pub fn category(&self) -> &'static str {
        match self {
            Error::Parse { .. } | Error::LabelOutOfRange { .. } | Error::EmptyGraph => "parse",
            Error::NoLocalityScale { .. }
            | Error::InsufficientPoints { .. }
            | Error::DegenerateRegression
            | Error::Domain(_) => "numeric",
            Error::EmptySeedSet
            | Error::UnknownLabel(_)
            | Error::InvalidParameter(_)
            | Error::NodeSetMismatch => "input",
            Error::CorrelationUndefined { .. } => "statistics",
            Error::Io(_) | Error::Csv(_) => "io",
        }
    }
}
