// SPDX-License-Identifier: Apache-2.0

//! Library side of the `mld` command-line tool: argument types, the
//! subcommands, and the run manifest written next to every output.

pub mod args;
pub mod commands;
pub mod error;
pub mod manifest;

pub use commands::{cmd_rank, cmd_scatter, cmd_si, cmd_stats, Artifact, Output, Run};
pub use error::{CliError, CliResult};
pub use manifest::{InputRecord, RunManifest};

use args::{Command, OutputArgs};

/// Runs one parsed command and writes its results. Returns the text for
/// stdout; notices go to stderr.
pub fn execute(command: &Command) -> CliResult<String> {
    let (output, out_args): (Output, &OutputArgs) = match command {
        Command::Stats(a) => (cmd_stats(a)?.output, &a.output),
        Command::Rank(a) => (cmd_rank(a)?.output, &a.output),
        Command::Si(a) => (cmd_si(a)?.output, &a.output),
        Command::Scatter(a) => (cmd_scatter(a)?.output, &a.output),
    };
    for n in &output.notices {
        eprintln!("note: {n}");
    }
    if let Some(dir) = &out_args.out {
        output.write_to(dir)?;
    }
    Ok(output.summary)
}
