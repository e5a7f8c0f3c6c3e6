// SPDX-License-Identifier: Apache-2.0

use std::process::ExitCode;

use clap::Parser;
use mld_cli::args::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match mld_cli::execute(&cli.command) {
        Ok(summary) => {
            print!("{summary}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
