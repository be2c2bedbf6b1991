mod args;
mod commands;
mod error;

use std::process::ExitCode;

use clap::Parser;

use crate::args::Cli;
use crate::error::Exit;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(()) => ExitCode::from(Exit::Ok as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit as u8)
        }
    }
}
