mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

/// Why a subcommand stopped early.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags or unreadable inputs.
    Usage(anyhow::Error),
    /// A checked invariant was falsified; carries the first counterexample.
    Invariant(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

pub type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sieve(a) => commands::sieve(a),
        Command::Exact(a) => commands::exact(a),
        Command::Density(a) => commands::density(a),
        Command::Verify(a) => commands::verify(a),
        Command::Gaps(a) => commands::gaps(a),
        Command::Constants(a) => commands::constants(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invariant(msg)) => {
            eprintln!("invariant failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
