mod args;
mod commands;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use commands::{Failure, SEED_ENV};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let outcome = match &cli.command {
        Command::Triangulate(a) => commands::triangulate(a),
        Command::Nerves(a) => commands::nerves(a),
        Command::Spokes(a) => commands::spokes(a),
        Command::Shape(a) => commands::shape(a),
        Command::Axioms(a) => commands::axioms(a, std::env::var(SEED_ENV).ok()),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let prefix = match f {
                Failure::Input(_) => "error",
                Failure::Internal(_) => "internal error",
            };
            eprintln!("nervetopo: {prefix}: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}
