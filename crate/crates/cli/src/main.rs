use std::process::ExitCode;

use clap::Parser;

mod args;
mod commands;
mod error;

use args::{Cli, Command};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("KNORMAL_LOG", "warn")).init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Search(a) => commands::search(a),
        Command::Verify(a) => commands::verify(a),
        Command::Extend(a) => commands::extend(a),
        Command::Factor(a) => commands::factor(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
