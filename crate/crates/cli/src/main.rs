mod args;
mod commands;
mod error;
mod input;
mod report;

use std::fs;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use error::{CliError, CliResult};

fn run(cli: &Cli) -> CliResult<String> {
    match &cli.command {
        Command::VerticalCensus { sfs } => commands::vertical_census(cli, sfs),
        Command::SpinCompare(spec) => commands::spin_compare(cli, spec),
        Command::Orbit(args) => commands::orbit(cli, args),
        Command::StabRobustness { pair, sectors, len, balanced } => {
            commands::stab_robustness(cli, pair, sectors, *len, *balanced)
        }
        Command::SpineConnect { from, to, from_certificate, to_certificate, max_depth } => {
            commands::spine_connect(from, to, [from_certificate, to_certificate], *max_depth)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|text| match &cli.out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("nielsen: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
