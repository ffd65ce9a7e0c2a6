//! Command-line front end: every subcommand prints a report with the
//! configuration, the result and the pass/fail checks behind it.

mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use commands::Failure;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.common.parallelism > 0 {
        // Only fails if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.common.parallelism).build_global();
    }
    eprintln!("flaghecke: {} (p = {})", cli.command.name(), cli.common.p);
    let outcome = match commands::run(&cli.command, &cli.common) {
        Ok(o) => o,
        Err(f) => {
            eprintln!("flaghecke: {f}");
            return ExitCode::from(f.exit_code() as u8);
        }
    };
    let text = output::render(&cli, &outcome);
    match &cli.common.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("flaghecke: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if outcome.report.all_pass() {
        ExitCode::SUCCESS
    } else {
        let failed: Vec<&str> = outcome.report.failures().map(|c| c.name.as_str()).collect();
        eprintln!("flaghecke: {}", Failure::Internal(format!("failed checks: {}", failed.join(", "))));
        ExitCode::from(4)
    }
}
