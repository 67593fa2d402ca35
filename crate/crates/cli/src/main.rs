//! `qnl`: command-line driver for the quantum-foundations toolkit.
//!
//! Subcommands run the individual demonstrations (EPR trials, partner
//! observables, ray colorings, the magic square, pilot-wave measurements)
//! and `report` chains them into the full nonlocality argument. All output
//! is JSON on stdout; `--out` additionally writes the report and any CSV
//! artifacts to disk. Exit codes: 0 success, 1 usage or input error,
//! 2 contract violation.

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use std::process::ExitCode;

mod commands;
mod fixtures;
mod output;

use output::CliError;

#[derive(Parser)]
#[command(name = "qnl", version, about = "Quantum nonlocality toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run trial ensembles of the two-party protocol on an entangled state
    Epr(commands::epr::EprArgs),
    /// Build the partner observable and check the correlation identity
    Partner(commands::partner::PartnerArgs),
    /// Search a ray set for a valid 0/1 coloring
    Ks(commands::ks::KsArgs),
    /// Validate the magic square and count satisfying sign assignments
    Mermin(commands::mermin::MerminArgs),
    /// Pilot-wave spin measurement demonstrations
    Bohm(commands::bohm::BohmArgs),
    /// Chain every check into the nonlocality report
    Report(commands::report::ReportArgs),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Epr(args) => commands::epr::run(args),
        Command::Partner(args) => commands::partner::run(args),
        Command::Ks(args) => commands::ks::run(args),
        Command::Mermin(args) => commands::mermin::run(args),
        Command::Bohm(args) => commands::bohm::run(args),
        Command::Report(args) => commands::report::run(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Contract(msg)) => {
            eprintln!("contract violation: {msg}");
            ExitCode::from(2)
        }
    }
}
