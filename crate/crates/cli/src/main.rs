//! `gzernike` command-line front end.

mod args;
mod eval;
mod figures;
mod output;
mod table;
mod wavelet;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

/// Failure classes, mapped to exit codes 1 (verify), 2 (usage/schema) and
/// 3 (numeric domain).
#[derive(Debug)]
pub enum CliError {
    VerifyFailed,
    Usage(String),
    Numeric(String),
}

impl From<gzernike::Error> for CliError {
    fn from(e: gzernike::Error) -> Self {
        match e {
            gzernike::Error::Index(_) => CliError::Usage(e.to_string()),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(format!("i/o error: {e}"))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Usage(format!("invalid JSON: {e}"))
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.command {
        Command::Eval(a) => eval::run(a),
        Command::Table(a) => table::run(a),
        Command::Verify(a) => table::run_verify(a),
        Command::Fig2(a) => figures::run_fig2(a),
        Command::Fig3(a) => figures::run_fig3(a),
        Command::Design(a) => wavelet::run_design(a),
        Command::Synth(a) => wavelet::run_synth(a),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::VerifyFailed) => ExitCode::from(1),
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(CliError::Numeric(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
