//! `plstat`: persistence landscapes, confidence intervals and density
//! estimates from the command line.
//!
//! Exit status: 0 success, 2 usage, 3 bad input data, 4 numeric/domain error.

mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;
use plstat_core::ErrorKind;

fn main() -> ExitCode {
    let cli = args::Cli::parse();
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("plstat: {e}");
            match e.kind() {
                ErrorKind::Data => ExitCode::from(3),
                ErrorKind::Numeric => ExitCode::from(4),
            }
        }
    }
}
