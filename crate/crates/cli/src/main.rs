//! `mcap` command-line tool.

mod commands;
mod config;
mod report;

use std::process::ExitCode;

use clap::Parser;

use config::RunConfig;

fn main() -> ExitCode {
    let config = RunConfig::parse();
    match commands::run(&config) {
        Ok(report) => {
            print!("{}", report.render(config.format));
            ExitCode::from(report.status)
        }
        Err(err) => {
            eprintln!("{}", report::error_object(&err));
            ExitCode::from(report::exit_code(&err))
        }
    }
}
