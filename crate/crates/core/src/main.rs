use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use univseq::cli::{run, RunConfig, EXIT_ERROR};

fn main() -> ExitCode {
    let config = RunConfig::parse();
    let outcome = run(&config);
    let written = if outcome.code == EXIT_ERROR {
        std::io::stderr().write_all(outcome.report.as_bytes())
    } else {
        std::io::stdout().write_all(outcome.report.as_bytes())
    };
    if written.is_err() {
        return ExitCode::from(EXIT_ERROR as u8);
    }
    ExitCode::from(outcome.code as u8)
}
