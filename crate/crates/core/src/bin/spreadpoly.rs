use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use spreadpoly::cli::{run, Cli};

fn main() -> ExitCode {
    let outcome = run(&Cli::parse());
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.exit_code.clamp(0, 255) as u8)
}
