mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use commands::{Defaults, Outcome};

const CAPS_VAR: &str = "PADIC_BETA_DEFAULT_CAPS";

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let defaults = match std::env::var(CAPS_VAR) {
        Ok(s) => match Defaults::parse(&s) {
            Ok(d) => d,
            Err(msg) => {
                eprintln!("error: {CAPS_VAR}: {msg}");
                return ExitCode::from(1);
            }
        },
        Err(_) => Defaults::default(),
    };
    match commands::run(cli.command, defaults) {
        Ok(report) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&report.body).expect("reports are valid JSON")
            );
            match report.outcome {
                Outcome::Decided => ExitCode::SUCCESS,
                Outcome::Undecided => ExitCode::from(2),
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
