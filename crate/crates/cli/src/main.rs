//! `diffposet` command-line front end.
//!
//! Exit codes: 0 all checks pass, 1 verification failure, 2 obstruction or
//! inconclusive search, 3 usage error.

mod cache;
mod commands;
mod config;
mod table;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use cache::Cache;
use commands::{UsageError, EXIT_USAGE, EXIT_VERIFICATION_FAILURE};
use config::{Cli, Format};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    let cache = if cli.run.no_cache {
        Cache::disabled()
    } else {
        Cache::new(Some(cli.run.cache_dir.clone()))
    };
    let outcome = match commands::run(&cli.command, &cli.run, &cache) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = if e.is::<UsageError>() { EXIT_USAGE } else { EXIT_VERIFICATION_FAILURE };
            return ExitCode::from(code);
        }
    };
    let text = match cli.run.format {
        Format::Json => outcome.payload,
        Format::Table => {
            let v = serde_json::from_str(&outcome.payload).expect("payloads are JSON");
            table::render(&cli.command, &v)
        }
    };
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(text.as_bytes());
    let _ = stdout.flush();
    ExitCode::from(outcome.exit)
}
