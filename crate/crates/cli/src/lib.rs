//! The `hdioph` command line: argument parsing, seeded dispatch to the
//! library crates, and JSON/CSV output.

mod args;
mod commands;
mod error;
pub mod output;

use std::ffi::OsString;

use clap::Parser;

pub use args::{Cli, Command, Global, Model};
pub use error::CliError;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "HDIOPH_THREADS";

fn threads() -> Result<usize, CliError> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(0),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(CliError::Config(format!("{THREADS_ENV} must be a positive integer, got {s:?}"))),
        },
    }
}

fn execute(cli: &Cli) -> Result<Option<CliError>, CliError> {
    if cli.global.precision_bits < 64 {
        return Err(CliError::Config(format!("--precision-bits must be at least 64, got {}", cli.global.precision_bits)));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads()?)
        .build()
        .map_err(|e| CliError::Io(e.to_string()))?;
    let (name, params, report) = pool.install(|| commands::dispatch(&cli.global, &cli.command))?;
    output::write(&cli.global.out, name, params, &report)?;
    Ok(report.failure)
}

/// Runs `hdioph` on `argv` (program name first) and returns the exit
/// code: 0 on success, 2 on invalid configuration, 3 on an invariant
/// violation, 1 on i/o failure.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(None) => 0,
        Ok(Some(e)) | Err(e) => {
            eprintln!("hdioph: {e}");
            e.exit_code()
        }
    }
}
