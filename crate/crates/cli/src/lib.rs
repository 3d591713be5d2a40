//! Command-line front end for `trimode-core`.
//!
//! Every subcommand resolves its inputs (flags, then a `key = value`
//! config file, then defaults), builds a [`output::Report`] and writes it as
//! JSON or CSV. See [`run`] for the exit-code contract.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod verify;

use std::path::PathBuf;

use args::{Cli, Command};
use commands::{load_config, settings, Settings};
use error::{exit, CliError, CliResult};
use output::Report;

/// Runs one parsed invocation and returns the process exit code. Errors are
/// written to stderr.
pub fn run(cli: &Cli) -> i32 {
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn out_dir() -> Option<PathBuf> {
    std::env::var_os(output::OUT_DIR_ENV).map(PathBuf::from)
}

fn write(report: &Report, s: &Settings) -> CliResult<()> {
    let bytes = report.render(s.format)?;
    let dir = out_dir();
    let path = s.out.as_deref().map(|p| output::resolve_out(p, dir.as_deref()));
    output::emit(&bytes, path.as_deref())
}

fn dispatch(cli: &Cli) -> CliResult<i32> {
    let (report, s) = match &cli.command {
        Command::Spectrum(a) => commands::spectrum(a)?,
        Command::Analytic(a) => commands::analytic(a)?,
        Command::Coherent(a) => commands::coherent(a)?,
        Command::Compare(a) => commands::compare(a)?,
        Command::Verify(a) => {
            let file = load_config(&a.common)?;
            let s = settings(&a.common, &file, &[])?;
            let ctx = verify::Context {
                params: s.params,
                inject_fault: a.inject_fault,
            };
            let results = verify::run(&ctx, &a.only).map_err(CliError::Invalid)?;
            write(&verify::report(&ctx, &results), &s)?;
            let ok = results.iter().all(verify::SuiteResult::passed);
            return Ok(if ok { exit::OK } else { exit::VERIFY_FAILED });
        }
    };
    write(&report, &s)?;
    Ok(exit::OK)
}
