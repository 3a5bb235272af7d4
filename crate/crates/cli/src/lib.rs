//! Command-line front end for `tra-core`: `.alg` spec files, subcommands for
//! each verifier, and reports as tables or JSON.

pub mod args;
pub mod commands;
pub mod invocation;
pub mod report;
pub mod spec;

use std::ffi::OsString;
use std::io::Write;

use clap::{CommandFactory, Parser};
use thiserror::Error;
use tra_core::limits::Limits;

pub use commands::{execute, replay, revalidate_witness};
pub use invocation::{Formula, Invocation, Mode};
pub use report::{Outcome, RunReport, Witness};
pub use spec::AlgebraSpec;

/// Exit code for usage and input errors.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("invalid spec: {0}")]
    Spec(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Core(#[from] tra_core::Error),
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match args::Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let mut text = e.render().to_string();
            if e.use_stderr() && !text.contains("Usage:") {
                text.push_str(&format!("\n{}\n", usage_for(&args)));
            }
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match run(&cli) {
        Ok(report) => {
            let text = if cli.mode.json {
                format!("{}\n", report.to_json())
            } else {
                report.to_table()
            };
            let _ = out.write_all(text.as_bytes());
            report.outcome.exit_code()
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

/// Usage line of the subcommand named in `args`, or of the whole program.
fn usage_for(args: &[OsString]) -> String {
    let mut cmd = args::Cli::command();
    cmd.build();
    let name = args
        .iter()
        .skip(1)
        .filter_map(|a| a.to_str())
        .find(|a| cmd.find_subcommand(a).is_some())
        .map(str::to_string);
    let usage = match name {
        Some(name) => cmd.find_subcommand_mut(&name).expect("known subcommand").render_usage(),
        None => cmd.render_usage(),
    };
    usage.to_string()
}

fn run(cli: &args::Cli) -> Result<RunReport, CliError> {
    let limits = Limits::from_env()?;
    let inv = cli.command.resolve()?;
    execute(&inv, &cli.mode.mode(), &limits)
}
