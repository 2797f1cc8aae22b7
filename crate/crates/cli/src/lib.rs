//! The `mbm` command-line tool.
//!
//! [`run`] parses arguments, dispatches one subcommand and maps failures to
//! exit codes: 0 success, 1 internal failure, 2 domain or flag error,
//! 3 numerical non-convergence.

mod args;
mod commands;
mod config;
mod table;

use std::ffi::OsString;
use std::fmt;
use std::io::{self, Write};

use clap::error::ErrorKind;
use clap::Parser;

pub use args::Cli;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_NONCONVERGENCE: i32 = 3;

#[derive(Debug)]
pub(crate) enum CliError {
    Usage(String),
    Core(mbm_core::Error),
    Io(io::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_DOMAIN,
            CliError::Core(mbm_core::Error::NonConvergence { .. }) => EXIT_NONCONVERGENCE,
            CliError::Core(_) => EXIT_DOMAIN,
            CliError::Io(_) => EXIT_INTERNAL,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<mbm_core::Error> for CliError {
    fn from(e: mbm_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

pub(crate) type CliResult<T> = Result<T, CliError>;

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args: Result<Vec<String>, OsString> = args.into_iter().map(|a| a.into().into_string()).collect();
    let args = match args {
        Ok(a) => a,
        Err(bad) => {
            let _ = writeln!(err, "error: argument {bad:?} is not valid UTF-8");
            return EXIT_DOMAIN;
        }
    };
    let args = match config::expand(args) {
        Ok(a) => a,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_DOMAIN;
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_DOMAIN
                }
            };
        }
    };
    match commands::dispatch(cli.command, out, err) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
