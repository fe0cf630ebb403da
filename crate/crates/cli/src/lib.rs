//! Library side of the `hofstadter` binary.

pub mod args;
mod commands;
pub mod reports;

use std::io::Write;

pub use args::{Cli, Command, Format};

/// Exit status for a run that found an invariant violated.
pub const EXIT_VIOLATION: i32 = 1;
/// Exit status for bad arguments or unsupported parameters.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("invariant violated: {0}")]
    Violation(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Violation(_) | CliError::Io(_) => EXIT_VIOLATION,
            CliError::Usage(_) => EXIT_USAGE,
        }
    }
}

impl From<hofstadter::Error> for CliError {
    fn from(e: hofstadter::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// Runs a parsed command, writing its report to `out`.
pub fn run<W: Write>(cli: &Cli, out: &mut W) -> Result<(), CliError> {
    commands::dispatch(cli, out)
}
