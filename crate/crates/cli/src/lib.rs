//! Library side of the `tetra` command: argument types, command
//! implementations and the verification suite, kept separate from `main`
//! so they can be tested directly.

pub mod args;
pub mod commands;
pub mod grid;
pub mod output;
pub mod verify;

use thiserror::Error;

pub use args::{Cli, Command, Format};
pub use output::{Output, OutputEnvelope, Table};

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;

/// Environment variable overriding the digit cap.
pub const DIGIT_CAP_ENV: &str = "TETRA_DIGIT_CAP";

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] tetra_core::Error),

    #[error("{0}")]
    Usage(String),

    #[error("{0}")]
    Resource(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_resource() => EXIT_RESOURCE,
            CliError::Resource(_) => EXIT_RESOURCE,
            _ => EXIT_USAGE,
        }
    }
}

/// Applies a digit-cap override from the environment, if set.
pub fn apply_env_cap() -> Result<(), CliError> {
    match std::env::var(DIGIT_CAP_ENV) {
        Ok(raw) => {
            let cap: usize = raw.trim().parse().ok().filter(|&c| c > 0).ok_or_else(|| {
                CliError::Usage(format!("{DIGIT_CAP_ENV}={raw:?} is not a positive integer"))
            })?;
            tetra_core::tower::set_digit_cap(cap);
            Ok(())
        }
        Err(_) => Ok(()),
    }
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    use Command::*;
    match &cli.command {
        Digits(a) => commands::digits(a),
        Grid(a) => grid::grid(a),
        Verify(a) => verify::verify(a),
        Speed(a) => commands::speed(a),
        Aps(a) => commands::aps(a),
        Limit(a) => commands::limit(a),
        Diff(a) => commands::diff(a),
        Slog(a) => commands::slog(a),
        Scan(a) => commands::scan(a, cli.format),
        Constants(a) => commands::constants(a),
        Graham(a) => commands::graham(a),
        Modpow(a) => commands::modpow(a),
        Valuation(a) => commands::valuation(a),
    }
}

impl Output {
    pub fn exit_code(&self) -> u8 {
        if self.check_failed {
            EXIT_CHECK_FAILED
        } else {
            EXIT_OK
        }
    }
}
