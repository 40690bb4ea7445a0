//! Implementation of the `dpend` command-line tool, exposed as a library so
//! the integration and acceptance tests can drive the same code paths.
//!
//! Exit-code contract: 0 success, 1 verification failure, 2 nonconvergence
//! or certificate denial, 3 invalid input (including I/O problems with the
//! requested paths).

pub mod commands;
pub mod config;
pub mod verify;

use std::fmt;

/// Failure modes mapped onto the exit-code contract.
#[derive(Debug, Clone)]
pub enum CliError {
    /// Exit 3.
    Invalid(String),
    /// Exit 2.
    NotConverged(String),
}

impl CliError {
    pub fn invalid(msg: String) -> Self {
        CliError::Invalid(msg)
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 3,
            CliError::NotConverged(_) => 2,
        }
    }

    pub fn from_core(err: dpend::Error) -> Self {
        match err {
            dpend::Error::InfeasibleInit { .. }
            | dpend::Error::InvalidArgument(_)
            | dpend::Error::OutOfRange { .. }
            | dpend::Error::InvalidRange { .. } => CliError::Invalid(err.to_string()),
            _ => CliError::NotConverged(err.to_string()),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Invalid(m) | CliError::NotConverged(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for CliError {}
