//! Configuration parsing and report rendering for the `spectral-torsion`
//! command-line tool.

pub mod config;
pub mod output;

/// Error carrying its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    /// Self-inconsistency between independent evaluations.
    pub fn internal(message: impl Into<String>) -> Self {
        Self { code: 1, message: message.into() }
    }

    /// Parse or validation failure.
    pub fn invalid(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }

    /// Dimension or case inconsistency in an otherwise well-formed job.
    pub fn inconsistent(message: impl Into<String>) -> Self {
        Self { code: 3, message: message.into() }
    }
}
