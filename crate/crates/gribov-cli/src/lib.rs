//! Library half of the `gribov` command-line tool: spec-file schema,
//! report shapes, and the command pipeline. The binary in `main.rs` is a
//! thin argument-parsing wrapper.

pub mod pipeline;
pub mod report;
pub mod schema;

use std::fmt;

/// Errors split by exit code: user/validation problems exit 2, numerical
/// failures (iteration limits, inseparable clusters) exit 3.
#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(msg) | CliError::Numerical(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<gribov_core::Error> for CliError {
    fn from(e: gribov_core::Error) -> Self {
        match e {
            gribov_core::Error::IterationLimit { .. } | gribov_core::Error::IllSeparatedClusters => {
                CliError::Numerical(e.to_string())
            }
            other => CliError::Validation(other.to_string()),
        }
    }
}
