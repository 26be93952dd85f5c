//! File formats, the bundled corpus, and the `sasaki` command surface.

pub mod commands;
pub mod corpus;
pub mod files;
pub mod report;

use thiserror::Error;

pub use commands::{run, CohomologyMode, Command};
pub use report::{CheckRecord, Report, Status};

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed or inadmissible input; exit code 2.
    #[error("input error: {0}")]
    Input(String),
    #[error("i/o error: {0}")]
    Io(String),
    /// A construction failed on valid input; exit code 1.
    #[error("computation failed: {0}")]
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Io(_) => 2,
            CliError::Compute(_) => 1,
        }
    }
}

impl From<sasaki_core::Error> for CliError {
    fn from(e: sasaki_core::Error) -> Self {
        use sasaki_core::Error as E;
        match e {
            E::Parse(_)
            | E::Dimension(_)
            | E::InvalidDatum(_)
            | E::InvalidBundle(_)
            | E::InvalidRepresentation(_)
            | E::Range(_)
            | E::Precondition(_) => CliError::Input(e.to_string()),
            _ => CliError::Compute(e.to_string()),
        }
    }
}
