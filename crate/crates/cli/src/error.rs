//! Error classification for scriptable exit codes.
//!
//! * `1`: usage: bad flags, malformed ranges, negative pressures.
//! * `2`: data: unreadable/malformed CSV or config files, values that
//!   violate model invariants.
//! * `3`: failure: singular fits, calibration failures, validation
//!   mismatches.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error("{0}")]
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Failure(_) => 3,
        }
    }
}

/// Core errors surfacing through a CLI run concern the user's inputs
/// unless they are fit/calibration breakdowns. Flag-level validation
/// produces `Usage` explicitly before the core is ever called.
impl From<lssa_core::Error> for CliError {
    fn from(e: lssa_core::Error) -> Self {
        match e {
            lssa_core::Error::SingularFit(_) | lssa_core::Error::Calibration(_) => {
                CliError::Failure(e.to_string())
            }
            _ => CliError::Data(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
