use std::path::PathBuf;

use thiserror::Error;

/// Process exit status for a successful run whose report passes or is vacuous.
pub const EXIT_OK: i32 = 0;
/// The verification ran but at least one component failed a check.
pub const EXIT_FAIL: i32 = 2;
/// Bad input: unreadable or malformed files, invalid parameters, usage errors.
pub const EXIT_INPUT: i32 = 3;
/// Anything else, including failures to write outputs.
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: parse error at line {line}, byte {byte}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        byte: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },
    #[error("invalid argument: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] flatreach_core::Error),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use flatreach_core::Error as E;
        match self {
            CliError::Read { .. }
            | CliError::Parse { .. }
            | CliError::Format { .. }
            | CliError::Usage(_) => EXIT_INPUT,
            CliError::Core(E::Domain(_) | E::Parameter(_) | E::Resolution(_)) => EXIT_INPUT,
            CliError::Core(E::FocalOnly) | CliError::Write { .. } | CliError::Internal(_) => {
                EXIT_INTERNAL
            }
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
