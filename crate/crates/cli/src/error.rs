use std::fmt;

use gnorm_core::Error;

/// Exit status for success.
pub const EXIT_OK: i32 = 0;
/// Input could not be read, parsed, or validated.
pub const EXIT_VALIDATION: i32 = 1;
/// A computation failed, or a gallery entry disagrees with its stored report.
pub const EXIT_COMPUTATION: i32 = 2;
/// An internal limit was hit: the step limit or the S-pair limit.
pub const EXIT_LIMIT: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Io(String),
    Parse { line: usize, column: usize, msg: String },
    Validation { field: String, line: Option<usize>, msg: String },
    Compute(Error),
    Limit(String),
    Mismatch(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) | CliError::Parse { .. } | CliError::Validation { .. } => EXIT_VALIDATION,
            CliError::Compute(Error::StepLimitExceeded(_)) | CliError::Limit(_) => EXIT_LIMIT,
            CliError::Compute(_) | CliError::Mismatch(_) => EXIT_COMPUTATION,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Io(_) => "io",
            CliError::Parse { .. } => "parse",
            CliError::Validation { .. } => "validation",
            CliError::Compute(Error::StepLimitExceeded(_)) | CliError::Limit(_) => "limit",
            CliError::Compute(_) => "computation",
            CliError::Mismatch(_) => "mismatch",
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Compute(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(m) => write!(f, "{m}"),
            CliError::Parse { line, column, msg } => write!(f, "parse error at line {line}, column {column}: {msg}"),
            CliError::Validation { field, line: Some(l), msg } => write!(f, "invalid {field} (line {l}): {msg}"),
            CliError::Validation { field, line: None, msg } => write!(f, "invalid {field}: {msg}"),
            CliError::Compute(e) => write!(f, "{e}"),
            CliError::Limit(m) => write!(f, "{m}"),
            CliError::Mismatch(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for CliError {}
