use thiserror::Error;

use crate::table::ViolationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Structurally unusable input: out-of-range entries, bad sizes, duplicate labels.
    #[error("malformed input: {0}")]
    Malformed(String),

    /// The input is well formed but the axioms fail; the report carries witnesses.
    #[error("not a Wajsberg algebra: {0}")]
    Violations(ViolationReport),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A check that cannot fail on valid input did fail. Always a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("census for order {n} refused: {reason}")]
    CensusRefused { n: usize, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
