use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Coarse classification used by the CLI to pick an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Input is well formed but outside the operation's domain.
    Domain,
    /// Input could not be parsed or the request is malformed.
    Usage,
    /// An object that must exist was not found: an implementation bug.
    Internal,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("not in language: {0}")]
    NotInLanguage(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parity mismatch: {0}")]
    Parity(String),
    #[error("length {m} exceeds the scan bound {bound}")]
    BoundExceeded { m: usize, bound: usize },
    #[error("unsupported grammar: {0}")]
    UnsupportedGrammar(String),
    #[error("rule application failed: {0}")]
    Apply(String),
    #[error("internal soundness failure: {0}")]
    Internal(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Parse(_) => ErrorKind::Usage,
            Error::Internal(_) => ErrorKind::Internal,
            _ => ErrorKind::Domain,
        }
    }
}
