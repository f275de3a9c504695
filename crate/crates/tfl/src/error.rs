use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A constructor was asked for a graph outside the supported 1..=64 range.
    #[error("invalid size: {0}")]
    InvalidSize(String),

    /// A parameter violated an operation's precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An operation refused an input that exceeds its hard size limit.
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    /// A search ran out of its node budget (or was cancelled) before the
    /// space was exhausted. Distinct from a proven "no such object".
    #[error("search budget exceeded")]
    BudgetExceeded,

    /// A graph6 line failed to decode.
    #[error("graph6 decode error at line {line}: {reason}")]
    Decode { line: usize, reason: String },

    /// A gap profile could not be built from the given cycle.
    #[error("gap profile unavailable: {0}")]
    ProfileUnavailable(String),

    /// Underlying I/O failure, carried as text so the error stays cloneable.
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
