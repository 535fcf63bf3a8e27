use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed set input. `location` is a line number for text input or an
    /// element index for JSON input.
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    /// A caller broke an operation's precondition.
    #[error("contract violation: {0}")]
    Contract(String),

    /// An input is larger than the enumeration cap for the requested primitive.
    #[error("{what}: size {size} exceeds cap {cap}; {advice}")]
    Resource {
        what: &'static str,
        size: usize,
        cap: usize,
        advice: &'static str,
    },

    /// Invalid parameters (non-prime modulus, zero coefficient, ...).
    #[error("invalid input: {0}")]
    Input(String),

    /// An internal consistency check failed. Always a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse_line(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            location: format!("line {line}"),
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
