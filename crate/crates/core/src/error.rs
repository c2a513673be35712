use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed ANF text, truth-table file or representative list.
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    /// Arguments outside an operation's domain (k > n, singular map, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// An exact computation was refused because of its size.
    #[error("{operation} refused: needs about 2^{log2_cost} evaluations, limit is 2^{log2_limit}")]
    TooExpensive {
        operation: &'static str,
        log2_cost: u32,
        log2_limit: u32,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }

    pub(crate) fn domain(message: impl Into<String>) -> Self {
        Error::Domain(message.into())
    }
}
