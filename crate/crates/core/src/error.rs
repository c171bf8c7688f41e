use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error at token `{token}`: {reason}")]
    Parse { token: String, reason: String },

    #[error("invalid diagram: {0}")]
    Diagram(String),

    #[error("invalid braid move: {0}")]
    Move(String),

    #[error("diagram has {crossings} crossings, exceeding the crossing limit of {limit}")]
    CrossingLimit { crossings: usize, limit: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("integrity failure: {0}")]
    Integrity(String),

    #[error("hypothesis violated: {}", .0.join("; "))]
    Hypothesis(Vec<String>),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("could not reach a generic projection (margin {margin:e}); input is near-null")]
    NonGeneric { margin: f64 },

    #[error("unknown model link `{0}`")]
    UnknownModel(String),

    #[error("cache error: {0}")]
    Cache(String),
}

impl Error {
    pub(crate) fn parse(token: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Parse {
            token: token.into(),
            reason: reason.into(),
        }
    }
}
