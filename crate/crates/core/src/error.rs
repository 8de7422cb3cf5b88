use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("signature {0} is not hyperbolic")]
    NotHyperbolic(String),
    #[error("no smooth kernel of order {order} for {sig}")]
    NoSmoothKernel { sig: String, order: u64 },
    #[error("cannot parse `{token}`: {reason}")]
    Parse { token: String, reason: String },
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("splitting lemma inapplicable: {0}")]
    LemmaInapplicable(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    /// An exactness assertion failed; always a bug somewhere upstream.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(token: impl Into<String>, reason: impl Into<String>) -> Error {
    Error::Parse { token: token.into(), reason: reason.into() }
}
