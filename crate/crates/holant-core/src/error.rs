use thiserror::Error;

/// Errors raised by the core library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("enumeration limit exceeded: {what} is {got}, limit {limit}")]
    Limit {
        what: &'static str,
        got: usize,
        limit: usize,
    },
    #[error("ground-set mismatch: {0} vs {1}")]
    GroundMismatch(usize, usize),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("signature {name} is undefined at {d}")]
    Undefined { name: String, d: usize },
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("treewidth exceeds 2")]
    TreewidthExceeded,
    #[error("wrong algorithm: {0}")]
    WrongAlgorithm(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("route not applicable: {0}")]
    NotApplicable(String),
    #[error("field too small: need {needed} interpolation points, found {found}")]
    FieldTooSmall { needed: usize, found: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn limit(what: &'static str, got: usize, limit: usize) -> Result<()> {
    if got > limit {
        Err(Error::Limit { what, got, limit })
    } else {
        Ok(())
    }
}
