use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid map: {0}")]
    InvalidMap(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("nonidentity required")]
    NonidentityRequired,

    #[error("element is not in the commutator subgroup F'")]
    NotInFPrime,

    #[error("set does not generate the group")]
    NotGenerating,

    #[error("size guard exceeded: {size} elements > limit {limit}")]
    SizeGuard { size: u128, limit: usize },

    #[error("determinant is {0}, expected 1")]
    Determinant(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

impl Error {
    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
