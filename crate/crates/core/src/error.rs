use num::BigUint;
use thiserror::Error;

/// Errors surfaced by the library.
///
/// `BudgetExhausted` carries the partial node count so that an aborted
/// search is never mistaken for a completed one.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0}")]
    Domain(String),

    #[error("group is not Type I: no prime q ≡ 2 (mod 3) divides {order}")]
    NotTypeI { order: u64 },

    #[error("search budget exhausted after {visited} nodes (partial count {partial})")]
    BudgetExhausted { visited: u64, partial: BigUint },

    #[error("decode error: {0}")]
    Decode(String),

    #[error("assertion failed: {0}")]
    Assertion(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub fn decode(msg: impl Into<String>) -> Self {
        Error::Decode(msg.into())
    }

    pub fn assertion(msg: impl Into<String>) -> Self {
        Error::Assertion(msg.into())
    }
}
