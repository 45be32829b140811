use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid necklace: {0}")]
    InvalidNecklace(String),

    #[error("incomparable necklace systems: {0}")]
    ShapeMismatch(String),

    #[error("invalid group parameters: {0}")]
    InvalidParams(String),

    #[error("search space of {size} exceeds the cap of {cap}")]
    CapExceeded { size: u128, cap: u128 },

    #[error("group axioms fail: {0}")]
    GroupAxioms(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("character table computation failed: {0}")]
    Oracle(String),
}

pub type Result<T> = std::result::Result<T, Error>;
