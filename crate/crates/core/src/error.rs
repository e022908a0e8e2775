use thiserror::Error;

/// Errors raised by group construction, algebra and dynamics operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid group order: {0}")]
    InvalidOrder(usize),

    #[error("capacity exceeded: {what} ({size} > {limit})")]
    Capacity {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("identity element in generator set would create self-loops")]
    SelfLoop,

    #[error("invalid generator set: {0}")]
    InvalidGenerators(String),

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("element {id} out of range for group of order {order}")]
    ElementOutOfRange { id: usize, order: usize },

    #[error("incompatible groups: {0}")]
    GroupMismatch(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("numerical error: {0}")]
    Numerical(String),

    #[error("serialization error: {0}")]
    Serialization(String),
}

pub type Result<T> = std::result::Result<T, Error>;
