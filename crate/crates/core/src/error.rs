use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("invalid group {name}: {reason}")]
    FamilyConstraint { name: String, reason: String },

    #[error("group order {order} exceeds the configured maximum {max}")]
    OrderTooLarge { order: u64, max: u64 },

    #[error("group {0} is not nilpotent")]
    NotNilpotent(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("tuple arity mismatch: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("difference graph is empty")]
    EmptyDifferenceGraph,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
