use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("not available: {0}")]
    NotAvailable(String),

    #[error("enumeration refused: group order {order} exceeds limit {limit}")]
    LimitExceeded { order: BigUint, limit: u64 },

    #[error("strategy refused: {reason} (feasible: {})", feasible.join(", "))]
    Infeasible {
        reason: String,
        feasible: Vec<String>,
    },

    #[error("vacuous bound: {0}")]
    Vacuous(String),
}

pub type Result<T> = std::result::Result<T, Error>;
