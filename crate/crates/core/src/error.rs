use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("requested table size {requested} exceeds the limit of {limit}")]
    ResourceLimit { requested: usize, limit: usize },

    #[error("n = {n} exceeds the enumeration bound {bound}")]
    BoundExceeded { n: u64, bound: u64 },

    #[error("q-Pochhammer product does not converge: {0}")]
    NonConvergence(String),

    #[error("rejection budget exhausted for n = {n} after {trials} trials")]
    BudgetExceeded { n: u64, trials: u64 },

    #[error("empty sample")]
    EmptySample,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("domain error: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
