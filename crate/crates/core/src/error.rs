use alloc::string::String;

use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed arguments: dimension mismatches, out-of-range values.
    #[error("input error: {0}")]
    Input(String),
    #[error("slice is infeasible")]
    SliceInfeasible,
    /// The pipeline requires bounded objective images.
    #[error("pipeline error: {0}")]
    Pipeline(String),
    #[error("limit exceeded: {0}")]
    Limit(String),
    #[error("pieces {0} and {1} dominate each other full-dimensionally")]
    MutualDominance(usize, usize),
    #[error("carving did not finish within {0} operations")]
    BudgetExhausted(usize),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}
