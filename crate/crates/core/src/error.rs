use std::time::Duration;

use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Membership is only defined for odd arguments.
    #[error("{0} is even; only odd integers are classified")]
    EvenInput(BigUint),

    #[error("factorization of {n} exceeded the time budget of {budget:?}")]
    FactorizationTimeout { n: BigUint, budget: Duration },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
