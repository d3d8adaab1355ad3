use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("distribution is empty")]
    EmptyDistribution,

    #[error("negative probability {value} at index {index}")]
    NegativeProbability { index: usize, value: String },

    #[error("probabilities sum to {sum}, expected exactly 1")]
    NotNormalized { sum: String },

    #[error("matrix shape mismatch: expected {expected}, got {actual}")]
    ShapeMismatch { expected: String, actual: String },

    #[error("vertex budget of {limit} exceeded")]
    LimitExceeded { limit: usize },

    #[error("common denominator {denominator} exceeds the dynamic-programming budget {budget}")]
    DenominatorOverflow { denominator: String, budget: u64 },

    #[error("subset-sum target {target} exceeds the total weight {total}")]
    TargetExceedsTotal { target: String, total: String },

    #[error("malformed instance: {0}")]
    MalformedInstance(String),

    #[error("invalid basis: {0}")]
    InvalidBasis(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
