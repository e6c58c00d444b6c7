use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("inadmissible root system {label}: {reason}")]
    InadmissibleType { label: String, reason: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0} is not a root of the system")]
    NotARoot(String),

    #[error("weight has {got} coordinates, expected {expected}")]
    RankMismatch { expected: usize, got: usize },

    #[error("simple reflection index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("elements belong to different root systems")]
    MixedSystems,

    #[error("{0} is not a simple root of the integral system")]
    NotIntegralSimple(String),

    #[error("element {0} is not in the integral Weyl group")]
    NotInIntegralWeylGroup(String),

    #[error("weight {0} is not in lambda + P")]
    NotInCoset(String),

    #[error(
        "lambda = {0} is not dominant; normalize the parameters first (normalize_principal_series)"
    )]
    NotDominant(String),

    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
}
