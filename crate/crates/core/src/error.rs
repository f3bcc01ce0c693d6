use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unbounded region")]
    UnboundedRegion,

    #[error("invalid halfspace: {0}")]
    InvalidHalfspace(String),

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("inner exceeds outer (worst slack {slack:.3e} bits)")]
    InnerExceedsOuter { slack: f64 },

    #[error("cyclic substitution involving `{0}`")]
    CyclicSubstitution(String),

    #[error("derivation mismatch: {0}")]
    DerivationMismatch(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("channel is not semi-deterministic")]
    NotSemiDeterministic,

    #[error("grid too large: {points} points exceeds the limit of {limit}; use a coarser grid")]
    GridTooLarge { points: f64, limit: f64 },

    #[error("negative argument {0} to log2(1 + x)")]
    NegativeArgument(f64),

    #[error("pre-coding ratio undefined")]
    PrecodingRatioUndefined,

    #[error("covariance not positive semidefinite (eigenvalue {eigenvalue:.3e})")]
    NotPositiveSemidefinite { eigenvalue: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
