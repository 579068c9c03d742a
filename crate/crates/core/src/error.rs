use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised across the crate.
///
/// Construction errors name the violated constraint so callers can report
/// which part of the input was rejected rather than a generic failure.
#[derive(Debug, Error)]
pub enum Error {
    #[error("content entry a_{index} is zero; every entry must be at least 1")]
    NonPositiveEntry { index: usize },

    #[error("content entries sum to {sum}, which is odd and cannot equal 2d-2")]
    OddContentSum { sum: usize },

    #[error("content must have at least two entries, got {got}")]
    TooFewBlocks { got: usize },

    #[error(
        "content entry a_{index} = {value} exceeds d-1 = {max} (the entries sum to 2d-2 with d = {d})"
    )]
    EntryTooLarge {
        index: usize,
        value: usize,
        max: usize,
        d: usize,
    },

    #[error("malformed tableau: {0}")]
    MalformedTableau(String),

    #[error("malformed net: {0}")]
    MalformedNet(String),

    #[error("content mismatch: {0}")]
    ContentMismatch(String),

    #[error("degenerate subspace: the coefficient rows are linearly dependent")]
    DegenerateSubspace,

    #[error("block imposes {points} conditions but the ambient degree only allows {max}")]
    BlockTooLarge { points: usize, max: usize },

    #[error("invalid problem configuration: {0}")]
    InvalidConfig(String),

    #[error("multiplicities must sum to {expected} for this solver, got {got}")]
    WrongCodimension { expected: usize, got: usize },

    #[error("interpolation system is singular; the configuration is not separated")]
    SingularSystem,

    #[error("not a flag-shaped configuration: {0}")]
    NotAFlagProblem(String),

    #[error("critical-point verification failed: {0}")]
    WronskianMismatch(String),

    #[error("internal solver failure: {0}")]
    Internal(String),
}
