use thiserror::Error;

/// Errors raised by the library.
#[derive(Clone, Debug, Error, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("cannot normalize a zero-length vector")]
    ZeroVector,

    #[error("invalid body: {0}")]
    InvalidBody(String),

    #[error("degenerate body: {0}")]
    DegenerateBody(String),

    #[error("invalid flat: {0}")]
    InvalidFlat(String),

    #[error("alternating projection did not converge after {iterations} iterations (last move {movement:e})")]
    NonConvergence { iterations: usize, movement: f64 },

    #[error("flat contains a line parallel to the ray direction")]
    ParallelFlat,

    #[error("empty input")]
    EmptyInput,

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("invalid k = {k} for ambient dimension {d}")]
    InvalidK { k: usize, d: usize },

    #[error("axis set must contain exactly {expected} distinct axes below {d}")]
    AxisSet { expected: usize, d: usize },

    #[error("inconclusive: {unknown} tuple(s) could not be decided")]
    Inconclusive { unknown: usize },

    #[error("precondition violated: {0}")]
    PrereqViolated(String),

    #[error("instance too large: {size} bodies exceeds the limit of {limit}")]
    TooLarge { size: usize, limit: usize },

    #[error("index {0} is outside the generator's domain")]
    DegenerateIndex(i64),

    #[error("stream for family {family} cannot satisfy the request")]
    StreamExhausted { family: usize },

    #[error("builder is stuck: {0}")]
    Stuck(String),

    #[error("no sample lies beyond the norm threshold")]
    NoFarSamples,

    #[error("schema error: {0}")]
    Schema(String),

    #[error("internal verification failed: {0}")]
    VerificationFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
