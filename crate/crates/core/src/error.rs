use thiserror::Error;

/// Errors raised by the math core.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero vector has no primitive form")]
    ZeroVector,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("invalid fan: {0}")]
    InvalidFan(String),

    #[error("codimension {codim} out of range 0..={max}")]
    CodimOutOfRange { codim: usize, max: usize },

    #[error("fan is not complete")]
    NotComplete,

    #[error("invalid poset: {0}")]
    InvalidPoset(String),

    #[error("invalid boundary data: {0}")]
    InvalidBoundary(String),

    #[error("invalid matroid: {0}")]
    InvalidMatroid(String),

    #[error("loopless required: element {0} is a loop")]
    LoopNotAllowed(usize),

    #[error("tropical hypersurface of a monomial is empty")]
    MonomialHypersurface,

    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    #[error("invalid split: {0}")]
    InvalidSplit(String),

    #[error("tree space needs at least 4 leaves, got {0}")]
    TooFewLeaves(usize),

    #[error("invalid stratification: {0}")]
    InvalidStratification(String),

    #[error("invalid multiplicity: {0}")]
    InvalidMultiplicity(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
