use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("vectors do not have full rank")]
    NotFullRank,
    #[error("elongation must be nonzero")]
    ZeroElongation,
    #[error("relation has zero sum vector")]
    ZeroSumVector,
    #[error("vectors must differ")]
    EqualVectors,
    #[error("alpha equals n*beta, difference degenerates")]
    DegenerateDifference,
    #[error("denominator vector not expandable (zero or negative coordinate)")]
    NonExpandableDenominator,
    #[error("substitution point hits a pole")]
    PoleHit,
    #[error("substitution point has a zero coordinate")]
    ZeroCoordinate,
    #[error("invalid rank for root system label: {0}")]
    InvalidRank(String),
    #[error("denominator vector lies outside the extended root set")]
    VectorOutsideExtendedSet,
    #[error("cone has empty interior")]
    EmptyInterior,
    #[error("indicator vector lies on a support hyperplane")]
    BadIndicator,
    #[error("input vectors are linearly independent")]
    IndependentInput,
    #[error("decomposition exceeded the step limit")]
    StepLimit,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
