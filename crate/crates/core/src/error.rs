use thiserror::Error;

/// Errors from lattice, diagram and threshold operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("unsupported dimension {0} (supported: 2..=8)")]
    UnsupportedDimension(usize),
    #[error("zero weight vector is not admissible")]
    ZeroVector,
    #[error("weight vector is a multiple of the unit vector e_{0}")]
    UnitMultiple(usize),
    #[error("weight vector is not primitive (gcd {0})")]
    NotPrimitive(u64),
    #[error("empty support")]
    EmptySupport,
    #[error("f is a unit: no singularity at the origin, threshold undefined")]
    UnitAtOrigin,
    #[error("chart index {index} out of range for dimension {dim}")]
    ChartOutOfRange { index: usize, dim: usize },
    #[error("chart {0} has zero weight")]
    ZeroChartWeight(usize),
    #[error("exponent overflow")]
    Overflow,
    #[error("Brieskorn exponents must satisfy 2 <= a <= b <= c, got ({0}, {1}, {2})")]
    BrieskornNormalization(u64, u64, u64),
    #[error("Brieskorn exponent list is empty")]
    EmptyExponents,
    #[error("Brieskorn exponents must be at least 1")]
    ZeroExponent,
    #[error("threshold candidate must satisfy 0 < c <= 1, got {0}")]
    ThresholdOutOfRange(String),
    #[error("search bound exceeded (stopped at |w| = {0})")]
    BoundExceeded(u64),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
