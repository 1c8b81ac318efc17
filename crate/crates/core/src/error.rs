use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("grade {grade} out of range for dimension {n}")]
    GradeOutOfRange { grade: usize, n: usize },

    #[error("blade index {index} out of range 1..={n}")]
    BladeIndex { index: usize, n: usize },

    #[error("metric is not symmetric")]
    MetricNotSymmetric,

    #[error("metric is singular")]
    MetricSingular,

    #[error("dimension n = {n} is not supported here: {reason}")]
    UnsupportedDimension { n: usize, reason: &'static str },

    #[error("not a module map: equivariance defect {defect:e}")]
    NotModuleMap { defect: f64 },

    #[error("symbol map is identically zero")]
    ZeroSymbol,

    #[error("element does not lie in the subspace (defect {defect:e})")]
    NotInSubspace { defect: f64 },

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("resource limit exceeded: {what} = {size} > {limit}")]
    ResourceLimit { what: &'static str, size: usize, limit: usize },

    #[error("singular point: {0}")]
    Singularity(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("cannot parse scalar from {0:?}")]
    ParseScalar(String),

    #[error("invalid multivector document: {0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, Error>;
