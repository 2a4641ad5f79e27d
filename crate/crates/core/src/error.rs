use cr_algebra::AlgebraError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CrError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("map does not send source into target (remainder {0})")]
    NotInto(String),
    #[error("map is not CR transversal")]
    NonTransversal,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("not a homothety: Q = {0}")]
    NotHomothety(String),
    #[error("metric is degenerate")]
    DegenerateMetric,
}

pub type Result<T, E = CrError> = std::result::Result<T, E>;
