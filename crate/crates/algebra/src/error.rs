use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("operands live in different variable spaces")]
    SpaceMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("square root needs constant term 1, found {0}")]
    Branch(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
