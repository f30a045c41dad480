use thiserror::Error;

use crate::algebra::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message}")]
pub struct ParseError {
    message: String,
}

impl ParseError {
    pub fn new(message: impl Into<String>) -> Self {
        ParseError {
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("linear form is identically zero")]
    ZeroLinearForm,
    #[error("not divisible by {divisor}: remainder {remainder}")]
    NotDivisible {
        divisor: String,
        remainder: Polynomial,
    },
    #[error("denominator does not clear: {0}")]
    NotPolynomial(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("invalid index tuple: {0}")]
    InvalidIndexTuple(String),
    #[error("index tuple blocks overlap: element {0} appears twice")]
    DistinctnessViolation(usize),
    #[error("index tuple {tuple} does not belong to shape {shape}")]
    ShapeMismatch { tuple: String, shape: String },
    #[error("shape {shape} needs {terms} symmetrization terms, over the budget of {budget}")]
    BudgetExceeded {
        shape: String,
        terms: String,
        budget: u64,
    },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("check `{check}` does not apply: {reason}")]
    NotApplicable { check: &'static str, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
