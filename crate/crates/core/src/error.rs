use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    Dimension(usize, usize),
    #[error("index {0} out of range 1..={1}")]
    Index(usize, usize),
    #[error("division by the zero expression")]
    DivisionByZero,
    #[error("denominator vanishes at the evaluation point")]
    Pole,
    #[error("one-form is not closed at ({0},{1})")]
    NotClosed(usize, usize),
    #[error("one-form depends on jet variables and cannot be integrated")]
    NotPolynomialForm,
    #[error("a0 is not a valid seed: {0}")]
    InvalidSeed(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("singular operator")]
    Singular,
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
