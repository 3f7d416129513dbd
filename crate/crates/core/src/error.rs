use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("order parameter r must be at least 2, got {0}")]
    InvalidOrder(u32),
    #[error("color {0} is atypical")]
    AtypicalColor(Complex64),
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    #[error("inadmissible 6j input: {0}")]
    InadmissibleSixJ(String),
    #[error("colors must sum to zero, sum is {0}")]
    ColorSumNonzero(Complex64),
    #[error("generator index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("degenerate parameter A = {0}")]
    DegenerateParameter(Complex64),
    #[error("singular matrix in {0}")]
    Singular(String),
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
