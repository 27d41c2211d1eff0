use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("singular matrix")]
    Singular,

    #[error("invalid system: {0}")]
    InvalidSystem(String),

    #[error("invalid exponent: {0}")]
    InvalidExponent(String),

    #[error("polynomials are not coprime (resultant vanishes)")]
    NotCoprime,

    #[error("system is not zero-dimensional: no eliminant in x{} of degree <= {bound}", .var + 1)]
    NotZeroDimensional { var: usize, bound: u64 },

    #[error("height of the zero polynomial is undefined")]
    UndefinedHeight,

    #[error("numeric failure: achieved interval width {achieved_width:e}")]
    NumericFailure { achieved_width: f64 },

    #[error("invalid transform: {0}")]
    InvalidTransform(String),

    #[error("oracle unavailable: {0}")]
    OracleUnavailable(String),

    #[error("syntax error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("internal consistency error: {0}")]
    Internal(String),
}
