use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero in GF({0})")]
    DivisionByZero(u32),

    #[error("invalid field modulus {0}: must be an odd prime below 2^16")]
    InvalidModulus(u32),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("undefined input: {0}")]
    UndefinedInput(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid problem shape: {0}")]
    InvalidShape(String),

    #[error("series is not a polynomial: {0}")]
    NonPolynomialSeries(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("size guard: {0}")]
    SizeGuard(String),

    #[error("not a complex: {0}")]
    NotAComplex(String),

    #[error("Macaulay matrix is empty at degree {0}")]
    EmptyMatrix(u32),

    #[error("degree {degree} is insufficient: {reason}")]
    InsufficientDegree { degree: u32, reason: String },

    #[error("genericity failure: no Groebner basis found up to degree {max_degree}")]
    GenericityFailure { max_degree: u32 },

    #[error("ideal is positive dimensional (staircase exceeded {cap} monomials)")]
    PositiveDimension { cap: usize },

    #[error("Hilbert function mismatch at degree {degree}: rank method {by_rank}, staircase method {by_staircase}")]
    HilbertMismatch {
        degree: usize,
        by_rank: i64,
        by_staircase: i64,
    },

    #[error("I/O error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
