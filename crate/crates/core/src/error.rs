use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("polynomial is not homogeneous (found degrees {0} and {1})")]
    Inhomogeneous(u32, u32),

    #[error("variable x{index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },

    #[error("at most {max} variables are supported, got {got}")]
    TooManyVariables { got: usize, max: usize },

    #[error("exponent {0} too large")]
    ExponentTooLarge(u64),

    #[error("number of variables mismatch: {0} vs {1}")]
    NvarsMismatch(usize, usize),

    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(u32, u32),

    #[error("field mismatch")]
    FieldMismatch,

    #[error("{0} is not an odd prime below 2^31")]
    BadPrime(u64),

    #[error("division by zero in {0}")]
    DivisionByZero(&'static str),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is singular")]
    Singular,

    #[error("matrix of size {got} exceeds the supported bound {max}")]
    ScopeExceeded { got: usize, max: usize },

    #[error("degree {got} not supported here (expected {expected})")]
    WrongDegree { got: u32, expected: String },

    #[error("point has empty kernel: it does not lie on the Hessian variety")]
    EmptyKernel,

    #[error("degenerate basis: points are linearly dependent")]
    DegenerateBasis,

    #[error("the zero vector is not a projective point")]
    ZeroPoint,

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("input refused: {0}")]
    Refused(String),

    #[error("reconstruction failed: {0}")]
    Reconstruction(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("enumeration of {points} points exceeds the bound {bound}; use sampling")]
    EnumerationTooLarge { points: u128, bound: u128 },

    #[error("{0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
