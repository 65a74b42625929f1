use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid datum: {0}")]
    Datum(String),
    #[error("unsupported family for this operation: {0}")]
    Unsupported(String),
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("height {height} exceeds cutoff {cutoff}")]
    CutoffExceeded { height: u32, cutoff: u32 },
    #[error("functional `{0}` is not G-invariant")]
    NotInvariant(String),
    #[error("functional is not unital")]
    NotUnital,
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("coface index {index} out of range for tensor power {power}")]
    FaceIndex { index: usize, power: usize },
    #[error("q-exponential undefined: the {0}-th convolution power does not vanish")]
    NotNilpotent(usize),
    #[error("straightening failed: {0}")]
    Straightening(String),
    #[error("retraction precondition failed: {0}")]
    Retraction(String),
    #[error("no coalgebra retraction extension exists at monomial {0}")]
    NoExtension(String),
    #[error("cocycle check failed: {0}")]
    NotCocycle(String),
    #[error("config error at {pointer}: {message}")]
    Config { pointer: String, message: String },
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
