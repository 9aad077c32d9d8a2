use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("invalid block configuration: {0}")]
    InvalidConfig(String),
    #[error("point is not regular: {0}")]
    NonRegularPoint(String),
    #[error("Euler field is not invertible at this point: {0}")]
    NonInvertibleEuler(String),
    #[error("one-form is not closed (component {i},{j} of its exterior derivative is nonzero)")]
    NotClosed { i: usize, j: usize },
    #[error("operator has nonzero Nijenhuis torsion")]
    TorsionNotZero,
    #[error("configuration is not semisimple")]
    NotSemisimpleConfig,
    #[error("configuration has more than one Jordan block")]
    NotSingleBlock,
    #[error("no closed-form table for this configuration: {0}")]
    UnsupportedDimension(String),
    #[error("characteristic speeds {i} and {j} coincide at the point")]
    CoincidingSpeeds { i: usize, j: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
