use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero quaternion")]
    DivisionByZero,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("basis is not orthonormal (deviation {0:.3e})")]
    Basis(f64),
    #[error("input vectors span the zero subspace")]
    EmptySpan,
    #[error("complex image has odd numerical rank {0}")]
    RankAmbiguous(usize),
    #[error("operator norm {0} is not below 1")]
    NotContractive(f64),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("truncation {rows}x{cols} too small, need at least {need}")]
    Truncation { rows: usize, cols: usize, need: usize },
    #[error("symbolic and numerical analysis disagree: {0}")]
    Conflict(String),
    #[error("operator is not Fredholm")]
    NotFredholm,
    #[error("no parametrix for this expression shape")]
    UnsupportedShape,
    #[error("perturbation is not compact")]
    NonCompactPerturbation,
}

pub type Result<T> = std::result::Result<T, Error>;
