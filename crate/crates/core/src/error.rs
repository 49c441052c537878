use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid poset spec `{input}`: {reason}")]
    InvalidSpec { input: String, reason: String },

    #[error("invalid poset element: {0}")]
    InvalidElement(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("the down map D_0 does not exist")]
    NoDownMap,

    #[error("polynomial must be monic and non-constant: {0}")]
    NotMonic(String),

    #[error("annihilators violate the divisibility chain at position {0}")]
    ChainViolation(usize),

    #[error("characteristic polynomial does not split over Z: {0}")]
    NonIntegerSpectrum(String),

    #[error("malformed data: {0}")]
    Malformed(String),
}
