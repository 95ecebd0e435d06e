use thiserror::Error;

use crate::verify::VerificationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("cyclotomic order mismatch: {0} vs {1} (embed into a common field first)")]
    OrderMismatch(usize, usize),

    #[error("division by zero")]
    DivisionByZero,

    #[error("{what} does not lie in Q(zeta_{order})")]
    NotInField { what: String, order: usize },

    #[error("negative coordinate at position {0}; only the ring extension accepts virtual classes")]
    NegativeCoordinate(usize),

    #[error("invalid modular data: {0}")]
    InvalidModularData(String),

    #[error("degenerate braiding: S is singular")]
    DegenerateBraiding,

    #[error("unknown model `{0}`")]
    UnknownModel(String),

    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),

    #[error("unknown sector `{0}`")]
    UnknownSector(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("verification failed: {}", .0.summary())]
    Verification(Box<VerificationReport>),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Parse(err.to_string())
    }
}
