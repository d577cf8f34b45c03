use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("not a lattice basis (determinant {0})")]
    NotLatticeBasis(BigInt),

    #[error("zonotope is degenerate: rank {rank} < dimension {dim}")]
    Degenerate { rank: usize, dim: usize },

    #[error("translate is not a lattice vector")]
    NonLatticeTranslate,

    #[error("polynomial is not normalized: constant term is {0}, expected 1")]
    NotNormalized(String),

    #[error("polynomial degree {degree} exceeds dimension {dim}")]
    DegreeTooLarge { degree: usize, dim: usize },

    #[error("enumeration budget exceeded: {cells} cells > budget {budget}")]
    BudgetExceeded { cells: u128, budget: u128 },

    #[error("value does not fit machine integers: {0}")]
    Overflow(String),

    #[error("inadmissible coefficients: {0}")]
    Inadmissible(String),

    #[error("verification mismatch: {0}")]
    Mismatch(String),

    #[error("classification contradiction: {0}")]
    ClassificationContradiction(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }
}
