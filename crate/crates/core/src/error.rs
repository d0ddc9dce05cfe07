use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("gram matrix is empty")]
    Empty,
    #[error("gram matrix is not square (row {row} has {len} entries, expected {rank})")]
    NotSquare { row: usize, len: usize, rank: usize },
    #[error("gram matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("lattice is not even: diagonal entry {index} is odd")]
    NotEven { index: usize },
    #[error("gram matrix is not positive definite: leading minor {index} is not positive")]
    NotPositiveDefinite { index: usize },
    #[error("enumeration bound must be non-negative")]
    BoundNegative,
    #[error("vector of length {got} does not match lattice rank {rank}")]
    DimensionMismatch { got: usize, rank: usize },
    #[error("vector is not in the dual lattice")]
    NotInDual,
    #[error("sublattice basis does not have full rank")]
    NotFullRank,
    #[error("lattice has no orthogonal base (gram matrix is not diagonal)")]
    NotOrthogonalBase,
    #[error("label {0} does not name an irreducible module of this lattice")]
    UnknownLabel(String),
    #[error("cannot parse module label {0:?}")]
    BadLabel(String),
    #[error("fusion row with first module {0} is not covered by the rank-one table")]
    UnsupportedRow(String),
    #[error("fusion query with twisted first module {0} is not covered")]
    UnsupportedFirstArgument(String),
    #[error("lattice is not of rank one")]
    NotRankOne,
    #[error("truncation order must be at least 1")]
    BadOrder,
    #[error("malformed input: {0}")]
    Malformed(String),
}
