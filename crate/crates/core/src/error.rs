use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("ill-defined homomorphism: entry ({row},{col}) violates d_j * M_ij = 0 mod e_i")]
    IllDefined { row: usize, col: usize },
    #[error("group is infinite")]
    InfiniteGroup,
    #[error("hom-set is infinite: {0}")]
    InfiniteHomSet(String),
    #[error("sequence is not exact: {0}")]
    NotExact(String),
    #[error("mismatched objects: {0}")]
    Mismatch(String),
    #[error("relation failed: {0}")]
    RelationFailed(String),
    #[error("diagram is not in EMD': {0}")]
    NotInEmdPrime(String),
    #[error("unknown suite: {0}")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
