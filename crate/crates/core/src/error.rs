use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("Gram matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("Gram matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("lattice is not even: diagonal entry {0} is odd")]
    NotEven(usize),
    #[error("lattice is degenerate")]
    Degenerate,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("roots undefined for indefinite input")]
    Indefinite,
    #[error("rank {rank} exceeds the enumeration cap {cap}")]
    RankTooLarge { rank: usize, cap: usize },
    #[error("sublattice is not primitive")]
    NotPrimitive,
    #[error("vector is not in the lattice")]
    NotInLattice,
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("sigma must be in 1..=10, got {0}")]
    SigmaOutOfRange(u32),
    #[error("unsupported root system type {0}")]
    UnsupportedRootType(String),
    #[error("element does not preserve the root system")]
    NotPreserved,
    #[error("element is not a p-power order isometry: {0}")]
    BadOrder(String),
    #[error("group enumeration exceeded the cap of {0} elements")]
    CapExceeded(usize),
    #[error("scope exceeded: {0}")]
    ScopeExceeded(String),
    #[error("invalid symbol: {0}")]
    InvalidSymbol(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("table data error: {0}")]
    Table(String),
    #[error("invalid embedding query: {0}")]
    InvalidQuery(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
