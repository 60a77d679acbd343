use thiserror::Error;

/// Errors from field construction and linear algebra.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of order {p}^{e} exceeds the 2^20 limit")]
    FieldTooLarge { p: u64, e: u32 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("subspaces live in different ambient spaces")]
    AmbientMismatch,
    #[error("coordinate {value} is not an element of GF({q})")]
    BadCoordinate { value: u32, q: u32 },
    #[error("enumeration of {count} items exceeds the limit {limit}")]
    TooLarge { count: u128, limit: u128 },
    #[error("enumeration would produce {count} subspaces, budget is {budget}")]
    BudgetExceeded { count: u128, budget: u128 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error(transparent)]
    Gf(#[from] GfError),
    #[error("partition has a single component")]
    TrivialPartition,
    #[error("subspace is the zero subspace")]
    ZeroSubspace,
    #[error("subspace is not a component of the partition")]
    NotAComponent,
    #[error("sub-partition is not a valid partition of the component: {0}")]
    InvalidSubPartition(String),
    #[error("bad type or dimension set: {0}")]
    BadType(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("malformed partition file: {0}")]
    Malformed(String),
    #[error(transparent)]
    Gf(#[from] GfError),
    #[error("modulus {found:?} does not match the canonical modulus {expected:?}")]
    ModulusMismatch { expected: Vec<u32>, found: Vec<u32> },
    #[error("input is not in canonical form ({0}); pass force to accept")]
    NonCanonical(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiophError {
    #[error("dimensions must be strictly increasing, positive and at most n")]
    BadDims,
    #[error("more than {0} solutions")]
    BudgetExceeded(usize),
    #[error("value q^n overflows")]
    Overflow,
    #[error("x does not solve the equation")]
    NotASolution,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error(transparent)]
    Gf(#[from] GfError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error("{d} does not divide {n}")]
    NotDivisible { n: usize, d: usize },
    #[error("bad dimensions: {0}")]
    BadDimensions(String),
    #[error("largest component dimension {max_dim} exceeds dim V' = {m}")]
    DimensionTooSmall { max_dim: usize, m: usize },
    #[error("unsupported type: {0}")]
    UnsupportedType(String),
    #[error("no construction covers these parameters: {0}")]
    UncoveredCase(String),
    #[error("search budget exceeded")]
    BudgetExceeded,
    #[error("construction would have {count} components, limit is {limit}")]
    TooLarge { count: u128, limit: u128 },
    #[error("construction produced an invalid partition: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error(transparent)]
    Gf(#[from] GfError),
    #[error("space of size {size} exceeds the limit {limit}")]
    TooLarge { size: u64, limit: u64 },
    #[error("node budget exceeded")]
    BudgetExceeded,
    #[error("more than {limit} partitions")]
    TooManyPartitions { limit: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArtifactError {
    #[error(transparent)]
    Gf(#[from] GfError),
    #[error("{what} of size {size} exceeds the limit {limit}")]
    TooLarge { what: &'static str, size: u128, limit: u128 },
}
