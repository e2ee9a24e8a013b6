use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("extension degree {0} is outside the supported range 2..=16")]
    DegreeOutOfRange(u32),

    #[error("reduction polynomial {poly:#x} does not have degree {m}")]
    PolynomialDegree { poly: u32, m: u32 },

    #[error("reduction polynomial {0:#x} is reducible over GF(2)")]
    ReduciblePolynomial(u32),

    #[error("x is not a primitive element modulo {0:#x}")]
    NotPrimitive(u32),

    #[error("division by zero in the field")]
    DivisionByZero,

    #[error("zero raised to the non-positive power {0}")]
    ZeroPower(i64),

    #[error("matrix is singular (rank {rank} of {size})")]
    SingularMatrix { rank: usize, size: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid code parameters: {0}")]
    InvalidParams(String),

    #[error("{what} index {index} is outside 1..={max}")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        max: usize,
    },

    #[error("stripe is at stage {found}, expected {expected}")]
    WrongStage {
        expected: &'static str,
        found: &'static str,
    },

    #[error("need at least {need} nodes to decode, have {have}")]
    InsufficientShares { have: usize, need: usize },

    #[error("erasure pattern must erase exactly {expected} nodes, got {found}")]
    ErasureCount { expected: usize, found: usize },

    #[error("surviving-symbol system for nodes {nodes:?} is singular")]
    NotDecodable { nodes: Vec<usize> },

    #[error("column {column} solve is singular; the field is too small for this erasure pattern")]
    FieldTooSmall { column: usize },

    #[error("node {0} is not readable")]
    UnreadableNode(usize),

    #[error("{patterns} erasure patterns exceed the enumeration cap {cap}")]
    EnumerationCap { patterns: u128, cap: u128 },

    #[error("closed form requires L | k (k = {k}, L = {l}); use the exact profile")]
    GroupsDoNotDivide { k: usize, l: usize },

    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
