//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown group atom `{0}`")]
    UnknownAtom(String),

    #[error("{what} requires at most {limit} elements, needed {need}")]
    SizeLimit {
        what: &'static str,
        limit: usize,
        need: String,
    },

    #[error("syntax error at byte {offset}: {msg}")]
    Parse { offset: usize, msg: String },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("the base group must be nontrivial")]
    TrivialGroup,

    #[error("element index {index} out of range for group of order {order}")]
    BadIndex { index: usize, order: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: u64, got: u64 },

    #[error("modulus mismatch: expected {expected}, got {got}")]
    ModulusMismatch { expected: u64, got: u64 },

    #[error("maps have different parent groups")]
    ParentMismatch,

    #[error("the given set is not a subgroup (not closed at element {witness})")]
    NotASubgroup { witness: usize },

    #[error("subgroup is not normal (conjugate of {elem} by {by} escapes)")]
    NotNormal { elem: usize, by: usize },

    #[error("map is not an automorphism: f({x}*{y}) != f({x})*f({y})")]
    NotAutomorphism { x: usize, y: usize },

    #[error("not multiplicative on ({x:?}, {y:?})")]
    NotMultiplicative { x: String, y: String },

    #[error("linear map is not equivariant: basis coordinate {coord}, generator {gen}")]
    NotEquivariant { coord: u64, gen: usize },

    #[error("linear map is not invertible (rank {rank} < dim {dim})")]
    NotInvertible { rank: u64, dim: u64 },

    #[error("invalid block index {i}, expected 1..={r}")]
    BadBlock { i: u32, r: u64 },

    #[error("element has order {found}, expected {expected}")]
    WrongOrder { found: u64, expected: u64 },

    #[error("element lies in the base of the extension (trivial quotient part)")]
    IdentityQuotientPart,

    #[error("D0 is not ordinary: conjugation by element {gen} is missing")]
    NotOrdinary { gen: usize },

    #[error("D0 is not normal in D1")]
    D0NotNormalInD1,

    #[error("D0 is not contained in D1")]
    D0NotInD1,

    #[error("precondition not met: {0}")]
    Precondition(String),

    #[error("operation refused: {0}")]
    Refused(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("cache error: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
