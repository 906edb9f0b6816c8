use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid juggling pattern: {0}")]
    InvalidPattern(String),

    #[error("invalid length tuple: {0}")]
    InvalidTuple(String),

    #[error("invalid affine permutation: {0}")]
    InvalidPermutation(String),

    #[error("affine permutation is not bounded: {0}")]
    Unbounded(String),

    #[error("move f_{{{i},{j},{r}}} is not feasible: {condition}")]
    InfeasibleMove { i: usize, j: usize, r: usize, condition: String },

    #[error("n*omega = {size} exceeds the enumeration guard {max}")]
    TooLarge { size: usize, max: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("character has no unit coefficient to eliminate: {0}")]
    DegenerateCharacter(String),

    #[error("rank deficient: {0}")]
    RankDeficient(String),

    #[error("automorphism parameter a^({vertex})_{{1,1}} is zero")]
    ZeroDiagonal { vertex: usize },

    #[error("class is not defined on vertex {0}")]
    PartialClass(String),

    #[error("flag point invariant violated: {0}")]
    FlagInvariant(String),

    #[error("parse error: {0}")]
    Parse(String),
}
