use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("graph would have {vertices} vertices, above the cap of {cap}")]
    CapExceeded { vertices: u128, cap: usize },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("malformed subset: {0}")]
    MalformedSubset(String),

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("not an automorphism of the graph")]
    NotAnAutomorphism,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
