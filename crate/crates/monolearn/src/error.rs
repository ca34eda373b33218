//! Crate-wide error type.

use thiserror::Error;

/// Errors reported by library operations.
///
/// Exceeding a documented practical cap is always a reported error, never
/// undefined behavior or silent truncation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count {n} outside supported range 1..={max}")]
    VarCountOutOfRange { n: usize, max: usize },
    #[error("point mask {bits:#x} has bits outside the {n}-variable range")]
    MaskOutOfRange { bits: u64, n: usize },
    #[error("truth table is not monotone")]
    NotMonotone,
    #[error("sets {a:#x} and {b:#x} are comparable; not an antichain")]
    NotAntichain { a: u64, b: u64 },
    #[error("mapping of length {len} is not a permutation of 1..={n}")]
    NotPermutation { len: usize, n: usize },
    #[error("permutation acts on {perm_n} variables but the object has {object_n}")]
    PermutationMismatch { perm_n: usize, object_n: usize },
    #[error("answer for mask {bits:#x} contradicts earlier answers")]
    ContradictoryAnswer { bits: u64 },
    #[error("no monotone function is consistent with the given knowledge")]
    NoConsistentFunction,
    #[error("point mask {bits:#x} is not known to be one; cannot minimize from it")]
    StartNotKnownOne { bits: u64 },
    #[error("oracle session has already been used")]
    SessionNotFresh,
    #[error("malformed truth table string {text:?}: {reason}")]
    BadTableString { text: String, reason: String },
    #[error("malformed decision tree: {0}")]
    BadTree(String),
    #[error("decision tree fails to determine function {table_hex} (n={n})")]
    TreeIncomplete { table_hex: String, n: usize },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
