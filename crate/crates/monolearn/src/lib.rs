//! Exact reconstruction of monotone Boolean functions from membership
//! queries: full enumeration for small variable counts, the classical
//! Find-Border and Hansel learners, competitive-ratio evaluation with exact
//! rational arithmetic, analytic lower bounds, and exhaustive minimax
//! search for optimal question strategies.
//!
//! The `monolearn` binary exposes the same functionality as a command-line
//! tool; see the crate README for usage.

mod bits;
mod error;

pub mod competitive;
pub mod enumeration;
pub mod function;
pub mod learners;
pub mod optsearch;
pub mod oracle;
pub mod points;
pub mod set;

pub use error::{Error, Result};
pub use function::{Antichain, MonotoneFn};
pub use points::PointSet;
pub use set::{ElementSet, Permutation};
