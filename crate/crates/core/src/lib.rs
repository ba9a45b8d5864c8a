//! Exact combinatorics of Følner-type set-expansion conditions on finitely
//! generated groups, multi-norms and summing constants on finite-dimensional
//! sequence spaces, and a constructive row-injective partition algorithm.
//!
//! Everything is desk-scale and deterministic: set cardinalities are exact,
//! ratios are rational, and every heuristic result is flagged as such.

pub mod error;
pub mod folner;
pub mod groups;
pub mod multinorm;
pub mod rearrange;
pub mod runner;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
