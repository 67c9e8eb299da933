//! Parity automata on regular infinite binary trees.
//!
//! Finite presentations of infinite trees, nondeterministic parity tree
//! automata, and decision procedures (membership, emptiness, ambiguity)
//! built on parity and two-coordinate conjunction games.

pub mod acceptance;
pub mod analysis;
pub mod automata;
pub mod corpus;
pub mod error;
pub mod fixtures;
pub mod games;
pub mod graph;
pub mod oracles;
pub mod reductions;
mod text;
pub mod tree;

pub use error::{Error, Result};
