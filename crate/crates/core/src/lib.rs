//! Finite, dimension-truncated stratified simplicial sets.
//!
//! The crate builds complexes from explicit tables or from standard
//! constructions (standard simplices, complicial horns, nerves), checks the
//! lifting conditions of a weak complicial set up to a dimension bound by
//! exhaustive search, and computes homotopy monoids `τ_n(X, x)` and the set
//! `τ_0(X)` of invertibly connected components.

pub mod adapters;
pub mod cli;
pub mod document;
pub mod error;
pub mod homotopy;
pub mod lifting;
pub mod sset;
pub mod standard;
pub mod strat;

pub use error::{Error, Result};
pub use sset::{SimplexId, SimplicialMap, TruncatedSSet};
pub use strat::{gproduct, regular_subset, Product, StratifiedMap, StratifiedSSet};
