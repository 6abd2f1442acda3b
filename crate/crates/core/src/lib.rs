//! Hamilton cycles in graphs whose vertices are subsets of `[n]`.
//!
//! Vertices are [`CyclicWord`]s: bitstrings whose leftmost character stands
//! for element 1. The crate covers hypercubes, the middle levels graph,
//! (bipartite) Kneser graphs and generalized Johnson/Kneser graphs.

pub mod bits;
pub mod constructions;
pub mod error;
pub mod factors;
pub mod gluing;
pub mod graphs;
pub mod trees;

pub use bits::{CyclicWord, ParenMatching};
pub use error::{Error, Result};
pub use factors::CycleFactor;
pub use graphs::{FamilySpec, HamiltonResult, Kind, Mode};
pub use trees::{OrderedRootedTree, PlaneTree};
