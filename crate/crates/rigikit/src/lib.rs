//! Exact computation in generic d-dimensional rigidity matroids.
//!
//! The core engine is a memoized rank oracle: edge subsets of a complete graph
//! are ranked via the rigidity matrix at a pseudo-generic configuration over
//! the prime field `F_p` with `p = 2^61 - 1`, with an exact rational backend as
//! an independent cross-check and a combinatorial graphic-matroid backend for
//! the one-dimensional case. On top of the oracle sit k-fold circuit detection,
//! principal partitions, balancedness, composition laws for 2-sums and
//! parallel connections, coning, matroid-matching bounds, and an executable
//! registry of named desk-scale facts.
//!
//! Start with the runnable programs under `examples/`; each one walks through
//! a major capability. The `rigikit` binary fronts the same operations.

pub mod cli;
pub mod error;
pub mod ffield;
pub mod graphs;
pub mod matching;
pub mod matroid;
pub mod paperlab;
pub mod rigidity;

pub use error::{Error, Result};
pub use graphs::{Edge, Graph, Vertex};
pub use rigidity::{Backend, OracleParams, RankOracle, DEFAULT_SEED};
