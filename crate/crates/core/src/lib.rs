//! Quasigraphs in 3-hypergraphs.
//!
//! The crate finds quasitrees with tight complement in 4-edge-connected
//! 3-hypergraphs by an improvement search over quasigraphs, turns them into
//! connected eulerian subgraphs and X-joins, and uses those to build Hamilton
//! cycles and paths in line graphs. Brute-force oracles for the main
//! existence claims live in [`oracles`].

pub mod contract;
pub mod error;
pub mod hypergraph;
pub mod io;
pub mod linegraph;
pub mod narrow_wide;
pub mod oracles;
pub mod order;
pub mod parity;
pub mod partition;
pub mod quasigraph;
pub mod skeletal;

pub use error::{Error, Result};
pub use hypergraph::{EdgeId, HyperedgeId, Hypergraph3, Multigraph, VertexId, VertexSet};
pub use partition::{Partition, PartitionSequence};
pub use quasigraph::{QuasiClass, Quasigraph, Rep};
