//! Online secretary-style matching algorithms, their offline oracles, and a
//! seeded Monte Carlo harness for checking competitive-ratio bounds.

pub mod error;
pub mod harness;
pub mod instances;
pub mod online;
pub mod oracles;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Weight;

pub type BipartiteGraph = instances::WeightedBipartiteGraph<f64>;
pub type Hypergraph = instances::HvmHypergraph<f64>;
pub type EdgeHypergraph = instances::HemHypergraph<f64>;
pub type Grouped = instances::GroupedInstance<f64>;
pub type Graph = instances::UndirectedGraph<f64>;
pub type Edges = instances::EdgeSet<f64>;
pub type AnyInstance = instances::Instance<f64>;
