//! Offline greedy algorithms and exact optima used as benchmarks.

pub mod assignment;
pub mod forest;
pub mod greedy;
pub mod hypergraph;
pub mod secretary;

pub use assignment::optimal_bipartite;
pub use forest::{
    check_orientation_bound, heaviest_out_edges, is_acyclic, max_weight_forest, orientation_tail, DisjointSets,
    OrientationBound,
};
pub use greedy::{greedy_hypergraph, greedy_matching};
pub use hypergraph::{optimal_hypergraph, EXACT_HYPERGRAPH_BUDGET};
pub use secretary::{secretary_success_count, secretary_success_prob_exact, SECRETARY_ENUMERATION_BUDGET};
