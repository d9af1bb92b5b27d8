//! Domain types for the four problem families, generators, and instance files.

pub mod generate;
pub mod io;
pub mod reduction;
pub mod types;

pub use generate::{
    gen_figure2, gen_groups_counterexample, gen_random_bipartite, gen_random_graph, gen_random_grouped,
    gen_random_hem, gen_random_hvm, WeightLaw,
};
pub use io::{instance_from_str, instance_to_string, load_instance, save_instance};
pub use reduction::reduce_hem_to_hvm;
pub use types::{
    BipartiteEdge, EdgeSet, GraphEdge, GroupedInstance, GroupingMode, HemEdge, HemHypergraph, HvmHypergraph,
    HyperEdge, Instance, UndirectedGraph, WeightedBipartiteGraph,
};
