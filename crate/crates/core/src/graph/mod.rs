//! Loopless directed graphs and their purely combinatorial structure.

mod canon;
mod digraph;
mod io;
mod markov;
mod moves;
mod nodeset;
mod structure;

pub use canon::{canonical_form, isomorphic, CANONICAL_MAX_NODES};
pub use digraph::{Cycle, DirectedGraph, Family, MoveRecord};
pub use io::{parse_graph, GraphJson};
pub use markov::{enumerate_dag_class, essential_graph, markov_equivalent_dags};
pub use moves::{apply_covered_flip, covered_edges, directed_cycles, is_covered, reverse_cycle};
pub use nodeset::{NodeSet, MAX_NODES};
pub use structure::{
    is_acyclic, skeleton, topological_order, v_structures, PartiallyDirectedGraph,
    SkeletonMultiset,
};
pub(crate) use digraph::check_n;
