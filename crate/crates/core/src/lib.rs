//! Metric dimension and edge metric dimension of connected graphs.
//!
//! `graph` holds the graph type, distances and the generator predicates,
//! `families` builds named graph families, `solve` computes dimensions and
//! `reduction` maps 3-SAT instances to edge metric dimension instances.

pub mod bitset;
pub mod families;
pub mod graph;
pub mod reduction;
pub mod solve;

pub use families::{make_family, FamilyError, FamilySpec, LabeledGraph};
pub use graph::{Graph, GraphError, Kind};
pub use solve::{
    closed_formula, exact_dimension, greedy_edim, tree_edim, Method, SolveError, SolveResult,
};
