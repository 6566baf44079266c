//! Exact fixed-parameter algorithms for the edge dominating set problem.
//!
//! Two branch-and-reduce solvers enumerate bounded vertex covers of the input
//! graph through a partition state (cover / excluded / deferred cliques /
//! undecided) and solve each leaf with one maximum-matching computation.
//! A linear-time kernelization, reductions from minimum maximal matching and
//! matrix domination, and exhaustive oracles round out the toolkit.

pub mod eds;
pub mod eds1;
pub mod error;
pub mod graph;
pub mod instances;
pub mod kernel;
pub mod matching;
pub mod oracle;
pub mod reductions;
pub mod registry;
pub mod state;
pub mod stats;

pub use error::EdsError;
pub use graph::{
    is_eds, parse_graph, parse_matrix, Edge, Graph, GraphFormat, MatrixInstance, Solution,
};
pub use registry::{Report, SolveOptions, Solver, SolverRegistry};
