//! Exact solvers for Minimum Sum Vertex Cover.
//!
//! Given a graph, find a vertex ordering minimizing the sum over edges of the
//! earlier endpoint's 1-based position. Two fixed-parameter solvers are
//! provided, one parameterized by the vertex cover number ([`vc`]) and one by
//! the clique modulator number ([`cm`], backed by the bounded integer
//! quadratic program solver in [`iqp`]). [`oracle`] holds the exhaustive
//! reference solver and the max-degree greedy baseline.

// Index loops in these two mirror the subscripts of the program's variables.
#[allow(clippy::needless_range_loop)]
pub mod cm;
pub mod error;
pub mod generate;
pub mod graph;
pub mod io;
#[allow(clippy::needless_range_loop)]
pub mod iqp;
pub mod oracle;
mod perm;
pub mod report;
pub mod solution;
pub mod vc;

pub use error::{Error, Result};
pub use graph::{
    clique_cost, cost_from_right_degrees, evaluate_cost, partition_by_separator, right_degree,
    right_degree_sequence, swap_equal_rd_nonadjacent, ClassPartition, Graph, Position,
    VertexOrdering,
};
pub use solution::{SearchStats, Solution};
