use serde::Serialize;

use crate::graph::VertexOrdering;

/// Work counters reported alongside a solution.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Search-tree nodes visited (brute force and IQP branch-and-bound).
    pub nodes: u64,
    /// Separator permutations tried.
    pub permutations: u64,
    /// Class-to-block configurations evaluated.
    pub configurations: u64,
}

impl std::ops::AddAssign for SearchStats {
    fn add_assign(&mut self, rhs: Self) {
        self.nodes += rhs.nodes;
        self.permutations += rhs.permutations;
        self.configurations += rhs.configurations;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub ordering: VertexOrdering,
    pub cost: u64,
    pub stats: SearchStats,
}
