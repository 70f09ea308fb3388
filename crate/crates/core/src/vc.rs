//! Exact solver parameterized by the vertex cover number.
//!
//! With a minimum vertex cover `S` fixed, the remaining vertices form an
//! independent set and split into classes of equal neighborhood in `S`. Some
//! optimal ordering keeps every class contiguous inside a single block (the
//! run of non-cover vertices between two consecutive cover vertices), and
//! inside a block the classes appear by non-increasing right degree. The
//! solver enumerates every relative order of `S` and every class-to-block
//! assignment and keeps the cheapest realized ordering.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{partition_by_separator, ClassPartition, Graph, VertexOrdering};
use crate::perm::{factorial, nth_permutation};
use crate::solution::{SearchStats, Solution};

pub const DEFAULT_CONFIGURATION_BUDGET: u128 = 100_000_000;

/// Smallest vertex cover of size at most `k_max`, found by iterative
/// deepening over the classic two-way branching on an uncovered edge.
pub fn min_vertex_cover(g: &Graph, k_max: usize) -> Result<Vec<usize>> {
    let mut chosen = vec![false; g.num_vertices()];
    for k in 0..=k_max.min(g.num_vertices()) {
        if cover_within(g, k, &mut chosen) {
            return Ok(g.vertices().filter(|&v| chosen[v]).collect());
        }
    }
    Err(Error::ParameterExceeded {
        parameter: "minimum vertex cover",
        k_max,
    })
}

fn cover_within(g: &Graph, budget: usize, chosen: &mut [bool]) -> bool {
    let Some(&(u, v)) = g.edges().iter().find(|&&(u, v)| !chosen[u] && !chosen[v]) else {
        return true;
    };
    if budget == 0 {
        return false;
    }
    for w in [u, v] {
        chosen[w] = true;
        if cover_within(g, budget - 1, chosen) {
            return true;
        }
        chosen[w] = false;
    }
    false
}

/// A graph together with a vertex cover and the classes of the independent rest.
#[derive(Debug, Clone)]
pub struct VcInstance<'g> {
    graph: &'g Graph,
    cover: Vec<usize>,
    partition: ClassPartition,
}

impl<'g> VcInstance<'g> {
    pub fn new(graph: &'g Graph, cover: &[usize]) -> Result<Self> {
        if !graph.is_vertex_cover(cover) {
            return Err(Error::InvalidInput(format!(
                "{cover:?} is not a vertex cover"
            )));
        }
        let partition = partition_by_separator(graph, cover)?;
        Ok(VcInstance {
            graph,
            cover: partition.separator().to_vec(),
            partition,
        })
    }

    pub fn with_minimum_cover(graph: &'g Graph, k_max: usize) -> Result<Self> {
        let cover = min_vertex_cover(graph, k_max)?;
        VcInstance::new(graph, &cover)
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    /// Cover vertices, ascending.
    pub fn cover(&self) -> &[usize] {
        &self.cover
    }

    pub fn k(&self) -> usize {
        self.cover.len()
    }

    pub fn partition(&self) -> &ClassPartition {
        &self.partition
    }

    /// Number of configurations: `k! * (k+1)^q`, saturating.
    pub fn configuration_count(&self) -> u128 {
        let k = self.k();
        let blocks = (k + 1) as u128;
        let per_sigma =
            (0..self.partition.num_classes()).fold(1u128, |acc, _| acc.saturating_mul(blocks));
        factorial(k).saturating_mul(per_sigma)
    }

    /// Right degree of class `class` placed in block `block` when the cover
    /// vertices are ordered by `sigma`: its neighbors among `sigma[block-1..]`.
    fn class_right_degrees(&self, sigma: &[usize]) -> Vec<Vec<usize>> {
        let k = self.k();
        let mut rank = vec![0; self.graph.num_vertices()];
        for (i, &v) in sigma.iter().enumerate() {
            rank[v] = i + 1;
        }
        (0..self.partition.num_classes())
            .map(|c| {
                let nbrs = self.partition.signature_vertices(c);
                (1..=k + 1)
                    .map(|j| nbrs.iter().filter(|&&v| rank[v] >= j).count())
                    .collect()
            })
            .collect()
    }
}

/// A relative order of the cover plus a block (1..=k+1) for every class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    pub sigma: Vec<usize>,
    pub assignment: Vec<usize>,
}

impl Configuration {
    fn validate(&self, inst: &VcInstance<'_>) -> Result<()> {
        let mut sorted = self.sigma.clone();
        sorted.sort_unstable();
        if sorted != inst.cover {
            return Err(Error::InvalidInput(format!(
                "sigma {:?} is not a permutation of the cover {:?}",
                self.sigma, inst.cover
            )));
        }
        if self.assignment.len() != inst.partition.num_classes() {
            return Err(Error::InvalidInput(format!(
                "assignment has {} entries for {} classes",
                self.assignment.len(),
                inst.partition.num_classes()
            )));
        }
        if let Some(&b) = self
            .assignment
            .iter()
            .find(|&&b| b == 0 || b > inst.k() + 1)
        {
            return Err(Error::InvalidInput(format!(
                "block {b} outside 1..={}",
                inst.k() + 1
            )));
        }
        Ok(())
    }
}

fn realize_into(
    inst: &VcInstance<'_>,
    sigma: &[usize],
    assignment: &[usize],
    rd: &[Vec<usize>],
    out: &mut Vec<usize>,
) {
    out.clear();
    let k = sigma.len();
    let mut in_block: Vec<usize> = Vec::with_capacity(assignment.len());
    for block in 1..=k + 1 {
        in_block.clear();
        in_block.extend((0..assignment.len()).filter(|&c| assignment[c] == block));
        // non-increasing right degree, ties by class index
        in_block.sort_by_key(|&c| (std::cmp::Reverse(rd[c][block - 1]), c));
        for &c in &in_block {
            out.extend_from_slice(&inst.partition.classes()[c]);
        }
        if block <= k {
            out.push(sigma[block - 1]);
        }
    }
}

/// Lays out block 1, then `sigma[0]`, then block 2, and so on. Classes in a
/// block appear by non-increasing right degree; a class's members are
/// consecutive and ascending.
pub fn realize_configuration(inst: &VcInstance<'_>, cfg: &Configuration) -> Result<VertexOrdering> {
    cfg.validate(inst)?;
    let rd = inst.class_right_degrees(&cfg.sigma);
    let mut seq = Vec::with_capacity(inst.graph.num_vertices());
    realize_into(inst, &cfg.sigma, &cfg.assignment, &rd, &mut seq);
    VertexOrdering::from_sequence(seq)
}

#[derive(Debug, Clone, Copy)]
pub struct VcOptions {
    pub k_max: usize,
    /// Refuse when `k! * (k+1)^q` exceeds this.
    pub budget: u128,
}

impl VcOptions {
    pub fn new(k_max: usize) -> Self {
        VcOptions {
            k_max,
            budget: DEFAULT_CONFIGURATION_BUDGET,
        }
    }
}

pub fn solve_vc_fpt(g: &Graph, k_max: usize) -> Result<Solution> {
    solve_vc_fpt_with(g, &VcOptions::new(k_max))
}

pub fn solve_vc_fpt_with(g: &Graph, opts: &VcOptions) -> Result<Solution> {
    let inst = VcInstance::with_minimum_cover(g, opts.k_max)?;
    solve_instance(&inst, opts.budget)
}

/// Exhaustive configuration search over a given cover. Ties go to the
/// lexicographically smallest position vector.
pub fn solve_instance(inst: &VcInstance<'_>, budget: u128) -> Result<Solution> {
    let required = inst.configuration_count();
    if required > budget {
        return Err(Error::Budget {
            unit: "configurations",
            required,
            budget,
        });
    }
    let g = inst.graph;
    let n = g.num_vertices();
    let k = inst.k();
    let q = inst.partition.num_classes();
    let sigmas = factorial(k);

    let best = (0..sigmas as u64)
        .into_par_iter()
        .map(|idx| {
            let sigma = nth_permutation(&inst.cover, idx as u128);
            let rd = inst.class_right_degrees(&sigma);
            let mut assignment = vec![1usize; q];
            let mut seq = Vec::with_capacity(n);
            let mut pos = vec![0usize; n];
            let mut best: Option<(u64, Vec<usize>)> = None;
            loop {
                realize_into(inst, &sigma, &assignment, &rd, &mut seq);
                for (r, &v) in seq.iter().enumerate() {
                    pos[v] = r + 1;
                }
                let cost: u64 = g
                    .edges()
                    .iter()
                    .map(|&(u, v)| pos[u].min(pos[v]) as u64)
                    .sum();
                let improves = match &best {
                    None => true,
                    Some((bc, bp)) => (cost, &pos) < (*bc, bp),
                };
                if improves {
                    best = Some((cost, pos.clone()));
                }
                // odometer over blocks 1..=k+1
                let mut i = 0;
                while i < q && assignment[i] == k + 1 {
                    assignment[i] = 1;
                    i += 1;
                }
                if i == q {
                    break;
                }
                assignment[i] += 1;
            }
            best.expect("every sigma realizes at least one configuration")
        })
        .min()
        .expect("at least one permutation of the cover");

    Ok(Solution {
        ordering: VertexOrdering::from_positions(&best.1)?,
        cost: best.0,
        stats: SearchStats {
            nodes: 0,
            permutations: sigmas as u64,
            configurations: required as u64,
        },
    })
}
