//! Exact solver parameterized by the clique modulator number.
//!
//! `M` is a set whose removal leaves a clique `Q`. Clique vertices are grouped
//! into classes `A_1..A_l` of equal neighborhood in `M`. For every relative
//! order `sigma_M` of `M` an integer quadratic program chooses how many
//! vertices of each class go into each of the `k + 1` blocks; inside a block
//! the classes are laid out by non-increasing right modulator degree.
//!
//! Variables of one program (all integers):
//!
//! * `x_ij`: vertices of class `i` in block `j`
//! * `n_p`: clique vertices after the `p`-th modulator vertex
//! * `y_p`: position of the `p`-th modulator vertex
//! * `d_p`: right degree of the `p`-th modulator vertex
//! * `y_ij`: position just before the first vertex of class `i` in block `j`
//!
//! and the cost above the clique's own cost `mu(Q)` is
//!
//! ```text
//! sum_p d_p y_p + sum_p C(n_p, 2) + sum_ij r_ij (x_ij y_ij + C(x_ij + 1, 2))
//! ```
//!
//! The program stores twice that value so every coefficient is an integer.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{
    clique_cost, evaluate_cost, partition_by_separator, ClassPartition, Graph, VertexOrdering,
};
use crate::iqp::{
    solve_iqp_with, IqpBuilder, IqpInstance, IqpOptions, IqpOutcome, IqpSolution, Relation,
};
use crate::perm::{factorial, nth_permutation};
use crate::solution::{SearchStats, Solution};
use crate::vc::min_vertex_cover;

/// The encoded objective is this multiple of the true cost increment.
pub const OBJECTIVE_SCALE: i64 = 2;

/// Minimum clique modulator of size at most `k_max`: a minimum vertex cover
/// of the complement.
pub fn find_clique_modulator(g: &Graph, k_max: usize) -> Result<Vec<usize>> {
    min_vertex_cover(&g.complement(), k_max).map_err(|e| match e {
        Error::ParameterExceeded { k_max, .. } => Error::ParameterExceeded {
            parameter: "minimum clique modulator",
            k_max,
        },
        other => other,
    })
}

#[derive(Debug, Clone)]
pub struct CmInstance<'g> {
    graph: &'g Graph,
    modulator: Vec<usize>,
    partition: ClassPartition,
    base_cost: u64,
}

impl<'g> CmInstance<'g> {
    pub fn new(graph: &'g Graph, modulator: &[usize]) -> Result<Self> {
        if !graph.is_clique_modulator(modulator) {
            return Err(Error::InvalidInput(format!(
                "{modulator:?} is not a clique modulator"
            )));
        }
        let partition = partition_by_separator(graph, modulator)?;
        let clique = graph.num_vertices() - partition.separator().len();
        Ok(CmInstance {
            graph,
            modulator: partition.separator().to_vec(),
            partition,
            base_cost: clique_cost(clique),
        })
    }

    pub fn with_minimum_modulator(graph: &'g Graph, k_max: usize) -> Result<Self> {
        let m = find_clique_modulator(graph, k_max)?;
        CmInstance::new(graph, &m)
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    /// Modulator vertices, ascending.
    pub fn modulator(&self) -> &[usize] {
        &self.modulator
    }

    pub fn k(&self) -> usize {
        self.modulator.len()
    }

    pub fn partition(&self) -> &ClassPartition {
        &self.partition
    }

    /// `mu(Q)`: the cost of the clique edges under any ordering of the clique alone.
    pub fn base_cost(&self) -> u64 {
        self.base_cost
    }

    fn check_sigma(&self, sigma_m: &[usize]) -> Result<()> {
        let mut sorted = sigma_m.to_vec();
        sorted.sort_unstable();
        if sorted != self.modulator {
            return Err(Error::InvalidInput(format!(
                "{sigma_m:?} is not a permutation of the modulator {:?}",
                self.modulator
            )));
        }
        Ok(())
    }

    /// `ranks[v]` = 1-based rank of modulator vertex `v` in `sigma_m`, 0 elsewhere.
    fn ranks(&self, sigma_m: &[usize]) -> Vec<usize> {
        let mut rank = vec![0; self.graph.num_vertices()];
        for (i, &v) in sigma_m.iter().enumerate() {
            rank[v] = i + 1;
        }
        rank
    }

    /// Table `r[class][block - 1]` of right modulator degrees.
    fn right_modulator_degrees(&self, sigma_m: &[usize]) -> Vec<Vec<usize>> {
        let rank = self.ranks(sigma_m);
        (0..self.partition.num_classes())
            .map(|c| {
                let nbrs = self.partition.signature_vertices(c);
                (1..=self.k() + 1)
                    .map(|j| nbrs.iter().filter(|&&v| rank[v] >= j).count())
                    .collect()
            })
            .collect()
    }

    /// Reorders the clique vertices inside every block so classes appear by
    /// non-increasing right modulator degree (ties by class index), keeping
    /// the modulator vertices and the block contents in place.
    pub fn nice_permutation(&self, ord: &VertexOrdering) -> Result<VertexOrdering> {
        if ord.len() != self.graph.num_vertices() {
            return Err(Error::InvalidInput(format!(
                "ordering covers {} vertices but the graph has {}",
                ord.len(),
                self.graph.num_vertices()
            )));
        }
        let sigma_m: Vec<usize> = ord
            .sequence()
            .iter()
            .copied()
            .filter(|&v| self.partition.class_of(v).is_none())
            .collect();
        let r = self.right_modulator_degrees(&sigma_m);
        let mut out = Vec::with_capacity(ord.len());
        let mut block: Vec<usize> = Vec::new();
        let mut j = 1;
        let flush = |block: &mut Vec<usize>, j: usize, out: &mut Vec<usize>| {
            block.sort_by_key(|&v| {
                let c = self.partition.class_of(v).expect("clique vertex");
                (std::cmp::Reverse(r[c][j - 1]), c)
            });
            out.append(block);
        };
        for &v in ord.sequence() {
            if self.partition.class_of(v).is_some() {
                block.push(v);
            } else {
                flush(&mut block, j, &mut out);
                out.push(v);
                j += 1;
            }
        }
        flush(&mut block, j, &mut out);
        VertexOrdering::from_sequence(out)
    }
}

/// Right modulator degree of class `class` (0-based) in block `block`
/// (1-based, `1..=k+1`): its modulator neighbors ranked `>= block` in `sigma_m`.
pub fn right_modulator_degree(
    inst: &CmInstance<'_>,
    sigma_m: &[usize],
    class: usize,
    block: usize,
) -> Result<usize> {
    inst.check_sigma(sigma_m)?;
    if class >= inst.partition.num_classes() {
        return Err(Error::InvalidInput(format!("no class {class}")));
    }
    if block == 0 || block > inst.k() + 1 {
        return Err(Error::InvalidInput(format!(
            "block {block} outside 1..={}",
            inst.k() + 1
        )));
    }
    let rank = inst.ranks(sigma_m);
    Ok(inst
        .partition
        .signature_vertices(class)
        .iter()
        .filter(|&&v| rank[v] >= block)
        .count())
}

/// Indices of the program's variables. Blocks and modulator ranks are
/// stored 0-based here: `x[i][j - 1]`, `n_p[p - 1]`, and so on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarMap {
    pub x: Vec<Vec<usize>>,
    pub n_p: Vec<usize>,
    pub y_p: Vec<usize>,
    pub d_p: Vec<usize>,
    pub y_ij: Vec<Vec<usize>>,
}

impl VarMap {
    pub fn len(&self) -> usize {
        self.x.iter().map(Vec::len).sum::<usize>()
            + self.n_p.len()
            + self.y_p.len()
            + self.d_p.len()
            + self.y_ij.iter().map(Vec::len).sum::<usize>()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// The integer program for one fixed order of the modulator.
#[derive(Debug, Clone)]
pub struct CmEncoding {
    sigma_m: Vec<usize>,
    rm: Vec<usize>,
    r: Vec<Vec<usize>>,
    adjacent_classes: Vec<Vec<usize>>,
    block_order: Vec<Vec<usize>>,
    predecessors: Vec<Vec<Vec<usize>>>,
    class_sizes: Vec<usize>,
    vars: VarMap,
    iqp: IqpInstance,
    n: usize,
}

impl CmEncoding {
    pub fn sigma_m(&self) -> &[usize] {
        &self.sigma_m
    }

    /// `rm_p`: modulator neighbors of the `p`-th vertex ranked after it (index `p - 1`).
    pub fn rm(&self) -> &[usize] {
        &self.rm
    }

    /// `r_ij` indexed `[class][block - 1]`.
    pub fn r(&self) -> &[Vec<usize>] {
        &self.r
    }

    /// `I_p` (index `p - 1`): classes adjacent to the `p`-th modulator vertex.
    pub fn adjacent_classes(&self) -> &[Vec<usize>] {
        &self.adjacent_classes
    }

    /// Class layout order inside block `j` (index `j - 1`).
    pub fn block_order(&self) -> &[Vec<usize>] {
        &self.block_order
    }

    /// `J_ij` indexed `[class][block - 1]`: classes laid out before class `i` in block `j`.
    pub fn predecessors(&self) -> &[Vec<Vec<usize>>] {
        &self.predecessors
    }

    pub fn vars(&self) -> &VarMap {
        &self.vars
    }

    pub fn iqp(&self) -> &IqpInstance {
        &self.iqp
    }

    /// Cost increment over `mu(Q)` represented by `sol`.
    pub fn increment(&self, sol: &IqpSolution) -> Result<u64> {
        if sol.objective < 0 || sol.objective % OBJECTIVE_SCALE != 0 {
            return Err(Error::Internal(format!(
                "encoded objective {} is not a non-negative multiple of {OBJECTIVE_SCALE}",
                sol.objective
            )));
        }
        Ok((sol.objective / OBJECTIVE_SCALE) as u64)
    }

    /// Completes a full feasible assignment from per-class block counts
    /// `counts[i][j - 1]`. Each row must sum to the class size.
    pub fn assignment_from_counts(&self, counts: &[Vec<i64>]) -> Result<Vec<i64>> {
        let k = self.sigma_m.len();
        let l = self.class_sizes.len();
        if counts.len() != l || counts.iter().any(|row| row.len() != k + 1) {
            return Err(Error::InvalidInput(format!(
                "expected {l} rows of {} block counts",
                k + 1
            )));
        }
        for (i, row) in counts.iter().enumerate() {
            if row.iter().any(|&c| c < 0) || row.iter().sum::<i64>() != self.class_sizes[i] as i64 {
                return Err(Error::InvalidInput(format!(
                    "counts {row:?} do not split class {i} of size {}",
                    self.class_sizes[i]
                )));
            }
        }
        let mut x = vec![0i64; self.vars.len()];
        for i in 0..l {
            for j in 0..=k {
                x[self.vars.x[i][j]] = counts[i][j];
            }
        }
        let (n, k_i) = (self.n as i64, k as i64);
        let mut y_prev = vec![0i64; k + 1];
        for p in 1..=k {
            let after: i64 = (p..=k)
                .map(|j| (0..l).map(|i| counts[i][j]).sum::<i64>())
                .sum();
            let adjacent: i64 = (p..=k)
                .map(|j| {
                    self.adjacent_classes[p - 1]
                        .iter()
                        .map(|&i| counts[i][j])
                        .sum::<i64>()
                })
                .sum();
            let y = n - (after + k_i - p as i64);
            x[self.vars.n_p[p - 1]] = after;
            x[self.vars.y_p[p - 1]] = y;
            x[self.vars.d_p[p - 1]] = self.rm[p - 1] as i64 + adjacent;
            y_prev[p] = y;
        }
        for i in 0..l {
            for j in 0..=k {
                let before: i64 = self.predecessors[i][j].iter().map(|&q| counts[q][j]).sum();
                x[self.vars.y_ij[i][j]] = y_prev[j] + before;
            }
        }
        Ok(x)
    }
}

/// Builds the program for the modulator order `sigma_m`.
pub fn build_encoding(inst: &CmInstance<'_>, sigma_m: &[usize]) -> Result<CmEncoding> {
    inst.check_sigma(sigma_m)?;
    let g = inst.graph;
    let n = g.num_vertices();
    let k = inst.k();
    let l = inst.partition.num_classes();
    let class_sizes: Vec<usize> = inst.partition.classes().iter().map(Vec::len).collect();
    let rank = inst.ranks(sigma_m);

    let rm: Vec<usize> = sigma_m
        .iter()
        .map(|&v| {
            g.neighbors(v)
                .iter()
                .filter(|&&w| rank[w] > rank[v])
                .count()
        })
        .collect();
    let r = inst.right_modulator_degrees(sigma_m);
    let adjacent_classes: Vec<Vec<usize>> = sigma_m
        .iter()
        .map(|&v| {
            (0..l)
                .filter(|&i| g.has_edge(inst.partition.classes()[i][0], v))
                .collect()
        })
        .collect();
    let block_order: Vec<Vec<usize>> = (0..=k)
        .map(|j| {
            let mut order: Vec<usize> = (0..l).collect();
            order.sort_by_key(|&i| (std::cmp::Reverse(r[i][j]), i));
            order
        })
        .collect();
    let predecessors: Vec<Vec<Vec<usize>>> = (0..l)
        .map(|i| {
            (0..=k)
                .map(|j| {
                    let at = block_order[j].iter().position(|&c| c == i).unwrap();
                    block_order[j][..at].to_vec()
                })
                .collect()
        })
        .collect();

    // variable layout: x (largest class first), n_p, y_p, d_p, y_ij
    let mut by_size: Vec<usize> = (0..l).collect();
    by_size.sort_by_key(|&i| (std::cmp::Reverse(class_sizes[i]), i));
    let mut next = 0;
    let mut take = || {
        next += 1;
        next - 1
    };
    let mut x_idx = vec![vec![0; k + 1]; l];
    for &i in &by_size {
        for j in 0..=k {
            x_idx[i][j] = take();
        }
    }
    let n_p: Vec<usize> = (0..k).map(|_| take()).collect();
    let y_p: Vec<usize> = (0..k).map(|_| take()).collect();
    let d_p: Vec<usize> = (0..k).map(|_| take()).collect();
    let y_ij: Vec<Vec<usize>> = (0..l).map(|_| (0..=k).map(|_| take()).collect()).collect();
    let vars = VarMap {
        x: x_idx,
        n_p,
        y_p,
        d_p,
        y_ij,
    };

    let (ni, ki) = (n as i64, k as i64);
    let mut b = IqpBuilder::new(vars.len());
    for i in 0..l {
        for j in 0..=k {
            b.bound(vars.x[i][j], 0, class_sizes[i] as i64);
            b.bound(vars.y_ij[i][j], 0, ni);
        }
    }
    for p in 0..k {
        b.bound(vars.n_p[p], 0, ni - ki);
        b.bound(vars.y_p[p], 1, ni);
        b.bound(vars.d_p[p], 0, ni);
    }

    for p in 1..=k {
        // n_p = sum_{j > p} sum_i x_ij
        let mut terms = vec![(vars.n_p[p - 1], 1)];
        terms.extend(
            (p..=k)
                .flat_map(|j| (0..l).map(move |i| (i, j)))
                .map(|(i, j)| (vars.x[i][j], -1)),
        );
        b.constraint(&terms, Relation::Eq, 0);
    }
    for i in 0..l {
        // |A_i| = sum_j x_ij
        let terms: Vec<(usize, i64)> = (0..=k).map(|j| (vars.x[i][j], 1)).collect();
        b.constraint(&terms, Relation::Eq, class_sizes[i] as i64);
    }
    for p in 1..=k {
        // y_p = n - (n_p + k - p)
        b.constraint(
            &[(vars.y_p[p - 1], 1), (vars.n_p[p - 1], 1)],
            Relation::Eq,
            ni - ki + p as i64,
        );
    }
    for p in 1..=k {
        // d_p = rm_p + sum_{j > p} sum_{i in I_p} x_ij
        let mut terms = vec![(vars.d_p[p - 1], 1)];
        for j in p..=k {
            terms.extend(adjacent_classes[p - 1].iter().map(|&i| (vars.x[i][j], -1)));
        }
        b.constraint(&terms, Relation::Eq, rm[p - 1] as i64);
    }
    for i in 0..l {
        for j in 0..=k {
            // y_ij = y_{j-1} + sum_{q in J_ij} x_qj, with y_0 = 0
            let mut terms = vec![(vars.y_ij[i][j], 1)];
            if j > 0 {
                terms.push((vars.y_p[j - 1], -1));
            }
            terms.extend(predecessors[i][j].iter().map(|&q| (vars.x[q][j], -1)));
            b.constraint(&terms, Relation::Eq, 0);
        }
    }

    // doubled objective
    for p in 0..k {
        b.quadratic(vars.d_p[p], vars.y_p[p], 2);
        b.quadratic(vars.n_p[p], vars.n_p[p], 1);
        b.linear(vars.n_p[p], -1);
    }
    for i in 0..l {
        for j in 0..=k {
            let rij = r[i][j] as i64;
            if rij == 0 {
                continue;
            }
            let (x, y) = (vars.x[i][j], vars.y_ij[i][j]);
            b.quadratic(x, y, 2 * rij);
            b.quadratic(x, x, rij);
            b.linear(x, rij);
        }
    }

    Ok(CmEncoding {
        sigma_m: sigma_m.to_vec(),
        rm,
        r,
        adjacent_classes,
        block_order,
        predecessors,
        class_sizes,
        vars,
        iqp: b.build()?,
        n,
    })
}

/// Lays out the nice ordering described by a feasible solution: block `j`
/// holds, in the block's class order, `x_ij` vertices of each class (members
/// taken in ascending id), followed by the `j`-th modulator vertex.
pub fn reconstruct_ordering(
    inst: &CmInstance<'_>,
    enc: &CmEncoding,
    sol: &IqpSolution,
) -> Result<VertexOrdering> {
    if !enc.iqp.is_feasible(&sol.assignment)? {
        return Err(Error::InvalidInput(
            "solution is not feasible for the encoding".into(),
        ));
    }
    let k = enc.sigma_m.len();
    let classes = inst.partition.classes();
    let mut used = vec![0usize; classes.len()];
    let mut seq = Vec::with_capacity(inst.graph.num_vertices());
    for j in 0..=k {
        for &i in &enc.block_order[j] {
            let count = sol.assignment[enc.vars.x[i][j]] as usize;
            seq.extend_from_slice(&classes[i][used[i]..used[i] + count]);
            used[i] += count;
        }
        if j < k {
            seq.push(enc.sigma_m[j]);
        }
    }
    if used.iter().zip(classes).any(|(&u, c)| u != c.len()) {
        return Err(Error::Internal(
            "class counts of a feasible solution do not exhaust the classes".into(),
        ));
    }
    VertexOrdering::from_sequence(seq)
}

#[derive(Debug, Clone, Copy)]
pub struct CmOptions {
    pub k_max: usize,
    pub iqp: IqpOptions,
}

impl CmOptions {
    pub fn new(k_max: usize) -> Self {
        CmOptions {
            k_max,
            iqp: IqpOptions::default(),
        }
    }
}

pub fn solve_cm_fpt(g: &Graph, k_max: usize) -> Result<Solution> {
    solve_cm_fpt_with(g, &CmOptions::new(k_max))
}

pub fn solve_cm_fpt_with(g: &Graph, opts: &CmOptions) -> Result<Solution> {
    let inst = CmInstance::with_minimum_modulator(g, opts.k_max)?;
    solve_instance(&inst, &opts.iqp)
}

/// Solves one program per modulator order and keeps the cheapest; ties go to
/// the lexicographically smallest order.
pub fn solve_instance(inst: &CmInstance<'_>, iqp: &IqpOptions) -> Result<Solution> {
    let sigmas = factorial(inst.k());
    let runs: Vec<(u64, u64, CmEncoding, IqpSolution, u64)> = (0..sigmas as u64)
        .into_par_iter()
        .map(|idx| {
            let sigma_m = nth_permutation(&inst.modulator, idx as u128);
            let enc = build_encoding(inst, &sigma_m)?;
            let (outcome, nodes) = solve_iqp_with(&enc.iqp, iqp)?;
            let sol = match outcome {
                IqpOutcome::Optimal(s) => s,
                IqpOutcome::Infeasible => {
                    return Err(Error::Internal(format!(
                        "program for modulator order {sigma_m:?} is infeasible"
                    )))
                }
            };
            let cost = inst.base_cost + enc.increment(&sol)?;
            Ok((cost, idx, enc, sol, nodes))
        })
        .collect::<Result<_>>()?;

    let nodes = runs.iter().map(|r| r.4).sum();
    let (cost, _, enc, sol, _) = runs
        .into_iter()
        .min_by_key(|r| (r.0, r.1))
        .expect("at least one modulator order");
    let ordering = reconstruct_ordering(inst, &enc, &sol)?;
    let check = evaluate_cost(inst.graph, &ordering)?;
    if check != cost {
        return Err(Error::Internal(format!(
            "reconstructed ordering costs {check}, program predicted {cost}"
        )));
    }
    Ok(Solution {
        ordering,
        cost,
        stats: SearchStats {
            nodes,
            permutations: sigmas as u64,
            configurations: 0,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;
    use crate::iqp::solve_iqp;
    use crate::oracle::brute_force_msvc;

    /// K3 on {0, 1, 2} plus a pendant vertex 3 attached to 0.
    fn k3_pendant() -> Graph {
        Graph::new(4, [(0, 1), (0, 2), (1, 2), (0, 3)]).unwrap()
    }

    #[test]
    fn modulator_examples() {
        assert_eq!(
            find_clique_modulator(&generate::complete(6), 2).unwrap(),
            Vec::<usize>::new()
        );
        let g = Graph::new(5, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(find_clique_modulator(&g, 2).unwrap(), vec![4]);
        assert_eq!(find_clique_modulator(&Graph::empty(5), 4).unwrap().len(), 4);
        assert_eq!(
            find_clique_modulator(&Graph::empty(5), 3),
            Err(Error::ParameterExceeded {
                parameter: "minimum clique modulator",
                k_max: 3
            })
        );
    }

    #[test]
    fn right_modulator_degree_examples() {
        // modulator {3, 4}; vertex 0 sees both, 1 sees neither, 2 sees 4
        let g = Graph::new(5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (2, 4)]).unwrap();
        let inst = CmInstance::new(&g, &[3, 4]).unwrap();
        let none = inst.partition().class_of(1).unwrap();
        let all = inst.partition().class_of(0).unwrap();
        let sigma = [4, 3];
        for j in 1..=3 {
            assert_eq!(right_modulator_degree(&inst, &sigma, none, j).unwrap(), 0);
        }
        assert_eq!(right_modulator_degree(&inst, &sigma, all, 1).unwrap(), 2);
        assert_eq!(right_modulator_degree(&inst, &sigma, all, 2).unwrap(), 1);
        for c in 0..inst.partition().num_classes() {
            assert_eq!(right_modulator_degree(&inst, &sigma, c, 3).unwrap(), 0);
        }
        assert!(right_modulator_degree(&inst, &sigma, all, 0).is_err());
        assert!(right_modulator_degree(&inst, &sigma, all, 4).is_err());
        assert!(right_modulator_degree(&inst, &[3], all, 1).is_err());
    }

    #[test]
    fn clique_has_trivial_program() {
        let g = generate::complete(5);
        let inst = CmInstance::new(&g, &[]).unwrap();
        assert_eq!(inst.base_cost(), 20);
        let enc = build_encoding(&inst, &[]).unwrap();
        // one class in one block: x_11 and y_11
        assert_eq!(enc.vars().len(), 2);
        let sol = solve_iqp(enc.iqp()).unwrap().solution().cloned().unwrap();
        assert_eq!(sol.objective, 0);
        let o = reconstruct_ordering(&inst, &enc, &sol).unwrap();
        assert_eq!(evaluate_cost(&g, &o).unwrap(), 20);
    }

    #[test]
    fn pendant_matches_brute_force() {
        let g = k3_pendant();
        let inst = CmInstance::new(&g, &[3]).unwrap();
        assert_eq!(inst.partition().num_classes(), 2);
        let enc = build_encoding(&inst, &[3]).unwrap();
        let sol = solve_iqp(enc.iqp()).unwrap().solution().cloned().unwrap();
        let predicted = inst.base_cost() + enc.increment(&sol).unwrap();
        let o = reconstruct_ordering(&inst, &enc, &sol).unwrap();
        assert_eq!(evaluate_cost(&g, &o).unwrap(), predicted);
        assert_eq!(predicted, brute_force_msvc(&g, 10).unwrap().cost);
    }

    #[test]
    fn variable_count_formula() {
        let g = generate::erdos_renyi(9, 0.75, 11);
        let inst = CmInstance::with_minimum_modulator(&g, 4).unwrap();
        let (k, l) = (inst.k(), inst.partition().num_classes());
        let sigma = inst.modulator().to_vec();
        let enc = build_encoding(&inst, &sigma).unwrap();
        assert_eq!(enc.vars().len(), l * (k + 1) + 3 * k + l * (k + 1));
        assert_eq!(enc.iqp().num_vars(), enc.vars().len());
    }

    #[test]
    fn reconstruction_places_modulator_first_when_classes_go_last() {
        let g = k3_pendant();
        let inst = CmInstance::new(&g, &[3]).unwrap();
        let enc = build_encoding(&inst, &[3]).unwrap();
        let counts: Vec<Vec<i64>> = inst
            .partition()
            .classes()
            .iter()
            .map(|c| vec![0, c.len() as i64])
            .collect();
        let x = enc.assignment_from_counts(&counts).unwrap();
        let sol = IqpSolution {
            objective: enc.iqp().objective(&x).unwrap(),
            assignment: x,
        };
        let o = reconstruct_ordering(&inst, &enc, &sol).unwrap();
        assert_eq!(o.sequence()[0], 3);
        assert_eq!(
            evaluate_cost(&g, &o).unwrap(),
            inst.base_cost() + enc.increment(&sol).unwrap()
        );
    }

    #[test]
    fn rejects_infeasible_or_malformed_input() {
        let g = k3_pendant();
        assert!(CmInstance::new(&g, &[]).is_err());
        let inst = CmInstance::new(&g, &[3]).unwrap();
        assert!(build_encoding(&inst, &[0]).is_err());
        let enc = build_encoding(&inst, &[3]).unwrap();
        let bogus = IqpSolution {
            assignment: vec![0; enc.vars().len()],
            objective: 0,
        };
        assert!(reconstruct_ordering(&inst, &enc, &bogus).is_err());
        assert!(enc.assignment_from_counts(&[vec![1, 0]]).is_err());
    }

    #[test]
    fn solver_examples() {
        for n in 2..=12 {
            let s = solve_cm_fpt(&generate::complete(n), 0).unwrap();
            assert_eq!(
                s.cost,
                (1..n as u64).map(|i| i * (n as u64 - i)).sum::<u64>()
            );
        }
        assert_eq!(solve_cm_fpt(&generate::complete(4), 0).unwrap().cost, 10);
        assert_eq!(solve_cm_fpt(&generate::star(3), 3).unwrap().cost, 3);
        assert_eq!(solve_cm_fpt(&generate::cycle(4), 3).unwrap().cost, 6);
        assert_eq!(solve_cm_fpt(&Graph::empty(0), 0).unwrap().cost, 0);
        assert_eq!(solve_cm_fpt(&Graph::empty(1), 0).unwrap().cost, 0);
    }

    #[test]
    fn nice_permutation_keeps_blocks() {
        let g = k3_pendant();
        let inst = CmInstance::new(&g, &[3]).unwrap();
        // 1, 0 | 3 | 2 -> vertex 0 sees the modulator, so it moves ahead of 1
        let o = VertexOrdering::from_sequence(vec![1, 0, 3, 2]).unwrap();
        let nice = inst.nice_permutation(&o).unwrap();
        assert_eq!(nice.sequence(), &[0, 1, 3, 2]);
        assert!(evaluate_cost(&g, &nice).unwrap() <= evaluate_cost(&g, &o).unwrap());
    }
}
