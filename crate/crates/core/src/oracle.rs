//! Reference solvers: exhaustive permutation search and the max-degree greedy.

use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{evaluate_cost, right_degree_sequence, Graph, VertexOrdering};
use crate::solution::{SearchStats, Solution};

pub const DEFAULT_BRUTE_FORCE_LIMIT: usize = 10;

/// Cost and vertex sequence of a candidate ordering.
type Ranked = (u64, Vec<usize>);

/// Depth-first placement of vertices into positions 1, 2, ... with the
/// running cost accumulated as `position * (unplaced neighbors)`.
struct Placement<'g> {
    g: &'g Graph,
    placed: Vec<bool>,
    placed_neighbors: Vec<usize>,
    sequence: Vec<usize>,
    nodes: u64,
    // once every edge is covered, enumerate every arrangement of the rest
    // instead of only the ascending-id one
    all_completions: bool,
}

impl<'g> Placement<'g> {
    fn new(g: &'g Graph) -> Self {
        let n = g.num_vertices();
        Placement {
            g,
            placed: vec![false; n],
            placed_neighbors: vec![0; n],
            sequence: Vec::with_capacity(n),
            nodes: 0,
            all_completions: false,
        }
    }

    /// Places `v` next; returns the number of edges it covers.
    fn place(&mut self, v: usize) -> usize {
        let covered = self.g.degree(v) - self.placed_neighbors[v];
        self.placed[v] = true;
        self.sequence.push(v);
        for &w in self.g.neighbors(v) {
            self.placed_neighbors[w] += 1;
        }
        covered
    }

    fn unplace(&mut self, v: usize) {
        for &w in self.g.neighbors(v) {
            self.placed_neighbors[w] -= 1;
        }
        self.sequence.pop();
        self.placed[v] = false;
    }

    /// Visits every completion whose cost is at most `bound()`. The visitor
    /// returns `true` to stop the search.
    fn search<B, F>(
        &mut self,
        partial: u64,
        remaining_edges: usize,
        bound: &B,
        visit: &mut F,
    ) -> bool
    where
        B: Fn() -> u64,
        F: FnMut(&[usize], u64) -> bool,
    {
        self.nodes += 1;
        let n = self.g.num_vertices();
        let next = self.sequence.len() + 1;
        // every uncovered edge costs at least `next`
        if partial + (next * remaining_edges) as u64 > bound() {
            return false;
        }
        if remaining_edges == 0 {
            if !self.all_completions {
                // ascending ids give the smallest position vector among equal-cost completions
                let start = self.sequence.len();
                let rest: Vec<usize> = (0..n).filter(|&v| !self.placed[v]).collect();
                self.sequence.extend(rest);
                let stop = visit(&self.sequence, partial);
                self.sequence.truncate(start);
                return stop;
            }
            return self.finish_free(partial, visit);
        }
        for v in 0..n {
            if self.placed[v] {
                continue;
            }
            let covered = self.place(v);
            let stop = self.search(
                partial + (next * covered) as u64,
                remaining_edges - covered,
                bound,
                visit,
            );
            self.unplace(v);
            if stop {
                return true;
            }
        }
        false
    }

    /// All edges are covered, so every arrangement of the unplaced vertices
    /// has the same cost.
    fn finish_free<F>(&mut self, partial: u64, visit: &mut F) -> bool
    where
        F: FnMut(&[usize], u64) -> bool,
    {
        if self.sequence.len() == self.g.num_vertices() {
            return visit(&self.sequence, partial);
        }
        for v in 0..self.g.num_vertices() {
            if self.placed[v] {
                continue;
            }
            self.place(v);
            self.nodes += 1;
            let stop = self.finish_free(partial, visit);
            self.unplace(v);
            if stop {
                return true;
            }
        }
        false
    }
}

fn check_limit(g: &Graph, limit_n: usize) -> Result<()> {
    if g.num_vertices() > limit_n {
        return Err(Error::SizeLimit {
            n: g.num_vertices(),
            limit: limit_n,
        });
    }
    Ok(())
}

/// Exact minimum over all `n!` orderings. Ties go to the lexicographically
/// smallest position vector.
pub fn brute_force_msvc(g: &Graph, limit_n: usize) -> Result<Solution> {
    check_limit(g, limit_n)?;
    let n = g.num_vertices();
    let m = g.num_edges();
    if n == 0 {
        return Ok(Solution {
            ordering: VertexOrdering::identity(0),
            cost: 0,
            stats: SearchStats::default(),
        });
    }

    let bound = AtomicU64::new(u64::MAX);
    let results: Vec<(Option<Ranked>, u64)> = (0..n)
        .into_par_iter()
        .map(|first| {
            let mut p = Placement::new(g);
            let covered = p.place(first);
            let mut best: Option<Ranked> = None;
            let read_bound = || bound.load(AtomicOrdering::Relaxed);
            p.search(
                covered as u64,
                m - covered,
                &read_bound,
                &mut |seq, cost| {
                    let positions = positions_of(seq);
                    let improves = match &best {
                        None => true,
                        Some((bc, bp)) => (cost, &positions) < (*bc, bp),
                    };
                    if improves {
                        best = Some((cost, positions));
                        bound.fetch_min(cost, AtomicOrdering::Relaxed);
                    }
                    false
                },
            );
            (best, p.nodes)
        })
        .collect();

    let nodes = results.iter().map(|(_, k)| k).sum();
    let (cost, positions) = results
        .into_iter()
        .filter_map(|(b, _)| b)
        .min()
        .expect("at least one complete ordering is visited");
    Ok(Solution {
        ordering: VertexOrdering::from_positions(&positions)?,
        cost,
        stats: SearchStats {
            nodes,
            ..SearchStats::default()
        },
    })
}

fn positions_of(seq: &[usize]) -> Vec<usize> {
    let mut pos = vec![0; seq.len()];
    for (r, &v) in seq.iter().enumerate() {
        pos[v] = r + 1;
    }
    pos
}

/// Calls `visit` on every minimum-cost ordering until it returns `true`.
/// Returns the optimum and whether the visitor stopped the enumeration.
pub fn for_each_optimal_ordering<F>(g: &Graph, limit_n: usize, mut visit: F) -> Result<(u64, bool)>
where
    F: FnMut(&VertexOrdering) -> bool,
{
    let opt = brute_force_msvc(g, limit_n)?.cost;
    let n = g.num_vertices();
    if n == 0 {
        return Ok((0, visit(&VertexOrdering::identity(0))));
    }
    let mut p = Placement::new(g);
    p.all_completions = true;
    let bound = || opt;
    let stopped = p.search(0, g.num_edges(), &bound, &mut |seq, cost| {
        cost == opt && visit(&VertexOrdering::from_sequence(seq.to_vec()).expect("complete"))
    });
    Ok((opt, stopped))
}

/// True iff some minimum-cost ordering has a non-increasing right-degree sequence.
pub fn verify_optimal_right_degree_monotone(g: &Graph, limit_n: usize) -> Result<bool> {
    let (_, found) = for_each_optimal_ordering(g, limit_n, |ord| {
        let rds = right_degree_sequence(g, ord).expect("dimensions match");
        rds.windows(2).all(|w| w[0] >= w[1])
    })?;
    Ok(found)
}

/// Repeatedly places a vertex of maximum residual degree (ties: smallest id)
/// until every edge is covered, then appends the rest in id order.
pub fn greedy_msvc(g: &Graph) -> Solution {
    let n = g.num_vertices();
    let mut residual: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut placed = vec![false; n];
    let mut sequence = Vec::with_capacity(n);
    let mut remaining = g.num_edges();
    while remaining > 0 {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (residual[v], std::cmp::Reverse(v)))
            .expect("uncovered edges imply unplaced vertices");
        placed[v] = true;
        sequence.push(v);
        remaining -= residual[v];
        for &w in g.neighbors(v) {
            if !placed[w] {
                residual[w] -= 1;
            }
        }
        residual[v] = 0;
    }
    sequence.extend((0..n).filter(|&v| !placed[v]));
    let ordering = VertexOrdering::from_sequence(sequence).expect("greedy builds a permutation");
    let cost = evaluate_cost(g, &ordering).expect("dimensions match");
    Solution {
        ordering,
        cost,
        stats: SearchStats::default(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    #[test]
    fn brute_force_examples() {
        assert_eq!(brute_force_msvc(&generate::star(3), 10).unwrap().cost, 3);
        assert_eq!(brute_force_msvc(&generate::path(4), 10).unwrap().cost, 4);
        assert_eq!(
            brute_force_msvc(&generate::complete(4), 10).unwrap().cost,
            10
        );
        assert_eq!(brute_force_msvc(&generate::cycle(4), 10).unwrap().cost, 6);
        assert_eq!(brute_force_msvc(&Graph::empty(0), 10).unwrap().cost, 0);
    }

    #[test]
    fn brute_force_size_guard() {
        let g = Graph::empty(11);
        assert_eq!(
            brute_force_msvc(&g, 10),
            Err(Error::SizeLimit { n: 11, limit: 10 })
        );
    }

    #[test]
    fn brute_force_ties_pick_smallest_position_vector() {
        // Every ordering of an edgeless graph costs 0; identity wins.
        let s = brute_force_msvc(&Graph::empty(4), 10).unwrap();
        assert_eq!(s.ordering, VertexOrdering::identity(4));

        // P3: optimum 2 needs b (vertex 1) first; then a before c.
        let s = brute_force_msvc(&generate::path(3), 10).unwrap();
        assert_eq!(s.ordering.positions(), &[2, 1, 3]);
    }

    #[test]
    fn brute_force_matches_plain_enumeration() {
        for seed in 0..20 {
            let g = generate::erdos_renyi(6, 0.5, seed);
            let plain = all_permutations(6)
                .into_iter()
                .map(|seq| {
                    let o = VertexOrdering::from_sequence(seq).unwrap();
                    (evaluate_cost(&g, &o).unwrap(), o.positions().to_vec())
                })
                .min()
                .unwrap();
            let s = brute_force_msvc(&g, 10).unwrap();
            assert_eq!((s.cost, s.ordering.positions().to_vec()), plain);
        }
    }

    fn all_permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in all_permutations(n - 1) {
            for i in 0..=p.len() {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn greedy_examples() {
        let s = greedy_msvc(&generate::star(3));
        assert_eq!(s.cost, 3);
        assert_eq!(s.ordering.sequence()[0], 0);

        let s = greedy_msvc(&generate::cycle(4));
        assert_eq!(s.ordering.sequence()[..2], [0, 2]);
        assert_eq!(s.cost, 6);

        assert_eq!(greedy_msvc(&generate::complete(3)).cost, 4);
        assert_eq!(greedy_msvc(&generate::path(3)).cost, 2);
        assert_eq!(
            greedy_msvc(&Graph::empty(3)).ordering,
            VertexOrdering::identity(3)
        );
    }

    #[test]
    fn monotone_examples() {
        assert!(verify_optimal_right_degree_monotone(&generate::path(4), 10).unwrap());
        assert!(verify_optimal_right_degree_monotone(&generate::complete(4), 10).unwrap());
        assert!(verify_optimal_right_degree_monotone(&Graph::empty(11), 10).is_err());
    }

    #[test]
    fn optimal_enumeration_counts() {
        // K3: all 6 orderings are optimal
        let mut count = 0;
        let (opt, stopped) = for_each_optimal_ordering(&generate::complete(3), 10, |_| {
            count += 1;
            false
        })
        .unwrap();
        assert_eq!((opt, stopped, count), (4, false, 6));

        // P3: b first, then a/c in either order
        let mut count = 0;
        for_each_optimal_ordering(&generate::path(3), 10, |o| {
            assert_eq!(o.sequence()[0], 1);
            count += 1;
            false
        })
        .unwrap();
        assert_eq!(count, 2);
    }
}
