#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::HashSet;

use msvc_core::generate::erdos_renyi_with;
use msvc_core::{Graph, VertexOrdering};
use rand::seq::SliceRandom;
use rand::Rng;

/// Edge bitmask over pairs `(u, v)`, `u < v`, row by row; matches
/// `generate::from_edge_mask`.
fn mask_of(n: usize, adj: &[Vec<bool>], perm: &[usize]) -> u64 {
    let mut mask = 0u64;
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if adj[perm[u]][perm[v]] {
                mask |= 1 << bit;
            }
            bit += 1;
        }
    }
    mask
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    heap(n, &mut p, &mut out);
    out
}

fn heap(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(p.clone());
        return;
    }
    for i in 0..k - 1 {
        heap(k - 1, p, out);
        if k.is_multiple_of(2) {
            p.swap(i, k - 1);
        } else {
            p.swap(0, k - 1);
        }
    }
    heap(k - 1, p, out);
}

fn canonical(n: usize, adj: &[Vec<bool>], perms: &[Vec<usize>]) -> u64 {
    perms.iter().map(|p| mask_of(n, adj, p)).min().unwrap_or(0)
}

/// One representative (as an edge mask) of every isomorphism class of graphs
/// on `n` vertices. Every graph on `n + 1` vertices is some `n`-vertex graph
/// plus a vertex, so classes are grown one vertex at a time.
pub fn nonisomorphic_masks(n: usize) -> Vec<u64> {
    let mut reps: Vec<u64> = vec![0];
    for size in 2..=n {
        let perms = permutations(size);
        let mut seen = HashSet::new();
        for &prev in &reps {
            let base = adjacency(size - 1, prev);
            for nbrs in 0u32..1 << (size - 1) {
                let mut adj = vec![vec![false; size]; size];
                for u in 0..size - 1 {
                    adj[u][..size - 1].copy_from_slice(&base[u]);
                }
                for u in 0..size - 1 {
                    if nbrs >> u & 1 == 1 {
                        adj[u][size - 1] = true;
                        adj[size - 1][u] = true;
                    }
                }
                seen.insert(canonical(size, &adj, &perms));
            }
        }
        reps = seen.into_iter().collect();
        reps.sort_unstable();
    }
    reps
}

fn adjacency(n: usize, mask: u64) -> Vec<Vec<bool>> {
    let mut adj = vec![vec![false; n]; n];
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> bit & 1 == 1 {
                adj[u][v] = true;
                adj[v][u] = true;
            }
            bit += 1;
        }
    }
    adj
}

pub fn random_connected<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    loop {
        let g = erdos_renyi_with(n, p, rng);
        if g.is_connected() {
            return g;
        }
    }
}

pub fn random_ordering<R: Rng>(n: usize, rng: &mut R) -> VertexOrdering {
    let mut seq: Vec<usize> = (0..n).collect();
    seq.shuffle(rng);
    VertexOrdering::from_sequence(seq).unwrap()
}

/// Cost straight from the definition, independent of the library's evaluator.
pub fn definition_cost(g: &Graph, seq: &[usize]) -> u64 {
    let mut pos = vec![0u64; seq.len()];
    for (i, &v) in seq.iter().enumerate() {
        pos[v] = i as u64 + 1;
    }
    g.edges().iter().map(|&(u, v)| pos[u].min(pos[v])).sum()
}
