//! Simple undirected graphs, vertex orderings and the sum-vertex-cover cost.
//!
//! Vertices are `0..n`. Positions in an ordering are 1-based and carried by
//! [`Position`] so they cannot be confused with vertex ids.

use std::fmt;

use crate::error::{Error, Result};

/// A 1-based rank in a vertex ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Position(usize);

impl Position {
    pub fn new(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidInput("positions start at 1".into()));
        }
        Ok(Position(rank))
    }

    #[inline]
    pub fn get(self) -> usize {
        self.0
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Simple undirected graph with a bit-matrix for constant-time adjacency queries.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
    words: usize,
    bits: Vec<u64>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

impl Graph {
    /// Builds a graph on `n` vertices. Self-loops, duplicate edges and
    /// out-of-range endpoints are rejected.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let words = n.div_ceil(64);
        let mut g = Graph {
            n,
            edges: Vec::new(),
            neighbors: vec![Vec::new(); n],
            words,
            bits: vec![0; n * words],
        };
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidInput(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidInput(format!("self-loop at vertex {u}")));
            }
            if g.has_edge(u, v) {
                return Err(Error::InvalidInput(format!("duplicate edge ({u}, {v})")));
            }
            g.set_bit(u, v);
            g.set_bit(v, u);
            g.edges.push((u.min(v), u.max(v)));
        }
        g.edges.sort_unstable();
        for &(u, v) in &g.edges {
            g.neighbors[u].push(v);
            g.neighbors[v].push(u);
        }
        for list in &mut g.neighbors {
            list.sort_unstable();
        }
        Ok(g)
    }

    pub fn empty(n: usize) -> Self {
        Graph::new(n, std::iter::empty()).expect("edgeless graph is valid")
    }

    fn set_bit(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
    }

    #[inline]
    pub fn num_vertices(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.bits[u * self.words + v / 64] & (1 << (v % 64)) != 0
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::InvalidInput(format!(
                "vertex {v} is not in a graph with {} vertices",
                self.n
            )));
        }
        Ok(())
    }

    /// Graph on the same vertices whose edges are exactly the non-edges of `self`.
    pub fn complement(&self) -> Graph {
        let mut edges = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    edges.push((u, v));
                }
            }
        }
        Graph::new(self.n, edges).expect("complement of a simple graph is simple")
    }

    /// Subgraph induced on `keep`, with vertices renumbered in the order given.
    pub fn induced(&self, keep: &[usize]) -> Result<Graph> {
        for &v in keep {
            self.check_vertex(v)?;
        }
        let mut edges = Vec::new();
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if u == v {
                    return Err(Error::InvalidInput(format!("vertex {u} listed twice")));
                }
                if self.has_edge(u, v) {
                    edges.push((i, j));
                }
            }
        }
        Graph::new(keep.len(), edges)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        check_permutation(perm, self.n)?;
        Graph::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &self.neighbors[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// True when every edge has an endpoint in `set`.
    pub fn is_vertex_cover(&self, set: &[usize]) -> bool {
        let mut inside = vec![false; self.n];
        for &v in set {
            if v < self.n {
                inside[v] = true;
            }
        }
        self.edges.iter().all(|&(u, v)| inside[u] || inside[v])
    }

    /// True when the vertices outside `set` are pairwise adjacent.
    pub fn is_clique_modulator(&self, set: &[usize]) -> bool {
        let mut inside = vec![false; self.n];
        for &v in set {
            if v < self.n {
                inside[v] = true;
            }
        }
        let rest: Vec<usize> = self.vertices().filter(|&v| !inside[v]).collect();
        rest.iter()
            .enumerate()
            .all(|(i, &u)| rest[i + 1..].iter().all(|&w| self.has_edge(u, w)))
    }
}

fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::InvalidInput(format!(
            "expected a permutation of {n} elements, got {}",
            perm.len()
        )));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::InvalidInput(format!(
                "{perm:?} is not a permutation of 0..{n}"
            )));
        }
        seen[p] = true;
    }
    Ok(())
}

/// A bijection between vertices and positions `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexOrdering {
    // sequence[r] is the vertex at position r + 1
    sequence: Vec<usize>,
    // rank[v] is the 1-based position of v
    rank: Vec<usize>,
}

impl VertexOrdering {
    /// Ordering that places `sequence[0]` first, `sequence[1]` second, and so on.
    pub fn from_sequence(sequence: Vec<usize>) -> Result<Self> {
        let n = sequence.len();
        check_permutation(&sequence, n)?;
        let mut rank = vec![0; n];
        for (r, &v) in sequence.iter().enumerate() {
            rank[v] = r + 1;
        }
        Ok(VertexOrdering { sequence, rank })
    }

    /// Ordering from a position vector: `positions[v]` is the 1-based rank of `v`.
    pub fn from_positions(positions: &[usize]) -> Result<Self> {
        let n = positions.len();
        let mut sequence = vec![usize::MAX; n];
        for (v, &p) in positions.iter().enumerate() {
            if p == 0 || p > n || sequence[p - 1] != usize::MAX {
                return Err(Error::InvalidInput(format!(
                    "{positions:?} is not a bijection onto 1..={n}"
                )));
            }
            sequence[p - 1] = v;
        }
        VertexOrdering::from_sequence(sequence)
    }

    pub fn identity(n: usize) -> Self {
        VertexOrdering {
            sequence: (0..n).collect(),
            rank: (1..=n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    #[inline]
    pub fn position(&self, v: usize) -> Position {
        Position(self.rank[v])
    }

    #[inline]
    pub fn vertex_at(&self, p: Position) -> usize {
        self.sequence[p.0 - 1]
    }

    /// Vertices in order of position.
    pub fn sequence(&self) -> &[usize] {
        &self.sequence
    }

    /// 1-based positions indexed by vertex.
    pub fn positions(&self) -> &[usize] {
        &self.rank
    }

    /// Exchanges the vertices at positions `i` and `i + 1`.
    pub fn swapped(&self, i: Position) -> Result<Self> {
        let r = i.0;
        if r + 1 > self.len() {
            return Err(Error::InvalidInput(format!(
                "cannot swap position {r} with {} in an ordering of length {}",
                r + 1,
                self.len()
            )));
        }
        let mut next = self.clone();
        next.sequence.swap(r - 1, r);
        next.rank[next.sequence[r - 1]] = r;
        next.rank[next.sequence[r]] = r + 1;
        Ok(next)
    }
}

fn check_dimensions(g: &Graph, ord: &VertexOrdering) -> Result<()> {
    if ord.len() != g.num_vertices() {
        return Err(Error::InvalidInput(format!(
            "ordering covers {} vertices but the graph has {}",
            ord.len(),
            g.num_vertices()
        )));
    }
    Ok(())
}

/// Sum over edges of the smaller endpoint position.
pub fn evaluate_cost(g: &Graph, ord: &VertexOrdering) -> Result<u64> {
    check_dimensions(g, ord)?;
    Ok(g.edges()
        .iter()
        .map(|&(u, v)| ord.rank[u].min(ord.rank[v]) as u64)
        .sum())
}

/// Number of neighbors of `v` placed strictly after it.
pub fn right_degree(g: &Graph, ord: &VertexOrdering, v: usize) -> Result<usize> {
    check_dimensions(g, ord)?;
    g.check_vertex(v)?;
    let p = ord.rank[v];
    Ok(g.neighbors(v).iter().filter(|&&w| ord.rank[w] > p).count())
}

/// Right degrees listed by position: element `r` belongs to the vertex at position `r + 1`.
pub fn right_degree_sequence(g: &Graph, ord: &VertexOrdering) -> Result<Vec<usize>> {
    check_dimensions(g, ord)?;
    Ok(ord
        .sequence
        .iter()
        .map(|&v| {
            let p = ord.rank[v];
            g.neighbors(v).iter().filter(|&&w| ord.rank[w] > p).count()
        })
        .collect())
}

/// The cost computed as `sum_v position(v) * rd(v)`.
pub fn cost_from_right_degrees(g: &Graph, ord: &VertexOrdering) -> Result<u64> {
    Ok(right_degree_sequence(g, ord)?
        .into_iter()
        .enumerate()
        .map(|(r, rd)| ((r + 1) * rd) as u64)
        .sum())
}

/// Exchanges two consecutive, non-adjacent vertices of equal right degree.
/// Such a swap never changes the cost.
pub fn swap_equal_rd_nonadjacent(
    g: &Graph,
    ord: &VertexOrdering,
    i: Position,
) -> Result<VertexOrdering> {
    check_dimensions(g, ord)?;
    if i.0 + 1 > ord.len() {
        return Err(Error::Precondition(format!(
            "position {} has no successor",
            i.0
        )));
    }
    let a = ord.vertex_at(i);
    let b = ord.vertex_at(Position(i.0 + 1));
    if g.has_edge(a, b) {
        return Err(Error::Precondition(format!(
            "vertices {a} and {b} at positions {} and {} are adjacent",
            i.0,
            i.0 + 1
        )));
    }
    let (ra, rb) = (right_degree(g, ord, a)?, right_degree(g, ord, b)?);
    if ra != rb {
        return Err(Error::Precondition(format!(
            "right degrees differ ({ra} vs {rb}) at positions {} and {}",
            i.0,
            i.0 + 1
        )));
    }
    ord.swapped(i)
}

/// Vertices outside a separator grouped by their neighborhood inside it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassPartition {
    separator: Vec<usize>,
    classes: Vec<Vec<usize>>,
    signatures: Vec<u64>,
    class_of: Vec<Option<usize>>,
}

impl ClassPartition {
    /// Separator vertices in ascending order. Bit `b` of a signature refers to `separator()[b]`.
    pub fn separator(&self) -> &[usize] {
        &self.separator
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn signature(&self, class: usize) -> u64 {
        self.signatures[class]
    }

    /// Separator vertices adjacent to every member of `class`.
    pub fn signature_vertices(&self, class: usize) -> Vec<usize> {
        let sig = self.signatures[class];
        self.separator
            .iter()
            .enumerate()
            .filter(|&(b, _)| sig >> b & 1 == 1)
            .map(|(_, &v)| v)
            .collect()
    }

    /// Class index of `v`, or `None` when `v` is a separator vertex.
    pub fn class_of(&self, v: usize) -> Option<usize> {
        self.class_of[v]
    }
}

/// Groups `V \ separator` by neighborhood inside `separator`.
///
/// Classes are ordered by signature bitmask, ties by smallest member; members
/// of a class are ascending.
pub fn partition_by_separator(g: &Graph, separator: &[usize]) -> Result<ClassPartition> {
    let mut sep = separator.to_vec();
    sep.sort_unstable();
    sep.dedup();
    if sep.len() != separator.len() {
        return Err(Error::InvalidInput("separator lists a vertex twice".into()));
    }
    for &v in &sep {
        g.check_vertex(v)?;
    }
    if sep.len() > 64 {
        return Err(Error::InvalidInput(format!(
            "separators are limited to 64 vertices, got {}",
            sep.len()
        )));
    }
    let mut in_sep = vec![false; g.num_vertices()];
    for &v in &sep {
        in_sep[v] = true;
    }

    let mut keyed: Vec<(u64, usize)> = g
        .vertices()
        .filter(|&v| !in_sep[v])
        .map(|v| {
            let sig = sep
                .iter()
                .enumerate()
                .filter(|&(_, &s)| g.has_edge(v, s))
                .fold(0u64, |acc, (b, _)| acc | 1 << b);
            (sig, v)
        })
        .collect();
    keyed.sort_unstable();

    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut signatures = Vec::new();
    let mut class_of = vec![None; g.num_vertices()];
    for (sig, v) in keyed {
        if signatures.last() != Some(&sig) {
            signatures.push(sig);
            classes.push(Vec::new());
        }
        class_of[v] = Some(classes.len() - 1);
        classes.last_mut().unwrap().push(v);
    }
    Ok(ClassPartition {
        separator: sep,
        classes,
        signatures,
        class_of,
    })
}

/// `sum_{i=1}^{q-1} i * (q - i)`: the cost of any ordering of a clique on `q` vertices.
pub fn clique_cost(q: usize) -> u64 {
    (1..q).map(|i| (i * (q - i)) as u64).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    fn ord(seq: &[usize]) -> VertexOrdering {
        VertexOrdering::from_sequence(seq.to_vec()).unwrap()
    }

    #[test]
    fn rejects_loops_duplicates_and_out_of_range() {
        assert!(matches!(
            Graph::new(2, [(1, 1)]),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            Graph::new(3, [(0, 1), (1, 0)]),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            Graph::new(2, [(0, 2)]),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn adjacency_is_symmetric_and_counts_match() {
        let g = generate::erdos_renyi(20, 0.3, 7);
        let deg_sum: usize = g.vertices().map(|v| g.degree(v)).sum();
        assert_eq!(deg_sum, 2 * g.num_edges());
        for u in g.vertices() {
            for v in g.vertices() {
                assert_eq!(g.has_edge(u, v), g.has_edge(v, u));
            }
        }
    }

    #[test]
    fn cost_examples() {
        let k2 = generate::complete(2);
        assert_eq!(evaluate_cost(&k2, &ord(&[0, 1])).unwrap(), 1);
        assert_eq!(evaluate_cost(&k2, &ord(&[1, 0])).unwrap(), 1);

        let k3 = generate::complete(3);
        for seq in [[0, 1, 2], [2, 0, 1], [1, 2, 0]] {
            assert_eq!(evaluate_cost(&k3, &ord(&seq)).unwrap(), 4);
            assert_eq!(cost_from_right_degrees(&k3, &ord(&seq)).unwrap(), 4);
        }

        // a=0, b=1, c=2; b first
        let p3 = generate::path(3);
        assert_eq!(evaluate_cost(&p3, &ord(&[1, 0, 2])).unwrap(), 2);
        assert_eq!(cost_from_right_degrees(&p3, &ord(&[1, 0, 2])).unwrap(), 2);

        assert_eq!(
            evaluate_cost(&Graph::empty(5), &VertexOrdering::identity(5)).unwrap(),
            0
        );
    }

    #[test]
    fn cost_rejects_dimension_mismatch() {
        let g = generate::path(3);
        assert!(matches!(
            evaluate_cost(&g, &VertexOrdering::identity(2)),
            Err(Error::InvalidInput(_))
        ));
        assert!(cost_from_right_degrees(&g, &VertexOrdering::identity(4)).is_err());
    }

    #[test]
    fn right_degree_examples() {
        let k2 = generate::complete(2);
        let o = ord(&[0, 1]);
        assert_eq!(right_degree(&k2, &o, 0).unwrap(), 1);
        assert_eq!(right_degree(&k2, &o, 1).unwrap(), 0);

        let k4 = generate::complete(4);
        let o = ord(&[3, 1, 0, 2]);
        assert_eq!(right_degree(&k4, &o, 1).unwrap(), 2);

        let g = Graph::new(3, [(0, 1)]).unwrap();
        assert_eq!(
            right_degree(&g, &VertexOrdering::identity(3), 2).unwrap(),
            0
        );
        assert!(right_degree(&g, &VertexOrdering::identity(3), 3).is_err());
    }

    #[test]
    fn partition_examples() {
        let star = generate::star(3);
        let p = partition_by_separator(&star, &[0]).unwrap();
        assert_eq!(p.classes(), &[vec![1, 2, 3]]);

        let p3 = generate::path(3);
        let p = partition_by_separator(&p3, &[1]).unwrap();
        assert_eq!(p.classes(), &[vec![0, 2]]);

        let p4 = generate::path(4);
        let p = partition_by_separator(&p4, &[1, 2]).unwrap();
        assert_eq!(p.classes(), &[vec![0], vec![3]]);
        assert_eq!(p.signature_vertices(0), vec![1]);
        assert_eq!(p.signature_vertices(1), vec![2]);
        assert_eq!(p.class_of(1), None);
        assert_eq!(p.class_of(3), Some(1));

        assert!(partition_by_separator(&p4, &[1, 1]).is_err());
        assert!(partition_by_separator(&p4, &[9]).is_err());
    }

    #[test]
    fn swap_examples() {
        let e3 = Graph::empty(3);
        let o = VertexOrdering::identity(3);
        let s = swap_equal_rd_nonadjacent(&e3, &o, Position(1)).unwrap();
        assert_eq!(s.sequence(), &[1, 0, 2]);
        assert_eq!(evaluate_cost(&e3, &s).unwrap(), 0);

        // star center 0 at position 4, leaves first
        let star = generate::star(3);
        let o = ord(&[1, 2, 3, 0]);
        let before = evaluate_cost(&star, &o).unwrap();
        let s = swap_equal_rd_nonadjacent(&star, &o, Position(1)).unwrap();
        assert_eq!(evaluate_cost(&star, &s).unwrap(), before);

        // adjacent pair
        assert!(matches!(
            swap_equal_rd_nonadjacent(&star, &o, Position(3)),
            Err(Error::Precondition(_))
        ));
        // vertex 0 has rd 1, isolated vertex 2 has rd 0
        let g = Graph::new(3, [(0, 1)]).unwrap();
        assert!(matches!(
            swap_equal_rd_nonadjacent(&g, &ord(&[0, 2, 1]), Position(1)),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            swap_equal_rd_nonadjacent(&g, &ord(&[0, 2, 1]), Position(3)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(generate::complete(6).complement().num_edges(), 0);
        assert_eq!(Graph::empty(5).complement(), generate::complete(5));
        let g = generate::erdos_renyi(12, 0.4, 3);
        assert_eq!(g.complement().complement(), g);
    }

    #[test]
    fn orderings_round_trip_positions() {
        let o = ord(&[2, 0, 3, 1]);
        assert_eq!(o.positions(), &[2, 4, 1, 3]);
        assert_eq!(VertexOrdering::from_positions(o.positions()).unwrap(), o);
        assert_eq!(o.vertex_at(o.position(3)), 3);
        assert!(VertexOrdering::from_sequence(vec![0, 0]).is_err());
        assert!(VertexOrdering::from_positions(&[0, 1]).is_err());
        assert!(Position::new(0).is_err());
    }

    #[test]
    fn clique_cost_matches_enumeration() {
        for q in 0..12 {
            let k = generate::complete(q);
            assert_eq!(
                evaluate_cost(&k, &VertexOrdering::identity(q)).unwrap(),
                clique_cost(q)
            );
        }
        assert_eq!(clique_cost(3), 4);
        assert_eq!(clique_cost(4), 10);
    }
}
