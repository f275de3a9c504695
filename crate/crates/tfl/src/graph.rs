//! Immutable simple undirected graphs on at most 64 vertices.
//!
//! One adjacency row is one `u64`, so every set operation the rest of the
//! crate needs (neighborhoods, components, independence checks) is a couple
//! of word instructions.

use crate::error::{Error, Result};

/// Hard cap on the vertex count: one bitset row per machine word.
pub const MAX_VERTICES: usize = 64;

#[inline(always)]
pub(crate) const fn bit(v: usize) -> u64 {
    1u64 << v
}

#[inline(always)]
pub(crate) const fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A set of vertices of some host graph, stored as a 64-bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn singleton(v: usize) -> Self {
        VertexSet(bit(v))
    }

    pub fn full(n: usize) -> Self {
        VertexSet(low_bits(n))
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(vs: I) -> Self {
        let mut bits = 0u64;
        for v in vs {
            bits |= bit(v);
        }
        VertexSet(bits)
    }

    #[inline(always)]
    pub fn contains(self, v: usize) -> bool {
        self.0 & bit(v) != 0
    }

    #[inline(always)]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline(always)]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= bit(v);
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !bit(v);
    }

    pub fn is_subset_of(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Iterates members in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl std::fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// An immutable simple undirected graph with dense vertex labels `0..n`.
///
/// Invariants (checked by constructors, re-checkable via
/// [`Graph::check_invariants`]): the adjacency relation is symmetric and
/// loopless, and no row has a bit at position `>= n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// An edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::InvalidSize(format!(
                "vertex count must be in 1..={MAX_VERTICES}, got {n}"
            )));
        }
        Ok(Graph {
            n,
            adj: vec![0u64; n],
        })
    }

    /// Builds a graph from an edge list. Duplicate edges are fine; loops are not.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge_mut(u, v)?;
        }
        Ok(g)
    }

    pub(crate) fn add_edge_mut(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::InvalidArgument(format!(
                "edge ({u},{v}) out of range for n={}",
                self.n
            )));
        }
        if u == v {
            return Err(Error::InvalidArgument(format!("loop at vertex {u}")));
        }
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
        Ok(())
    }

    pub(crate) fn from_rows(n: usize, adj: Vec<u64>) -> Self {
        let g = Graph { n, adj };
        debug_assert!(g.check_invariants().is_ok());
        g
    }

    #[inline(always)]
    pub fn n(&self) -> usize {
        self.n
    }

    /// All-vertices mask.
    #[inline(always)]
    pub fn vertex_set(&self) -> VertexSet {
        VertexSet(low_bits(self.n))
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    #[inline(always)]
    pub(crate) fn row(&self, v: usize) -> u64 {
        self.adj[v]
    }

    /// Neighborhood N(v) as a set. Panics on an out-of-range index.
    #[inline(always)]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        assert!(v < self.n, "vertex {v} out of range for n={}", self.n);
        VertexSet(self.adj[v])
    }

    /// Degree of `v`. Panics on an out-of-range index.
    #[inline(always)]
    pub fn degree(&self, v: usize) -> usize {
        assert!(v < self.n, "vertex {v} out of range for n={}", self.n);
        self.adj[v].count_ones() as usize
    }

    /// Whether the edge `{u,v}` is present. Panics on out-of-range indices.
    #[inline(always)]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        assert!(
            u < self.n && v < self.n,
            "edge ({u},{v}) out of range for n={}",
            self.n
        );
        self.adj[u] & bit(v) != 0
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).min().unwrap_or(0)
    }

    /// Edges as ordered pairs `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            let mut higher = self.adj[u] & !low_bits(u + 1);
            while higher != 0 {
                let v = higher.trailing_zeros() as usize;
                higher &= higher - 1;
                out.push((u, v));
            }
        }
        out
    }

    /// The union of neighborhoods of `s`, minus nothing (may intersect `s`).
    pub fn neighborhood_of_set(&self, s: VertexSet) -> VertexSet {
        let mut acc = 0u64;
        for v in s.iter() {
            acc |= self.adj[v];
        }
        VertexSet(acc)
    }

    /// Validates symmetry, looplessness and row masking; used by tests.
    pub fn check_invariants(&self) -> Result<()> {
        if self.n == 0 || self.n > MAX_VERTICES || self.adj.len() != self.n {
            return Err(Error::InvalidSize(format!("bad row count for n={}", self.n)));
        }
        let mask = low_bits(self.n);
        for u in 0..self.n {
            if self.adj[u] & !mask != 0 {
                return Err(Error::InvalidArgument(format!("row {u} has bits >= n")));
            }
            if self.adj[u] & bit(u) != 0 {
                return Err(Error::InvalidArgument(format!("loop at vertex {u}")));
            }
        }
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if (self.adj[u] & bit(v) != 0) != (self.adj[v] & bit(u) != 0) {
                    return Err(Error::InvalidArgument(format!(
                        "asymmetric adjacency at ({u},{v})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Applies a vertex relabelling: vertex `v` of `self` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.n);
        let mut adj = vec![0u64; self.n];
        for u in 0..self.n {
            let mut row = self.adj[u];
            while row != 0 {
                let v = row.trailing_zeros() as usize;
                row &= row - 1;
                adj[perm[u]] |= bit(perm[v]);
            }
        }
        Graph { n: self.n, adj }
    }

    /// Connected components as vertex sets, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = 0u64;
        let all = low_bits(self.n);
        let mut out = Vec::new();
        while seen != all {
            let start = (!seen & all).trailing_zeros() as usize;
            let mut comp = bit(start);
            loop {
                let mut grown = comp;
                let mut frontier = comp;
                while frontier != 0 {
                    let v = frontier.trailing_zeros() as usize;
                    frontier &= frontier - 1;
                    grown |= self.adj[v];
                }
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            seen |= comp;
            out.push(VertexSet(comp));
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        // Single BFS from vertex 0 over bitset rows.
        let all = low_bits(self.n);
        let mut comp = 1u64;
        loop {
            let mut grown = comp;
            let mut frontier = comp;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                grown |= self.adj[v];
            }
            if grown == comp {
                return comp == all;
            }
            comp = grown;
        }
    }

    /// Whether the vertices of `within` induce a connected subgraph.
    pub(crate) fn is_connected_within(&self, within: u64) -> bool {
        if within == 0 {
            return true;
        }
        let start = within.trailing_zeros() as usize;
        let mut comp = bit(start);
        loop {
            let mut grown = comp;
            let mut frontier = comp;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                grown |= self.adj[v] & within;
            }
            if grown == comp {
                return comp == within;
            }
            comp = grown;
        }
    }

    /// Deletes the vertices of `s`, keeping labels compacted in order.
    pub fn delete_vertices(&self, s: VertexSet) -> Result<Graph> {
        let keep = VertexSet(self.vertex_set().0 & !s.0);
        induced_subgraph(self, keep)
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// K_a, the complete graph on `a` vertices.
pub fn complete_graph(a: usize) -> Result<Graph> {
    if a == 0 || a > MAX_VERTICES {
        return Err(Error::InvalidSize(format!(
            "complete graph order must be in 1..={MAX_VERTICES}, got {a}"
        )));
    }
    let mask = low_bits(a);
    let adj = (0..a).map(|v| mask & !bit(v)).collect();
    Ok(Graph { n: a, adj })
}

/// C_a, the cycle on `a >= 3` vertices.
pub fn cycle_graph(a: usize) -> Result<Graph> {
    if a < 3 || a > MAX_VERTICES {
        return Err(Error::InvalidSize(format!(
            "cycle order must be in 3..={MAX_VERTICES}, got {a}"
        )));
    }
    let mut g = Graph::empty(a)?;
    for v in 0..a {
        g.add_edge_mut(v, (v + 1) % a)?;
    }
    Ok(g)
}

/// P_a, the path on `a` vertices.
pub fn path_graph(a: usize) -> Result<Graph> {
    let mut g = Graph::empty(a)?;
    for v in 1..a {
        g.add_edge_mut(v - 1, v)?;
    }
    Ok(g)
}

/// G ∪ H: vertices of `h` are relabelled after `g`'s, no cross edges.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Result<Graph> {
    let n = g.n + h.n;
    if n > MAX_VERTICES {
        return Err(Error::InvalidSize(format!(
            "union order {n} exceeds {MAX_VERTICES}"
        )));
    }
    let mut adj = Vec::with_capacity(n);
    adj.extend_from_slice(&g.adj);
    adj.extend(h.adj.iter().map(|&row| row << g.n));
    Ok(Graph { n, adj })
}

/// G ∨ H: the disjoint union plus all |V(G)|·|V(H)| cross edges.
pub fn join(g: &Graph, h: &Graph) -> Result<Graph> {
    let mut out = disjoint_union(g, h)?;
    let left = low_bits(g.n);
    let right = low_bits(out.n) & !left;
    for v in 0..g.n {
        out.adj[v] |= right;
    }
    for v in g.n..out.n {
        out.adj[v] |= left;
    }
    Ok(out)
}

/// kG: `k` disjoint copies of `g`.
pub fn k_copies(k: usize, g: &Graph) -> Result<Graph> {
    if k == 0 {
        return Err(Error::InvalidSize("k must be >= 1".into()));
    }
    let n = k * g.n;
    if n > MAX_VERTICES {
        return Err(Error::InvalidSize(format!(
            "{k} copies of order {} exceed {MAX_VERTICES}",
            g.n
        )));
    }
    let mut out = g.clone();
    for _ in 1..k {
        out = disjoint_union(&out, g)?;
    }
    Ok(out)
}

/// G[S]: the subgraph induced by `s`, labels compacted preserving order.
pub fn induced_subgraph(g: &Graph, s: VertexSet) -> Result<Graph> {
    if s.is_empty() {
        return Err(Error::InvalidArgument("induced subgraph of empty set".into()));
    }
    if !s.is_subset_of(g.vertex_set()) {
        return Err(Error::InvalidArgument(format!(
            "vertex set {s:?} not within 0..{}",
            g.n
        )));
    }
    let old: Vec<usize> = s.to_vec();
    let n = old.len();
    let mut adj = vec![0u64; n];
    for (new_u, &u) in old.iter().enumerate() {
        for (new_v, &v) in old.iter().enumerate() {
            if g.adj[u] & bit(v) != 0 {
                adj[new_u] |= bit(new_v);
            }
        }
    }
    Ok(Graph { n, adj })
}

/// Whether `s` induces a complete subgraph.
pub fn is_clique(g: &Graph, s: VertexSet) -> bool {
    for v in s.iter() {
        let rest = s.0 & !bit(v);
        if g.adj[v] & rest != rest {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_sizes() {
        let k1 = complete_graph(1).unwrap();
        assert_eq!(k1.n(), 1);
        assert_eq!(k1.edge_count(), 0);

        let k5 = complete_graph(5).unwrap();
        assert_eq!(k5.edge_count(), 10);
        for v in 0..5 {
            assert_eq!(k5.degree(v), 4);
        }
        k5.check_invariants().unwrap();
    }

    #[test]
    fn complete_graph_rejects_bad_sizes() {
        assert!(matches!(complete_graph(0), Err(Error::InvalidSize(_))));
        assert!(matches!(complete_graph(65), Err(Error::InvalidSize(_))));
        assert!(complete_graph(64).is_ok());
    }

    #[test]
    fn union_basics() {
        let k1 = complete_graph(1).unwrap();
        let two = disjoint_union(&k1, &k1).unwrap();
        assert_eq!(two.n(), 2);
        assert_eq!(two.edge_count(), 0);

        let k2 = complete_graph(2).unwrap();
        let g = disjoint_union(&k2, &k2).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.components().len(), 2);
    }

    #[test]
    fn k_copies_basics() {
        let k2 = complete_graph(2).unwrap();
        let g = k_copies(3, &k2).unwrap();
        assert_eq!(g.n(), 6);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.components().len(), 3);

        let k3 = complete_graph(3).unwrap();
        assert_eq!(k_copies(1, &k3).unwrap(), k3);
        let two_k3 = k_copies(2, &k3).unwrap();
        assert_eq!(two_k3.n(), 6);
        assert_eq!(two_k3.edge_count(), 6);
        assert_eq!(two_k3.components().len(), 2);
    }

    #[test]
    fn join_basics() {
        let k1 = complete_graph(1).unwrap();
        assert_eq!(join(&k1, &k1).unwrap(), complete_graph(2).unwrap());

        // 3K2 ∨ 2K1: both right-side vertices see all six left vertices.
        let left = k_copies(3, &complete_graph(2).unwrap()).unwrap();
        let right = Graph::empty(2).unwrap();
        let g = join(&left, &right).unwrap();
        assert_eq!(g.n(), 8);
        assert_eq!(g.degree(6), 6);
        assert_eq!(g.degree(7), 6);
        g.check_invariants().unwrap();

        // C4 ∨ K1 is the wheel on five vertices.
        let wheel = join(&cycle_graph(4).unwrap(), &k1).unwrap();
        assert_eq!(wheel.n(), 5);
        assert_eq!(wheel.edge_count(), 8);
    }

    #[test]
    fn join_edge_count_formula() {
        let g = cycle_graph(5).unwrap();
        let h = path_graph(4).unwrap();
        let j = join(&g, &h).unwrap();
        assert_eq!(j.edge_count(), g.edge_count() + h.edge_count() + 5 * 4);
    }

    #[test]
    fn union_overflow_rejected() {
        let k40 = complete_graph(40).unwrap();
        assert!(matches!(
            disjoint_union(&k40, &k40),
            Err(Error::InvalidSize(_))
        ));
        assert!(matches!(join(&k40, &k40), Err(Error::InvalidSize(_))));
        assert!(matches!(k_copies(2, &k40), Err(Error::InvalidSize(_))));
    }

    #[test]
    fn induced_subgraph_basics() {
        let k5 = complete_graph(5).unwrap();
        let s = VertexSet::from_iter([0, 2, 4]);
        assert_eq!(induced_subgraph(&k5, s).unwrap(), complete_graph(3).unwrap());

        // Three consecutive vertices of C5 induce a path.
        let c5 = cycle_graph(5).unwrap();
        let p = induced_subgraph(&c5, VertexSet::from_iter([0, 1, 2])).unwrap();
        assert_eq!(p, path_graph(3).unwrap());

        assert!(matches!(
            induced_subgraph(&k5, VertexSet::EMPTY),
            Err(Error::InvalidArgument(_))
        ));

        // Inducing on the whole vertex set is the identity.
        assert_eq!(induced_subgraph(&c5, c5.vertex_set()).unwrap(), c5);
    }

    #[test]
    fn components_order() {
        let k5 = complete_graph(5).unwrap();
        assert_eq!(k5.components().len(), 1);

        let g = k_copies(3, &complete_graph(2).unwrap()).unwrap();
        let comps = g.components();
        assert_eq!(comps.len(), 3);
        assert_eq!(comps[0], VertexSet::from_iter([0, 1]));
        assert_eq!(comps[1], VertexSet::from_iter([2, 3]));
        assert_eq!(comps[2], VertexSet::from_iter([4, 5]));
    }

    #[test]
    fn degrees_and_edges() {
        let c6 = cycle_graph(6).unwrap();
        for v in 0..6 {
            assert_eq!(c6.degree(v), 2);
        }
        assert_eq!(c6.edges().len(), 6);
        assert!(c6.has_edge(0, 5));
        assert!(!c6.has_edge(0, 3));
    }

    #[test]
    #[should_panic(expected = "out of range")]
    fn degree_out_of_range_panics() {
        let k3 = complete_graph(3).unwrap();
        let _ = k3.degree(3);
    }

    #[test]
    fn relabel_preserves_structure() {
        let g = path_graph(4).unwrap();
        let h = g.relabel(&[3, 2, 1, 0]);
        assert_eq!(h.edge_count(), 3);
        assert!(h.has_edge(3, 2) && h.has_edge(2, 1) && h.has_edge(1, 0));
        h.check_invariants().unwrap();
    }
}
