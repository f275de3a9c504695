//! Exact independence number and vertex connectivity, with witnesses.

use crate::graph::{bit, low_bits, Graph, VertexSet};

/// A maximum independent set together with its size.
///
/// The set is the lexicographically least maximum independent set under the
/// vertex order, so outputs are reproducible across runs and platforms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependenceWitness {
    pub size: usize,
    pub set: VertexSet,
}

/// κ(G) together with a minimum vertex cut.
///
/// The cut is empty for complete graphs (κ(K_n) = n−1 by convention) and for
/// disconnected graphs (κ = 0); otherwise it is the lexicographically least
/// minimum cut.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectivityWitness {
    pub kappa: usize,
    pub cut: VertexSet,
}

/// True iff no edge of `g` has both ends in `s`.
pub fn is_independent_set(g: &Graph, s: VertexSet) -> bool {
    for v in s.iter() {
        if g.row(v) & s.0 != 0 {
            return false;
        }
    }
    true
}

/// Greedy clique cover of `mask`: an upper bound on α within `mask`.
fn clique_cover_bound(g: &Graph, mut mask: u64) -> usize {
    let mut cliques = 0;
    while mask != 0 {
        let v = mask.trailing_zeros() as usize;
        mask &= mask - 1;
        let mut candidates = g.row(v) & mask;
        while candidates != 0 {
            let u = candidates.trailing_zeros() as usize;
            mask &= !bit(u);
            candidates &= g.row(u) & !bit(u);
            candidates &= mask;
        }
        cliques += 1;
    }
    cliques
}

fn greedy_independent(g: &Graph, mut mask: u64) -> usize {
    let mut size = 0;
    while mask != 0 {
        // Minimum remaining degree first.
        let mut best = mask.trailing_zeros() as usize;
        let mut best_deg = u32::MAX;
        let mut t = mask;
        while t != 0 {
            let v = t.trailing_zeros() as usize;
            t &= t - 1;
            let d = (g.row(v) & mask).count_ones();
            if d < best_deg {
                best_deg = d;
                best = v;
                if d == 0 {
                    break;
                }
            }
        }
        size += 1;
        mask &= !(g.row(best) | bit(best));
    }
    size
}

fn alpha_branch(g: &Graph, mask: u64, count: usize, best: &mut usize) {
    if count > *best {
        *best = count;
    }
    if mask == 0 {
        return;
    }
    if count + clique_cover_bound(g, mask) <= *best {
        return;
    }
    // Branch on a maximum-degree vertex within the mask.
    let mut pivot = mask.trailing_zeros() as usize;
    let mut pivot_deg = 0u32;
    let mut t = mask;
    while t != 0 {
        let v = t.trailing_zeros() as usize;
        t &= t - 1;
        let d = (g.row(v) & mask).count_ones();
        if d > pivot_deg {
            pivot_deg = d;
            pivot = v;
        }
    }
    if pivot_deg == 0 {
        // The mask is already independent.
        let total = count + mask.count_ones() as usize;
        if total > *best {
            *best = total;
        }
        return;
    }
    // Include the pivot (delete its closed neighborhood), then exclude it.
    alpha_branch(g, mask & !(g.row(pivot) | bit(pivot)), count + 1, best);
    alpha_branch(g, mask & !bit(pivot), count, best);
}

/// Exact α of the subgraph induced by `mask`.
pub(crate) fn alpha_of_mask(g: &Graph, mask: u64) -> usize {
    let mut best = greedy_independent(g, mask);
    alpha_branch(g, mask, 0, &mut best);
    best
}

/// Exact independence number α(G).
pub fn alpha(g: &Graph) -> usize {
    alpha_of_mask(g, g.vertex_set().0)
}

/// Exact α(G) plus the lexicographically least maximum independent set.
pub fn independence_number(g: &Graph) -> IndependenceWitness {
    let size = alpha(g);
    let mut chosen = VertexSet::EMPTY;
    let mut avail = g.vertex_set().0;
    let mut need = size;
    for v in 0..g.n() {
        if avail & bit(v) == 0 {
            continue;
        }
        let after_include = avail & !(g.row(v) | bit(v));
        if alpha_of_mask(g, after_include) == need - 1 {
            chosen.insert(v);
            avail = after_include;
            need -= 1;
            if need == 0 {
                break;
            }
        } else {
            avail &= !bit(v);
        }
    }
    debug_assert_eq!(chosen.len(), size);
    debug_assert!(is_independent_set(g, chosen));
    IndependenceWitness { size, set: chosen }
}

/// Max-flow state on the vertex-split digraph: vertex v becomes arc
/// `in(v)=v -> out(v)=v+n` of capacity 1; edge {u,v} becomes arcs
/// `out(u)->in(v)` and `out(v)->in(u)` of large capacity.
struct SplitFlow {
    n: usize,
    cap: Vec<i32>,
    parent: Vec<usize>,
}

const INF: i32 = 1 << 20;

impl SplitFlow {
    fn new(n: usize) -> Self {
        let m = 2 * n;
        SplitFlow {
            n,
            cap: vec![0i32; m * m],
            parent: vec![usize::MAX; m],
        }
    }

    /// Maximum number of internally vertex-disjoint s–t paths, stopping early
    /// once the flow reaches `cutoff`.
    fn max_flow(&mut self, g: &Graph, s: usize, t: usize, cutoff: i32) -> i32 {
        let n = self.n;
        let m = 2 * n;
        // Rebuild residual capacities from scratch; the matrix is tiny.
        self.cap.iter_mut().for_each(|c| *c = 0);
        for v in 0..n {
            self.cap[v * m + (v + n)] = 1;
            let mut row = g.row(v);
            while row != 0 {
                let u = row.trailing_zeros() as usize;
                row &= row - 1;
                self.cap[(v + n) * m + u] = INF;
            }
        }
        let src = s + n; // out(s)
        let dst = t; // in(t)
        self.cap[s * m + (s + n)] = INF;
        self.cap[t * m + (t + n)] = INF;
        let mut flow = 0;
        while flow < cutoff {
            // BFS for an augmenting path.
            self.parent.iter_mut().for_each(|p| *p = usize::MAX);
            self.parent[src] = src;
            let mut queue = std::collections::VecDeque::new();
            queue.push_back(src);
            while let Some(x) = queue.pop_front() {
                if x == dst {
                    break;
                }
                for y in 0..m {
                    if self.parent[y] == usize::MAX && self.cap[x * m + y] > 0 {
                        self.parent[y] = x;
                        queue.push_back(y);
                    }
                }
            }
            if self.parent[dst] == usize::MAX {
                break;
            }
            let mut bottleneck = INF;
            let mut y = dst;
            while y != src {
                let x = self.parent[y];
                bottleneck = bottleneck.min(self.cap[x * m + y]);
                y = x;
            }
            let mut y = dst;
            while y != src {
                let x = self.parent[y];
                self.cap[x * m + y] -= bottleneck;
                self.cap[y * m + x] += bottleneck;
                y = x;
            }
            flow += bottleneck;
        }
        flow
    }
}

fn is_complete(g: &Graph) -> bool {
    let n = g.n();
    g.edge_count() == n * (n - 1) / 2
}

/// Minimum size of a disconnecting vertex set, or `None` when none exists
/// (complete graphs, including K_1).
fn min_cut_size(g: &Graph) -> Option<usize> {
    if is_complete(g) {
        return None;
    }
    if !g.is_connected() {
        return Some(0);
    }
    let n = g.n();
    // δ is an upper bound: the neighborhood of a min-degree vertex is a cut.
    let mut best = g.min_degree() as i32;
    let mut flow = SplitFlow::new(n);
    for s in 0..n {
        for t in (s + 1)..n {
            if g.has_edge(s, t) {
                continue;
            }
            let f = flow.max_flow(g, s, t, best);
            if f < best {
                best = f;
            }
        }
    }
    Some(best as usize)
}

/// Exact κ(G), without a cut witness.
pub fn kappa(g: &Graph) -> usize {
    match min_cut_size(g) {
        None => g.n() - 1,
        Some(k) => k,
    }
}

/// Exact κ(G) plus a minimum vertex cut (lexicographically least; empty for
/// complete or disconnected graphs).
pub fn vertex_connectivity(g: &Graph) -> ConnectivityWitness {
    let kappa_value = match min_cut_size(g) {
        None => {
            return ConnectivityWitness {
                kappa: g.n() - 1,
                cut: VertexSet::EMPTY,
            }
        }
        Some(k) => k,
    };
    if kappa_value == 0 {
        return ConnectivityWitness {
            kappa: 0,
            cut: VertexSet::EMPTY,
        };
    }
    // Greedy lexicographic completion: keep v iff some minimum cut extends
    // the chosen prefix through v.
    let mut chosen = VertexSet::EMPTY;
    for v in 0..g.n() {
        if chosen.contains(v) {
            continue;
        }
        let mut trial = chosen;
        trial.insert(v);
        let rest = g
            .delete_vertices(trial)
            .expect("cut never removes all vertices");
        let completable = match min_cut_size(&rest) {
            None => false,
            Some(k) => k + trial.len() <= kappa_value,
        };
        if completable {
            chosen = trial;
            if chosen.len() == kappa_value {
                break;
            }
        }
    }
    debug_assert_eq!(chosen.len(), kappa_value);
    ConnectivityWitness {
        kappa: kappa_value,
        cut: chosen,
    }
}

/// Brute-force helpers shared by oracle tests; exponential, n <= ~20 only.
pub mod oracle {
    use super::*;

    /// α by sweeping all subsets of the vertex set.
    pub fn alpha_subset_sweep(g: &Graph) -> usize {
        let n = g.n();
        assert!(n <= 24, "subset sweep limited to small n");
        let mut best = 0usize;
        for mask in 0u64..(1u64 << n) {
            if mask.count_ones() as usize > best && is_independent_set(g, VertexSet(mask)) {
                best = mask.count_ones() as usize;
            }
        }
        best
    }

    /// κ by trying all vertex subsets in increasing size order.
    pub fn kappa_brute_force(g: &Graph) -> usize {
        let n = g.n();
        assert!(n <= 16, "brute-force cut search limited to small n");
        if !g.is_connected() {
            return 0;
        }
        for size in 0..n.saturating_sub(1) {
            for mask in 0u64..(1u64 << n) {
                if mask.count_ones() as usize != size {
                    continue;
                }
                let keep = low_bits(n) & !mask;
                if keep.count_ones() >= 2 && !g.is_connected_within(keep) {
                    return size;
                }
            }
        }
        n - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, join, k_copies, Graph};

    fn sharpness_like(k: usize) -> Graph {
        let left = k_copies(k + 1, &complete_graph(2).unwrap()).unwrap();
        let right = Graph::empty(k).unwrap();
        join(&left, &right).unwrap()
    }

    fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        Graph::from_edges(10, &edges).unwrap()
    }

    #[test]
    fn alpha_basics() {
        assert_eq!(independence_number(&complete_graph(5).unwrap()).size, 1);
        assert_eq!(independence_number(&cycle_graph(5).unwrap()).size, 2);
        assert_eq!(independence_number(&sharpness_like(2)).size, 3);
    }

    #[test]
    fn alpha_petersen_matches_sweep() {
        let p = petersen();
        let w = independence_number(&p);
        assert_eq!(w.size, 4);
        assert_eq!(oracle::alpha_subset_sweep(&p), 4);
        assert!(is_independent_set(&p, w.set));
        assert_eq!(w.set.len(), 4);
    }

    #[test]
    fn alpha_witness_is_lex_least() {
        // C5: maximum independent sets of size 2; lexicographically least is {0, 2}.
        let w = independence_number(&cycle_graph(5).unwrap());
        assert_eq!(w.set.to_vec(), vec![0, 2]);
    }

    #[test]
    fn independent_set_checks() {
        let k2 = complete_graph(2).unwrap();
        assert!(is_independent_set(&k2, VertexSet::singleton(0)));
        assert!(!is_independent_set(&k2, VertexSet::from_iter([0, 1])));
    }

    #[test]
    fn kappa_basics() {
        let w = vertex_connectivity(&complete_graph(6).unwrap());
        assert_eq!(w.kappa, 5);
        assert!(w.cut.is_empty());

        assert_eq!(vertex_connectivity(&cycle_graph(7).unwrap()).kappa, 2);
        assert_eq!(vertex_connectivity(&sharpness_like(3)).kappa, 3);
    }

    #[test]
    fn kappa_one_vertex_and_disconnected() {
        assert_eq!(vertex_connectivity(&complete_graph(1).unwrap()).kappa, 0);
        let two = k_copies(2, &complete_graph(3).unwrap()).unwrap();
        let w = vertex_connectivity(&two);
        assert_eq!(w.kappa, 0);
        assert!(w.cut.is_empty());
    }

    #[test]
    fn kappa_g3_cut_vertex() {
        // K6 plus K2 = {6,7}, attached by the single edge 0–6.
        let mut g = Graph::from_edges(8, &[(6, 7), (0, 6)]).unwrap();
        for u in 0..6 {
            for v in (u + 1)..6 {
                g.add_edge_mut(u, v).unwrap();
            }
        }
        let w = vertex_connectivity(&g);
        assert_eq!(w.kappa, 1);
        assert_eq!(w.cut.to_vec(), vec![0]);
        assert_eq!(oracle::kappa_brute_force(&g), 1);
    }

    #[test]
    fn cut_witness_disconnects() {
        for g in [
            cycle_graph(7).unwrap(),
            sharpness_like(2),
            petersen(),
            Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 1)]).unwrap(),
        ] {
            let w = vertex_connectivity(&g);
            assert_eq!(w.kappa, oracle::kappa_brute_force(&g));
            if w.kappa > 0 {
                assert_eq!(w.cut.len(), w.kappa);
                let rest = g.delete_vertices(w.cut).unwrap();
                assert!(rest.components().len() >= 2);
            }
        }
    }

    #[test]
    fn kappa_le_min_degree() {
        let p = petersen();
        assert!(kappa(&p) <= p.min_degree());
        assert_eq!(kappa(&p), 3);
    }
}
