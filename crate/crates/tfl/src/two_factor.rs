//! Exact search for 2-factors with a bounded (or exact) number of
//! components, plus certificate validation.
//!
//! A 2-factor is a spanning set of vertex-disjoint cycles. The search builds
//! it cycle by cycle: each cycle starts at the least vertex not yet covered,
//! so certificates come out canonically sorted.

use crate::cycles::{CycleSeq, SearchBudget, Ticker};
use crate::error::{Error, Result};
use crate::graph::{bit, Graph, VertexSet};

/// Vertex-disjoint cycles covering V(G), each of length >= 3; every vertex
/// has degree exactly 2 in the union.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoFactorCertificate {
    cycles: Vec<CycleSeq>,
}

impl TwoFactorCertificate {
    /// Wraps cycles as a certificate for `g`, validating all invariants.
    pub fn new(g: &Graph, mut cycles: Vec<CycleSeq>) -> Result<Self> {
        let mut covered = VertexSet::EMPTY;
        for c in &cycles {
            // Re-validate against this graph; the cycle may come from anywhere.
            CycleSeq::new(g, c.vertices().to_vec())?;
            let vs = c.vertex_set();
            if covered.0 & vs.0 != 0 {
                return Err(Error::InvalidArgument(
                    "certificate cycles are not vertex-disjoint".into(),
                ));
            }
            covered.0 |= vs.0;
        }
        if covered != g.vertex_set() {
            return Err(Error::InvalidArgument(
                "certificate cycles do not cover every vertex".into(),
            ));
        }
        cycles.sort_by(|a, b| a.vertices().cmp(b.vertices()));
        Ok(TwoFactorCertificate { cycles })
    }

    pub fn cycles(&self) -> &[CycleSeq] {
        &self.cycles
    }

    /// Number of components ω of the 2-factor.
    pub fn component_count(&self) -> usize {
        self.cycles.len()
    }
}

impl std::fmt::Display for TwoFactorCertificate {
    /// One line per cycle, space-separated vertex indices, canonical order.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, c) in self.cycles.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// True iff `c` is a valid 2-factor certificate for `g`.
pub fn validate_certificate(g: &Graph, c: &TwoFactorCertificate) -> bool {
    TwoFactorCertificate::new(g, c.cycles.clone()).is_ok()
}

#[derive(Clone, Copy)]
enum ComponentGoal {
    AtMost(usize),
    Exactly(usize),
}

struct FactorSearch<'a, 'b> {
    g: &'a Graph,
    goal: ComponentGoal,
    ticker: &'a mut Ticker<'b>,
}

impl FactorSearch<'_, '_> {
    fn feasible(&self, uncovered: u64, closed: usize) -> bool {
        let left = uncovered.count_ones() as usize;
        match self.goal {
            ComponentGoal::AtMost(max) => {
                if left > 0 && closed >= max {
                    return false;
                }
            }
            ComponentGoal::Exactly(exact) => {
                if left == 0 {
                    return closed == exact;
                }
                if closed >= exact {
                    return false;
                }
                // Every further cycle needs at least 3 vertices.
                if left < 3 * (exact - closed) {
                    return false;
                }
            }
        }
        true
    }

    fn search(&mut self, uncovered: u64, closed: usize) -> Result<Option<Vec<CycleSeq>>> {
        if !self.feasible(uncovered, closed) {
            return Ok(None);
        }
        if uncovered == 0 {
            return Ok(Some(Vec::new()));
        }
        // Each remaining component hosts at least one cycle and must have
        // at least 3 vertices with internal degree >= 2.
        let mut comp_count = 0usize;
        let mut rest = uncovered;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            let comp = component_within(self.g, v, uncovered);
            if comp.count_ones() < 3 {
                return Ok(None);
            }
            rest &= !comp;
            comp_count += 1;
        }
        let budget_left = match self.goal {
            ComponentGoal::AtMost(max) => max - closed,
            ComponentGoal::Exactly(exact) => exact - closed,
        };
        if comp_count > budget_left {
            return Ok(None);
        }
        let mut t = uncovered;
        while t != 0 {
            let v = t.trailing_zeros() as usize;
            t &= t - 1;
            if (self.g.row(v) & uncovered).count_ones() < 2 {
                return Ok(None);
            }
        }
        let pivot = uncovered.trailing_zeros() as usize;
        let mut path = vec![pivot];
        self.extend_cycle(&mut path, bit(pivot), uncovered, closed)
    }

    /// Chooses the cycle of the least uncovered vertex edge by edge.
    fn extend_cycle(
        &mut self,
        path: &mut Vec<usize>,
        used: u64,
        uncovered: u64,
        closed: usize,
    ) -> Result<Option<Vec<CycleSeq>>> {
        self.ticker.tick()?;
        let pivot = path[0];
        let end = *path.last().unwrap();
        if path.len() >= 3 && self.g.row(end) & bit(pivot) != 0 && path[1] < end {
            if let Some(mut rest) = self.search(uncovered & !used, closed + 1)? {
                rest.push(CycleSeq::new(self.g, path.clone()).expect("search builds valid cycles"));
                return Ok(Some(rest));
            }
        }
        let avail = uncovered & !used;
        // Vertices outside the current path still need two slots among the
        // unused vertices, the current end, and the pivot's closing edge.
        let domain = avail | bit(end) | bit(pivot);
        let mut t = avail;
        while t != 0 {
            let w = t.trailing_zeros() as usize;
            t &= t - 1;
            if (self.g.row(w) & domain).count_ones() < 2 {
                return Ok(None);
            }
        }
        let mut cands = self.g.row(end) & avail;
        while cands != 0 {
            let v = cands.trailing_zeros() as usize;
            cands &= cands - 1;
            path.push(v);
            let found = self.extend_cycle(path, used | bit(v), uncovered, closed)?;
            path.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }
}

fn component_within(g: &Graph, start: usize, within: u64) -> u64 {
    let mut comp = bit(start);
    loop {
        let mut grown = comp;
        let mut frontier = comp;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            grown |= g.row(v) & within;
        }
        if grown == comp {
            return comp;
        }
        comp = grown;
    }
}

fn run_search(g: &Graph, goal: ComponentGoal, budget: &SearchBudget) -> Result<Option<TwoFactorCertificate>> {
    if g.n() < 3 {
        return Err(Error::InvalidSize(format!(
            "2-factors need n >= 3, got n={}",
            g.n()
        )));
    }
    if g.min_degree() < 2 {
        return Ok(None);
    }
    let mut ticker = Ticker::new(budget);
    let mut search = FactorSearch {
        g,
        goal,
        ticker: &mut ticker,
    };
    match search.search(g.vertex_set().0, 0)? {
        None => Ok(None),
        Some(mut cycles) => {
            cycles.reverse();
            Ok(Some(TwoFactorCertificate::new(g, cycles)?))
        }
    }
}

/// A 2-factor with at most `max_components` cycles, or `None` (exact).
pub fn find_two_factor(g: &Graph, max_components: usize) -> Result<Option<TwoFactorCertificate>> {
    find_two_factor_with(g, max_components, &SearchBudget::unlimited())
}

pub fn find_two_factor_with(
    g: &Graph,
    max_components: usize,
    budget: &SearchBudget,
) -> Result<Option<TwoFactorCertificate>> {
    if max_components == 0 {
        return Err(Error::InvalidArgument("max_components must be >= 1".into()));
    }
    run_search(g, ComponentGoal::AtMost(max_components), budget)
}

/// A 2-factor with exactly `exactly` cycles, or `None` (exact).
pub fn find_two_factor_exact_components(
    g: &Graph,
    exactly: usize,
) -> Result<Option<TwoFactorCertificate>> {
    find_two_factor_exact_components_with(g, exactly, &SearchBudget::unlimited())
}

pub fn find_two_factor_exact_components_with(
    g: &Graph,
    exactly: usize,
    budget: &SearchBudget,
) -> Result<Option<TwoFactorCertificate>> {
    if exactly == 0 {
        return Err(Error::InvalidArgument("component count must be >= 1".into()));
    }
    run_search(g, ComponentGoal::Exactly(exactly), budget)
}

/// The minimum ω over all 2-factors of `g`, or `None` when `g` has no
/// 2-factor at all.
pub fn min_two_factor_components_with(
    g: &Graph,
    budget: &SearchBudget,
) -> Result<Option<usize>> {
    if g.n() < 3 || g.min_degree() < 2 {
        return Ok(None);
    }
    for c in 1..=(g.n() / 3) {
        if find_two_factor_exact_components_with(g, c, budget)?.is_some() {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// Brute-force oracle: filters every edge subset of size n for 2-regularity.
pub mod oracle {
    use super::*;

    /// Gosper's hack: next integer with the same popcount.
    fn next_subset(x: u64) -> u64 {
        let c = x & x.wrapping_neg();
        let r = x + c;
        (((r ^ x) >> 2) / c) | r
    }

    /// The minimum component count over all 2-regular spanning subgraphs,
    /// found by sweeping all C(|E|, n) edge subsets.
    pub fn min_two_factor_components_naive(g: &Graph) -> Option<usize> {
        let edges = g.edges();
        let m = edges.len();
        let n = g.n();
        assert!(m <= 30, "naive sweep limited to small edge counts");
        if m < n || n < 3 {
            return None;
        }
        let mut best: Option<usize> = None;
        let mut subset: u64 = (1u64 << n) - 1;
        let limit: u64 = 1u64 << m;
        while subset < limit {
            let mut deg = [0u8; 64];
            for (i, &(u, v)) in edges.iter().enumerate() {
                if subset & (1u64 << i) != 0 {
                    deg[u] += 1;
                    deg[v] += 1;
                }
            }
            if (0..n).all(|v| deg[v] == 2) {
                // 2-regular spanning subgraph: count its cycles.
                let mut sub = Graph::empty(n).unwrap();
                for (i, &(u, v)) in edges.iter().enumerate() {
                    if subset & (1u64 << i) != 0 {
                        sub.add_edge_mut(u, v).unwrap();
                    }
                }
                let comp = sub.components().len();
                best = Some(best.map_or(comp, |b: usize| b.min(comp)));
                if best == Some(1) {
                    return best;
                }
            }
            subset = next_subset(subset);
        }
        best
    }

    pub fn two_factor_exists_naive(g: &Graph, max_components: usize) -> bool {
        matches!(min_two_factor_components_naive(g), Some(c) if c <= max_components)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, join, k_copies, Graph};

    fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        Graph::from_edges(10, &edges).unwrap()
    }

    fn sharpness_like(k: usize) -> Graph {
        let left = k_copies(k + 1, &complete_graph(2).unwrap()).unwrap();
        join(&left, &Graph::empty(k).unwrap()).unwrap()
    }

    /// G1(8): K6 plus K2 = {6,7}, with 6 attached to clique vertices 0 and 1.
    fn g1_8() -> Graph {
        let mut g = Graph::from_edges(8, &[(6, 7), (0, 6), (1, 6)]).unwrap();
        for u in 0..6 {
            for v in (u + 1)..6 {
                g.add_edge_mut(u, v).unwrap();
            }
        }
        g
    }

    #[test]
    fn cycle_itself_is_its_two_factor() {
        let c6 = cycle_graph(6).unwrap();
        let f = find_two_factor(&c6, 1).unwrap().unwrap();
        assert_eq!(f.component_count(), 1);
        assert_eq!(f.cycles()[0].len(), 6);
        assert!(validate_certificate(&c6, &f));
    }

    #[test]
    fn petersen_two_five_cycles() {
        let p = petersen();
        assert!(find_two_factor(&p, 1).unwrap().is_none());
        let f = find_two_factor(&p, 2).unwrap().unwrap();
        assert_eq!(f.component_count(), 2);
        assert!(f.cycles().iter().all(|c| c.len() == 5));
        assert!(validate_certificate(&p, &f));
    }

    #[test]
    fn sharpness_graph_has_no_small_two_factor() {
        let g = sharpness_like(2);
        assert!(find_two_factor(&g, 2).unwrap().is_none());
        // At k=1 the 5-vertex join already fails.
        let g= sharpness_like(1);
        assert!(find_two_factor(&g, 2).unwrap().is_none());
    }

    #[test]
    fn degree_one_vertex_blocks_everything() {
        let g = g1_8();
        assert!(find_two_factor(&g, 2).unwrap().is_none());
        assert!(find_two_factor(&g, 8).unwrap().is_none());
    }

    #[test]
    fn exact_component_counts() {
        let k6 = complete_graph(6).unwrap();
        let f = find_two_factor_exact_components(&k6, 2).unwrap().unwrap();
        assert_eq!(f.component_count(), 2);
        assert!(f.cycles().iter().all(|c| c.len() == 3));

        // C7's only 2-factor is itself.
        let c7 = cycle_graph(7).unwrap();
        assert!(find_two_factor_exact_components(&c7, 2).unwrap().is_none());
        assert!(find_two_factor_exact_components(&c7, 1).unwrap().is_some());

        // K7 splits into a triangle and a 4-cycle.
        let k7 = complete_graph(7).unwrap();
        let f = find_two_factor_exact_components(&k7, 2).unwrap().unwrap();
        let mut lens: Vec<usize> = f.cycles().iter().map(|c| c.len()).collect();
        lens.sort();
        assert_eq!(lens, vec![3, 4]);
    }

    #[test]
    fn certificate_validation_rejects_bad_input() {
        let k6 = complete_graph(6).unwrap();
        let t1 = CycleSeq::new(&k6, vec![0, 1, 2]).unwrap();
        let t2 = CycleSeq::new(&k6, vec![3, 4, 5]).unwrap();
        let shared = CycleSeq::new(&k6, vec![0, 4, 5]).unwrap();
        assert!(TwoFactorCertificate::new(&k6, vec![t1.clone(), t2]).is_ok());
        // Sharing vertex 0 is not disjoint.
        assert!(TwoFactorCertificate::new(&k6, vec![t1.clone(), shared]).is_err());
        // Missing coverage.
        assert!(TwoFactorCertificate::new(&k6, vec![t1]).is_err());
    }

    #[test]
    fn hamiltonian_wrap_as_certificate() {
        let k5 = complete_graph(5).unwrap();
        let ham = crate::cycles::hamiltonian_cycle(&k5).unwrap().unwrap();
        let cert = TwoFactorCertificate::new(&k5, vec![ham]).unwrap();
        assert!(validate_certificate(&k5, &cert));
    }

    #[test]
    fn monotone_in_max_components() {
        for g in [petersen(), complete_graph(7).unwrap(), cycle_graph(9).unwrap()] {
            let mut prev = false;
            for c in 1..=3 {
                let found = find_two_factor(&g, c).unwrap().is_some();
                assert!(!prev || found, "monotonicity violated at c={c}");
                prev = found;
            }
        }
    }

    #[test]
    fn agrees_with_naive_oracle_on_samples() {
        let graphs = [
            petersen(),
            complete_graph(6).unwrap(),
            cycle_graph(7).unwrap(),
            sharpness_like(1),
            g1_8(),
            Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap(),
        ];
        for g in graphs {
            let naive = oracle::min_two_factor_components_naive(&g);
            let fast = min_two_factor_components_with(&g, &SearchBudget::unlimited()).unwrap();
            assert_eq!(naive, fast, "oracle mismatch on {g:?}");
        }
    }

    #[test]
    fn serialization_is_line_per_cycle() {
        let k6 = complete_graph(6).unwrap();
        let f = find_two_factor_exact_components(&k6, 2).unwrap().unwrap();
        let text = f.to_string();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].starts_with('0'));
    }

    #[test]
    fn rejects_small_or_silly_input() {
        let k2 = complete_graph(2).unwrap();
        assert!(matches!(
            find_two_factor(&k2, 1),
            Err(Error::InvalidSize(_))
        ));
        let k5 = complete_graph(5).unwrap();
        assert!(matches!(
            find_two_factor(&k5, 0),
            Err(Error::InvalidArgument(_))
        ));
    }
}
