//! Exact cycle and path machinery: longest cycles, Hamiltonicity,
//! traceability, Hamilton-connectedness, and small cycle covers.
//!
//! All searches are exhaustive backtracking over bitset state. A search
//! either proves its answer or reports `Error::BudgetExceeded`; "none" is
//! only ever returned from an exhausted space.

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{bit, Graph, VertexSet};

/// Node budget and cooperative cancellation for long searches.
#[derive(Clone, Default)]
pub struct SearchBudget {
    node_limit: Option<u64>,
    cancel: Option<Arc<AtomicBool>>,
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        SearchBudget::default()
    }

    pub fn nodes(limit: u64) -> Self {
        SearchBudget {
            node_limit: Some(limit),
            cancel: None,
        }
    }

    /// Attach a cancellation flag; searches poll it between branch expansions.
    pub fn with_cancel(mut self, flag: Arc<AtomicBool>) -> Self {
        self.cancel = Some(flag);
        self
    }
}

pub(crate) struct Ticker<'a> {
    used: u64,
    limit: u64,
    cancel: Option<&'a AtomicBool>,
}

impl<'a> Ticker<'a> {
    pub(crate) fn new(budget: &'a SearchBudget) -> Self {
        Ticker {
            used: 0,
            limit: budget.node_limit.unwrap_or(u64::MAX),
            cancel: budget.cancel.as_deref(),
        }
    }

    #[inline]
    pub(crate) fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            return Err(Error::BudgetExceeded);
        }
        if let Some(flag) = self.cancel {
            if flag.load(Ordering::Relaxed) {
                return Err(Error::BudgetExceeded);
            }
        }
        Ok(())
    }
}

/// A cycle stored in canonical form: rotated so the least vertex comes first,
/// oriented so the second vertex is smaller than the last.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycleSeq {
    vertices: Vec<usize>,
}

impl CycleSeq {
    /// Validates `vertices` as a cycle of `g` and stores it canonically.
    pub fn new(g: &Graph, vertices: Vec<usize>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidArgument(format!(
                "cycle must have at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        let mut seen = VertexSet::EMPTY;
        for &v in &vertices {
            if v >= g.n() {
                return Err(Error::InvalidArgument(format!("vertex {v} out of range")));
            }
            if seen.contains(v) {
                return Err(Error::InvalidArgument(format!("repeated vertex {v}")));
            }
            seen.insert(v);
        }
        for i in 0..vertices.len() {
            let u = vertices[i];
            let v = vertices[(i + 1) % vertices.len()];
            if !g.has_edge(u, v) {
                return Err(Error::InvalidArgument(format!(
                    "missing cycle edge ({u},{v})"
                )));
            }
        }
        Ok(CycleSeq {
            vertices: canonical_rotation(vertices),
        })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::from_iter(self.vertices.iter().copied())
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertex_set().contains(v)
    }
}

impl std::fmt::Debug for CycleSeq {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Cycle{:?}", self.vertices)
    }
}

impl std::fmt::Display for CycleSeq {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let words: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", words.join(" "))
    }
}

fn canonical_rotation(mut vs: Vec<usize>) -> Vec<usize> {
    let min_pos = vs
        .iter()
        .enumerate()
        .min_by_key(|&(_, v)| *v)
        .map(|(i, _)| i)
        .unwrap();
    vs.rotate_left(min_pos);
    if vs.len() >= 3 && vs[1] > vs[vs.len() - 1] {
        vs[1..].reverse();
    }
    vs
}

/// A simple path; consecutive vertices are adjacent.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PathSeq {
    vertices: Vec<usize>,
}

impl PathSeq {
    pub fn new(g: &Graph, vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidArgument("path must be nonempty".into()));
        }
        let mut seen = VertexSet::EMPTY;
        for &v in &vertices {
            if v >= g.n() {
                return Err(Error::InvalidArgument(format!("vertex {v} out of range")));
            }
            if seen.contains(v) {
                return Err(Error::InvalidArgument(format!("repeated vertex {v}")));
            }
            seen.insert(v);
        }
        for w in vertices.windows(2) {
            if !g.has_edge(w[0], w[1]) {
                return Err(Error::InvalidArgument(format!(
                    "missing path edge ({},{})",
                    w[0], w[1]
                )));
            }
        }
        Ok(PathSeq { vertices })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }
}

impl std::fmt::Debug for PathSeq {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Path{:?}", self.vertices)
    }
}

/// Flood-fill from `start` within `within | bit(start)`.
fn reach_from(g: &Graph, start: usize, within: u64) -> u64 {
    let domain = within | bit(start);
    let mut comp = bit(start);
    loop {
        let mut grown = comp;
        let mut frontier = comp;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            grown |= g.row(v) & domain;
        }
        if grown == comp {
            return comp;
        }
        comp = grown;
    }
}

struct CycleSearch<'a, 'b> {
    g: &'a Graph,
    allowed: u64,
    target: usize,
    start: usize,
    spanning: bool,
    ticker: &'a mut Ticker<'b>,
    /// When set, every found cycle is pushed here and the search continues.
    collect_all: Option<&'a mut Vec<CycleSeq>>,
}

impl CycleSearch<'_, '_> {
    /// Extends `path` (ending at `end`, `used` marked) towards a cycle of
    /// exactly `target` vertices. Returns the first (lexicographically least)
    /// completion unless `collect_all` is set.
    fn extend(&mut self, path: &mut Vec<usize>, used: u64) -> Result<Option<Vec<usize>>> {
        self.ticker.tick()?;
        let end = *path.last().unwrap();
        if path.len() == self.target {
            if self.g.row(end) & bit(self.start) != 0 {
                if let Some(all) = self.collect_all.as_deref_mut() {
                    // Emit each undirected cycle once: second < last.
                    if path[1] < path[self.target - 1] {
                        all.push(CycleSeq {
                            vertices: path.clone(),
                        });
                    }
                    return Ok(None);
                }
                return Ok(Some(path.clone()));
            }
            return Ok(None);
        }
        let avail = self.allowed & !used;
        let needed = self.target - path.len();
        // The closing edge must come from a yet-unused vertex.
        if self.g.row(self.start) & avail == 0 {
            return Ok(None);
        }
        let reach = reach_from(self.g, end, avail);
        if ((reach & avail).count_ones() as usize) < needed {
            return Ok(None);
        }
        if self.spanning {
            // Every remaining vertex still needs two incident slots among
            // the unused vertices, the current end, and the start.
            let domain = avail | bit(end) | bit(self.start);
            let mut t = avail;
            while t != 0 {
                let v = t.trailing_zeros() as usize;
                t &= t - 1;
                if (self.g.row(v) & domain).count_ones() < 2 {
                    return Ok(None);
                }
            }
        }
        let mut cands = self.g.row(end) & avail;
        while cands != 0 {
            let v = cands.trailing_zeros() as usize;
            cands &= cands - 1;
            path.push(v);
            let found = self.extend(path, used | bit(v))?;
            path.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }
}

/// Lexicographically least cycle of exactly `len` vertices, if any.
pub(crate) fn cycle_of_length(
    g: &Graph,
    len: usize,
    ticker: &mut Ticker<'_>,
) -> Result<Option<CycleSeq>> {
    if len < 3 || len > g.n() {
        return Ok(None);
    }
    for start in 0..=(g.n() - len) {
        let allowed = g.vertex_set().0 & !crate::graph::low_bits(start);
        let mut search = CycleSearch {
            g,
            allowed,
            target: len,
            start,
            spanning: len == allowed.count_ones() as usize,
            ticker,
            collect_all: None,
        };
        let mut path = vec![start];
        if let Some(vs) = search.extend(&mut path, bit(start))? {
            return Ok(Some(CycleSeq { vertices: vs }));
        }
    }
    Ok(None)
}

/// All cycles of exactly `len` vertices, each reported once, in canonical form.
pub(crate) fn all_cycles_of_length(
    g: &Graph,
    len: usize,
    ticker: &mut Ticker<'_>,
) -> Result<Vec<CycleSeq>> {
    let mut out = Vec::new();
    if len < 3 || len > g.n() {
        return Ok(out);
    }
    for start in 0..=(g.n() - len) {
        let allowed = g.vertex_set().0 & !crate::graph::low_bits(start);
        let mut search = CycleSearch {
            g,
            allowed,
            target: len,
            start,
            spanning: false,
            ticker,
            collect_all: Some(&mut out),
        };
        let mut path = vec![start];
        search.extend(&mut path, bit(start))?;
    }
    Ok(out)
}

/// A maximum-length cycle, or `None` iff `g` is acyclic.
///
/// Deterministic: among maximum-length cycles, the lexicographically least
/// canonical sequence is returned.
pub fn longest_cycle(g: &Graph) -> Result<Option<CycleSeq>> {
    longest_cycle_with(g, &SearchBudget::unlimited())
}

pub fn longest_cycle_with(g: &Graph, budget: &SearchBudget) -> Result<Option<CycleSeq>> {
    let mut ticker = Ticker::new(budget);
    for len in (3..=g.n()).rev() {
        if let Some(c) = cycle_of_length(g, len, &mut ticker)? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// Every maximum-length cycle of `g` (empty when acyclic).
pub fn all_longest_cycles_with(g: &Graph, budget: &SearchBudget) -> Result<Vec<CycleSeq>> {
    let mut ticker = Ticker::new(budget);
    for len in (3..=g.n()).rev() {
        let all = all_cycles_of_length(g, len, &mut ticker)?;
        if !all.is_empty() {
            return Ok(all);
        }
    }
    Ok(Vec::new())
}

/// A spanning cycle, or `None` (exact).
pub fn hamiltonian_cycle(g: &Graph) -> Result<Option<CycleSeq>> {
    hamiltonian_cycle_with(g, &SearchBudget::unlimited())
}

pub fn hamiltonian_cycle_with(g: &Graph, budget: &SearchBudget) -> Result<Option<CycleSeq>> {
    if g.n() < 3 {
        return Err(Error::InvalidSize(format!(
            "Hamiltonian cycles need n >= 3, got n={}",
            g.n()
        )));
    }
    if g.min_degree() < 2 || !g.is_connected() {
        return Ok(None);
    }
    let mut ticker = Ticker::new(budget);
    cycle_of_length(g, g.n(), &mut ticker)
}

struct PathSearch<'a, 'b> {
    g: &'a Graph,
    /// Required final vertex, or `usize::MAX` when any endpoint is fine.
    goal: usize,
    ticker: &'a mut Ticker<'b>,
}

impl PathSearch<'_, '_> {
    fn extend(&mut self, path: &mut Vec<usize>, used: u64) -> Result<Option<Vec<usize>>> {
        self.ticker.tick()?;
        let end = *path.last().unwrap();
        if path.len() == self.g.n() {
            if self.goal == usize::MAX || end == self.goal {
                return Ok(Some(path.clone()));
            }
            return Ok(None);
        }
        let avail = self.g.vertex_set().0 & !used;
        let reach = reach_from(self.g, end, avail);
        if reach & avail != avail {
            return Ok(None);
        }
        if self.goal != usize::MAX && avail & bit(self.goal) == 0 {
            return Ok(None);
        }
        // A vertex with one remaining slot must be the terminal or sit next
        // to the current end; two of them (other than the goal) are fatal.
        let mut forced_terminals = 0u32;
        let mut t = avail;
        while t != 0 {
            let v = t.trailing_zeros() as usize;
            t &= t - 1;
            let slots = self.g.row(v) & (avail | bit(end));
            if slots == 0 {
                return Ok(None);
            }
            if slots.count_ones() == 1 && slots & bit(end) == 0 {
                forced_terminals += 1;
            }
        }
        if forced_terminals > 1 {
            return Ok(None);
        }
        let mut cands = self.g.row(end) & avail;
        while cands != 0 {
            let v = cands.trailing_zeros() as usize;
            cands &= cands - 1;
            if self.goal != usize::MAX && v == self.goal && path.len() + 1 != self.g.n() {
                continue;
            }
            path.push(v);
            let found = self.extend(path, used | bit(v))?;
            path.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }
}

/// A spanning path, or `None` (exact).
pub fn hamiltonian_path(g: &Graph) -> Result<Option<PathSeq>> {
    hamiltonian_path_with(g, &SearchBudget::unlimited())
}

pub fn hamiltonian_path_with(g: &Graph, budget: &SearchBudget) -> Result<Option<PathSeq>> {
    if g.n() == 1 {
        return Ok(Some(PathSeq { vertices: vec![0] }));
    }
    if !g.is_connected() {
        return Ok(None);
    }
    let mut ticker = Ticker::new(budget);
    for start in 0..g.n() {
        let mut search = PathSearch {
            g,
            goal: usize::MAX,
            ticker: &mut ticker,
        };
        let mut path = vec![start];
        if let Some(vs) = search.extend(&mut path, bit(start))? {
            return Ok(Some(PathSeq { vertices: vs }));
        }
    }
    Ok(None)
}

/// A spanning path from `s` to `t`, or `None` (exact).
pub fn spanning_path_between(g: &Graph, s: usize, t: usize) -> Result<Option<PathSeq>> {
    spanning_path_between_with(g, s, t, &SearchBudget::unlimited())
}

pub fn spanning_path_between_with(
    g: &Graph,
    s: usize,
    t: usize,
    budget: &SearchBudget,
) -> Result<Option<PathSeq>> {
    if s >= g.n() || t >= g.n() || s == t {
        return Err(Error::InvalidArgument(format!(
            "endpoints ({s},{t}) invalid for n={}",
            g.n()
        )));
    }
    if !g.is_connected() {
        return Ok(None);
    }
    let mut ticker = Ticker::new(budget);
    let mut search = PathSearch {
        g,
        goal: t,
        ticker: &mut ticker,
    };
    let mut path = vec![s];
    Ok(search
        .extend(&mut path, bit(s))?
        .map(|vertices| PathSeq { vertices }))
}

/// Whether every pair of vertices is joined by a spanning path (exact).
pub fn is_hamilton_connected(g: &Graph) -> Result<bool> {
    is_hamilton_connected_with(g, &SearchBudget::unlimited())
}

pub fn is_hamilton_connected_with(g: &Graph, budget: &SearchBudget) -> Result<bool> {
    if g.n() < 2 {
        return Err(Error::InvalidSize(
            "Hamilton-connectedness needs n >= 2".into(),
        ));
    }
    for s in 0..g.n() {
        for t in (s + 1)..g.n() {
            if spanning_path_between_with(g, s, t, budget)?.is_none() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Hard cap for [`cycle_cover`]; the state space grows too fast beyond it.
pub const CYCLE_COVER_MAX_N: usize = 12;

struct CoverSearch<'a, 'b> {
    g: &'a Graph,
    ticker: &'a mut Ticker<'b>,
    dead: HashMap<(u64, usize), ()>,
}

impl CoverSearch<'_, '_> {
    fn cover(&mut self, uncovered: u64, cycles_left: usize) -> Result<Option<Vec<CycleSeq>>> {
        if uncovered == 0 {
            return Ok(Some(Vec::new()));
        }
        if cycles_left == 0 {
            return Ok(None);
        }
        if self.dead.contains_key(&(uncovered, cycles_left)) {
            return Ok(None);
        }
        let pivot = uncovered.trailing_zeros() as usize;
        let mut path = vec![pivot];
        let result = self.enumerate(&mut path, bit(pivot), uncovered, cycles_left)?;
        if result.is_none() {
            self.dead.insert((uncovered, cycles_left), ());
        }
        Ok(result)
    }

    /// Walks all cycles through `path[0]` (any vertices allowed); on each
    /// closed cycle, recurses on the rest of the uncovered set.
    fn enumerate(
        &mut self,
        path: &mut Vec<usize>,
        used: u64,
        uncovered: u64,
        cycles_left: usize,
    ) -> Result<Option<Vec<CycleSeq>>> {
        self.ticker.tick()?;
        let pivot = path[0];
        let end = *path.last().unwrap();
        if path.len() >= 3 && self.g.row(end) & bit(pivot) != 0 && path[1] < end {
            let mask: u64 = path.iter().fold(0, |m, &v| m | bit(v));
            if let Some(mut rest) = self.cover(uncovered & !mask, cycles_left - 1)? {
                rest.push(CycleSeq {
                    vertices: canonical_rotation(path.clone()),
                });
                return Ok(Some(rest));
            }
        }
        let mut cands = self.g.row(end) & !used;
        while cands != 0 {
            let v = cands.trailing_zeros() as usize;
            cands &= cands - 1;
            path.push(v);
            let found = self.enumerate(path, used | bit(v), uncovered, cycles_left)?;
            path.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }
}

/// A set of at most `max_cycles` (not necessarily disjoint) cycles whose
/// vertex sets union to V(G), or `None` if no such cover exists.
pub fn cycle_cover(g: &Graph, max_cycles: usize) -> Result<Option<Vec<CycleSeq>>> {
    cycle_cover_with(g, max_cycles, &SearchBudget::unlimited())
}

pub fn cycle_cover_with(
    g: &Graph,
    max_cycles: usize,
    budget: &SearchBudget,
) -> Result<Option<Vec<CycleSeq>>> {
    if g.n() > CYCLE_COVER_MAX_N {
        return Err(Error::SizeLimit(format!(
            "cycle cover search supports n <= {CYCLE_COVER_MAX_N}, got {}",
            g.n()
        )));
    }
    let mut ticker = Ticker::new(budget);
    // Iterative deepening keeps certificates small and searches cheap.
    for count in 1..=max_cycles {
        if count == 1 {
            // A 1-cycle cover is exactly a spanning cycle.
            if g.n() >= 3 && g.min_degree() >= 2 && g.is_connected() {
                if let Some(c) = cycle_of_length(g, g.n(), &mut ticker)? {
                    return Ok(Some(vec![c]));
                }
            }
            continue;
        }
        let mut search = CoverSearch {
            g,
            ticker: &mut ticker,
            dead: HashMap::new(),
        };
        if let Some(mut cycles) = search.cover(g.vertex_set().0, count)? {
            cycles.reverse();
            return Ok(Some(cycles));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, join, k_copies, path_graph, Graph};

    fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        Graph::from_edges(10, &edges).unwrap()
    }

    fn k7_plus_pendant() -> Graph {
        let mut g = Graph::from_edges(8, &[(0, 7)]).unwrap();
        for u in 0..7 {
            for v in (u + 1)..7 {
                g.add_edge_mut(u, v).unwrap();
            }
        }
        g
    }

    fn sharpness_like(k: usize) -> Graph {
        let left = k_copies(k + 1, &complete_graph(2).unwrap()).unwrap();
        join(&left, &Graph::empty(k).unwrap()).unwrap()
    }

    #[test]
    fn longest_cycle_basics() {
        // A tree has no cycle at all.
        let tree = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 3), (1, 4)]).unwrap();
        assert!(longest_cycle(&tree).unwrap().is_none());

        // K7 plus a pendant: the pendant rides no cycle.
        let c = longest_cycle(&k7_plus_pendant()).unwrap().unwrap();
        assert_eq!(c.len(), 7);
        assert!(!c.contains(7));

        // C6 plus one chord still has the 6-cycle as its longest.
        let mut g = cycle_graph(6).unwrap();
        g.add_edge_mut(0, 3).unwrap();
        assert_eq!(longest_cycle(&g).unwrap().unwrap().len(), 6);
    }

    #[test]
    fn longest_cycle_is_canonical_and_deterministic() {
        let c = longest_cycle(&cycle_graph(5).unwrap()).unwrap().unwrap();
        assert_eq!(c.vertices(), &[0, 1, 2, 3, 4]);
        let k4 = complete_graph(4).unwrap();
        let c = longest_cycle(&k4).unwrap().unwrap();
        assert_eq!(c.vertices(), &[0, 1, 2, 3]);
    }

    #[test]
    fn hamiltonian_cycle_basics() {
        assert!(hamiltonian_cycle(&complete_graph(5).unwrap())
            .unwrap()
            .is_some());
        assert!(hamiltonian_cycle(&petersen()).unwrap().is_none());
        assert!(hamiltonian_cycle(&sharpness_like(2)).unwrap().is_none());
        assert!(matches!(
            hamiltonian_cycle(&complete_graph(2).unwrap()),
            Err(Error::InvalidSize(_))
        ));
    }

    #[test]
    fn hamiltonian_path_basics() {
        let k1 = complete_graph(1).unwrap();
        assert_eq!(hamiltonian_path(&k1).unwrap().unwrap().len(), 1);

        // G3(8): K6 with K2 = {6,7} attached at vertex 0 is traceable.
        let mut g = Graph::from_edges(8, &[(6, 7), (0, 6)]).unwrap();
        for u in 0..6 {
            for v in (u + 1)..6 {
                g.add_edge_mut(u, v).unwrap();
            }
        }
        assert!(hamiltonian_path(&g).unwrap().is_some());

        let two_k2 = k_copies(2, &complete_graph(2).unwrap()).unwrap();
        assert!(hamiltonian_path(&two_k2).unwrap().is_none());
    }

    #[test]
    fn hamilton_connected_basics() {
        assert!(is_hamilton_connected(&complete_graph(4).unwrap()).unwrap());
        assert!(!is_hamilton_connected(&cycle_graph(5).unwrap()).unwrap());
        // K1 ∨ 2K2: the join vertex is a cut vertex.
        let bowtie = join(
            &complete_graph(1).unwrap(),
            &k_copies(2, &complete_graph(2).unwrap()).unwrap(),
        )
        .unwrap();
        assert!(!is_hamilton_connected(&bowtie).unwrap());
    }

    #[test]
    fn implications_hold_on_samples() {
        for g in [
            complete_graph(5).unwrap(),
            cycle_graph(6).unwrap(),
            petersen(),
            k7_plus_pendant(),
            path_graph(6).unwrap(),
        ] {
            let ham = g.n() >= 3 && hamiltonian_cycle(&g).unwrap().is_some();
            let longest = longest_cycle(&g).unwrap().map(|c| c.len()).unwrap_or(0);
            assert_eq!(ham, longest == g.n());
            if ham {
                assert!(hamiltonian_path(&g).unwrap().is_some());
            }
        }
    }

    #[test]
    fn all_longest_cycles_agree_with_lex_least() {
        for g in [cycle_graph(6).unwrap(), petersen(), k7_plus_pendant()] {
            let best = longest_cycle(&g).unwrap().unwrap();
            let all = all_longest_cycles_with(&g, &SearchBudget::unlimited()).unwrap();
            assert!(all.contains(&best));
            assert!(all.iter().all(|c| c.len() == best.len()));
            let least = all.iter().min_by(|a, b| a.vertices().cmp(b.vertices()));
            assert_eq!(least.unwrap(), &best);
        }
    }

    #[test]
    fn cycle_cover_basics() {
        let c6 = cycle_graph(6).unwrap();
        let cover = cycle_cover(&c6, 1).unwrap().unwrap();
        assert_eq!(cover.len(), 1);
        assert_eq!(cover[0].len(), 6);

        let p = petersen();
        assert!(cycle_cover(&p, 1).unwrap().is_none());
        let cover = cycle_cover(&p, 2).unwrap().unwrap();
        assert_eq!(cover.len(), 2);
        let mut covered = VertexSet::EMPTY;
        for c in &cover {
            covered = VertexSet(covered.0 | c.vertex_set().0);
        }
        assert_eq!(covered, p.vertex_set());

        assert!(matches!(
            cycle_cover(&complete_graph(13).unwrap(), 1),
            Err(Error::SizeLimit(_))
        ));
    }

    #[test]
    fn budget_exceeded_is_reported() {
        let g = petersen();
        let tiny = SearchBudget::nodes(5);
        assert!(matches!(
            hamiltonian_cycle_with(&g, &tiny),
            Err(Error::BudgetExceeded)
        ));
    }

    #[test]
    fn cancellation_flag_aborts() {
        let g = petersen();
        let flag = Arc::new(AtomicBool::new(true));
        let budget = SearchBudget::unlimited().with_cancel(flag);
        assert!(matches!(
            longest_cycle_with(&g, &budget),
            Err(Error::BudgetExceeded)
        ));
    }

    #[test]
    fn cycle_seq_validation() {
        let c5 = cycle_graph(5).unwrap();
        assert!(CycleSeq::new(&c5, vec![0, 1, 2, 3, 4]).is_ok());
        assert!(CycleSeq::new(&c5, vec![0, 1, 2]).is_err()); // 2–0 missing
        assert!(CycleSeq::new(&c5, vec![0, 1]).is_err());
        let canon = CycleSeq::new(&c5, vec![3, 2, 1, 0, 4]).unwrap();
        assert_eq!(canon.vertices(), &[0, 1, 2, 3, 4]);
    }
}
