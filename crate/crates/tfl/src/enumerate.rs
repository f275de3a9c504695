//! Canonical forms, isomorph-free streams of small connected graphs, and
//! graph6 corpus ingestion.
//!
//! The canonical form of a graph is the lexicographically least graph6
//! encoding over all vertex relabellings, found by a pruned branch-and-bound
//! over placements. Equal keys ⇔ isomorphic graphs.

use std::collections::HashSet;
use std::fs::File;
use std::io::{BufRead, BufReader, Lines};
use std::path::Path;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{bit, low_bits, Graph};
use crate::graph6::{from_graph6_at, to_graph6};

/// A relabelling-invariant key: the canonical representative's graph6 bytes.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    bytes: Vec<u8>,
}

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.bytes).expect("graph6 is ASCII")
    }
}

impl std::fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CanonicalKey({})", self.as_str())
    }
}

impl std::fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

struct CanonSearch<'a> {
    g: &'a Graph,
    n: usize,
    /// For each unplaced vertex, its column word w.r.t. the current prefix:
    /// adjacency bits to placed positions, MSB = position 0.
    words: [u64; 64],
    /// Column words of the best labelling found: entry p-1 belongs to the
    /// vertex placed at position p.
    best_code: [u64; 64],
    best_placed: [u8; 64],
}

impl CanonSearch<'_> {
    /// Two candidates are interchangeable if swapping them is an
    /// automorphism: N(u) − v equals N(v) − u.
    #[inline]
    fn interchangeable(&self, u: usize, v: usize) -> bool {
        (self.g.row(u) & !bit(v)) == (self.g.row(v) & !bit(u))
    }

    fn dfs(&mut self, placed: &mut [u8; 64], p: usize, used: u64) {
        if p == self.n {
            self.best_placed = *placed;
            return;
        }
        let mut cands: [(u64, u8); 64] = [(0, 0); 64];
        let mut k = 0usize;
        let mut rest = low_bits(self.n) & !used;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let tie = if p == 0 {
                self.g.degree(v) as u64
            } else {
                self.words[v]
            };
            cands[k] = (tie, v as u8);
            k += 1;
        }
        cands[..k].sort_unstable();
        let mut tried: [u8; 64] = [0; 64];
        let mut tried_len = 0usize;
        for &(w, v8) in &cands[..k] {
            let v = v8 as usize;
            if p > 0 {
                if w > self.best_code[p - 1] {
                    break; // sorted ascending: nothing later can match
                }
                if w < self.best_code[p - 1] {
                    self.best_code[p - 1] = w;
                    for q in p..self.n - 1 {
                        self.best_code[q] = u64::MAX;
                    }
                }
            }
            if tried[..tried_len]
                .iter()
                .any(|&u| self.interchangeable(u as usize, v))
            {
                continue;
            }
            tried[tried_len] = v8;
            tried_len += 1;
            placed[p] = v8;
            let remaining = low_bits(self.n) & !used & !bit(v);
            let mut t = remaining;
            while t != 0 {
                let u = t.trailing_zeros() as usize;
                t &= t - 1;
                self.words[u] = (self.words[u] << 1) | ((self.g.row(u) >> v) & 1);
            }
            self.dfs(placed, p + 1, used | bit(v));
            let mut t = remaining;
            while t != 0 {
                let u = t.trailing_zeros() as usize;
                t &= t - 1;
                self.words[u] >>= 1;
            }
        }
    }
}

/// The canonical representative: `g` relabelled to minimize its graph6 code.
pub fn canonical_representative(g: &Graph) -> Graph {
    let n = g.n();
    if n == 1 {
        return g.clone();
    }
    let mut search = CanonSearch {
        g,
        n,
        words: [0; 64],
        best_code: [u64::MAX; 64],
        best_placed: [0; 64],
    };
    let mut placed = [0u8; 64];
    search.dfs(&mut placed, 0, 0);
    let mut perm = vec![0usize; n];
    for pos in 0..n {
        perm[search.best_placed[pos] as usize] = pos;
    }
    g.relabel(&perm)
}

/// The canonical key of `g`; equal keys ⇔ isomorphic graphs.
pub fn canonical_form(g: &Graph) -> CanonicalKey {
    CanonicalKey {
        bytes: to_graph6(&canonical_representative(g)).into_bytes(),
    }
}

/// True iff `g` and `h` are isomorphic (via canonical forms).
pub fn isomorphic(g: &Graph, h: &Graph) -> bool {
    g.n() == h.n() && g.edge_count() == h.edge_count() && canonical_form(g) == canonical_form(h)
}

/// Packs the upper triangle of a small canonical graph into a dedupe key.
fn packed_key(g: &Graph) -> u128 {
    debug_assert!(g.n() <= 16);
    let mut key: u128 = g.n() as u128;
    for v in 1..g.n() {
        for u in 0..v {
            key = (key << 1) | (g.has_edge(u, v) as u128);
        }
    }
    key
}

/// Largest order the enumerator will stream.
pub const ENUMERATE_MAX_N: usize = 10;

/// Parents handed to worker threads per refill of the child buffer.
const PARENT_CHUNK: usize = 64;

/// One canonical representative per isomorphism class of connected graphs
/// on `n` vertices, generated by augmenting the (n−1)-vertex classes with a
/// new vertex for every nonempty neighborhood and deduplicating canonically.
///
/// Children of a parent chunk are canonicalized in parallel; the yield order
/// (parents in stream order, neighborhood masks ascending, first occurrence
/// wins) is deterministic.
pub struct ConnectedGraphs {
    n: usize,
    parents: std::sync::Arc<Vec<Graph>>,
    parent_idx: usize,
    buffer: std::collections::VecDeque<(u128, Graph)>,
    seen: HashSet<u128>,
    produced_k1: bool,
}

impl ConnectedGraphs {
    fn new(n: usize, parents: std::sync::Arc<Vec<Graph>>) -> Self {
        ConnectedGraphs {
            n,
            parents,
            parent_idx: 0,
            buffer: std::collections::VecDeque::new(),
            seen: HashSet::new(),
            produced_k1: false,
        }
    }

    /// Index of the next class to be yielded; usable as a restart cursor
    /// together with `Iterator::skip`.
    pub fn cursor(&self) -> usize {
        self.seen.len()
    }
}

/// All canonicalized augmentations of one parent, in ascending mask order.
fn children_of(parent: &Graph, n: usize) -> Vec<(u128, Graph)> {
    let full = (1u64 << (n - 1)) - 1;
    let mut out = Vec::with_capacity(full as usize);
    for mask in 1..=full {
        let mut child =
            crate::graph::disjoint_union(parent, &Graph::empty(1).unwrap()).expect("within cap");
        let v = n - 1;
        let mut m = mask;
        while m != 0 {
            let u = m.trailing_zeros() as usize;
            m &= m - 1;
            child.add_edge_mut(u, v).expect("in range");
        }
        let canon = canonical_representative(&child);
        let key = packed_key(&canon);
        out.push((key, canon));
    }
    out
}

impl Iterator for ConnectedGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.n == 1 {
            if self.produced_k1 {
                return None;
            }
            self.produced_k1 = true;
            return Some(Graph::empty(1).unwrap());
        }
        loop {
            while let Some((key, g)) = self.buffer.pop_front() {
                if self.seen.insert(key) {
                    return Some(g);
                }
            }
            if self.parent_idx >= self.parents.len() {
                return None;
            }
            let end = (self.parent_idx + PARENT_CHUNK).min(self.parents.len());
            let n = self.n;
            let chunk: Vec<Vec<(u128, Graph)>> = self.parents[self.parent_idx..end]
                .par_iter()
                .map(|parent| children_of(parent, n))
                .collect();
            self.parent_idx = end;
            self.buffer.extend(chunk.into_iter().flatten());
        }
    }
}


/// Levels up to this order are memoized process-wide (n=9 is ~30 MB;
/// n=10 would be over a gigabyte and is always streamed).
const CACHE_MAX_N: usize = 9;

static LEVEL_CACHE: std::sync::Mutex<Vec<Option<std::sync::Arc<Vec<Graph>>>>> =
    std::sync::Mutex::new(Vec::new());

/// The full level `n`, shared and memoized for `n <= 9`.
pub fn connected_level_cached(n: usize) -> Result<std::sync::Arc<Vec<Graph>>> {
    if n == 0 || n > ENUMERATE_MAX_N {
        return Err(Error::SizeLimit(format!(
            "enumeration supports 1..={ENUMERATE_MAX_N}, got {n}"
        )));
    }
    if n > CACHE_MAX_N {
        return Ok(std::sync::Arc::new(connected_graphs(n)?.collect()));
    }
    {
        let cache = LEVEL_CACHE.lock().unwrap();
        if let Some(Some(level)) = cache.get(n) {
            return Ok(level.clone());
        }
    }
    // Build outside the lock; a racing builder just wastes a little work.
    let built = if n == 1 {
        std::sync::Arc::new(vec![Graph::empty(1).unwrap()])
    } else {
        let parents = connected_level_cached(n - 1)?;
        std::sync::Arc::new(ConnectedGraphs::new(n, parents).collect())
    };
    let mut cache = LEVEL_CACHE.lock().unwrap();
    if cache.len() <= n {
        cache.resize(n + 1, None);
    }
    let slot = cache[n].get_or_insert_with(|| built.clone());
    Ok(slot.clone())
}

/// Streams exactly one representative per isomorphism class of connected
/// simple graphs on `n` vertices, in a deterministic order.
pub fn connected_graphs(n: usize) -> Result<ConnectedGraphs> {
    if n == 0 || n > ENUMERATE_MAX_N {
        return Err(Error::SizeLimit(format!(
            "enumeration supports 1..={ENUMERATE_MAX_N}, got {n}"
        )));
    }
    let parents = if n == 1 {
        std::sync::Arc::new(Vec::new())
    } else {
        connected_level_cached(n - 1)?
    };
    Ok(ConnectedGraphs::new(n, parents))
}

/// Number of connected isomorphism classes on `n` vertices.
pub fn connected_graph_count(n: usize) -> Result<usize> {
    Ok(connected_graphs(n)?.count())
}

/// Streaming reader over a file of newline-separated graph6 lines.
/// Blank lines are skipped; errors carry 1-based line numbers.
pub struct Graph6Reader {
    lines: Lines<BufReader<File>>,
    line_no: usize,
}

impl Iterator for Graph6Reader {
    type Item = Result<Graph>;

    fn next(&mut self) -> Option<Result<Graph>> {
        loop {
            let line = match self.lines.next()? {
                Ok(l) => l,
                Err(e) => return Some(Err(Error::Io(e.to_string()))),
            };
            self.line_no += 1;
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            return Some(from_graph6_at(trimmed, self.line_no));
        }
    }
}

/// Opens `path` as a stream of graphs in file order.
pub fn read_graph6_stream<P: AsRef<Path>>(path: P) -> Result<Graph6Reader> {
    let file = File::open(path.as_ref())
        .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
    Ok(Graph6Reader {
        lines: BufReader::new(file).lines(),
        line_no: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, k_copies};
    use std::io::Write;

    #[test]
    fn relabelled_cycles_share_a_key() {
        let c5 = cycle_graph(5).unwrap();
        let shuffled = c5.relabel(&[2, 0, 4, 1, 3]);
        assert_eq!(canonical_form(&c5), canonical_form(&shuffled));
        assert!(isomorphic(&c5, &shuffled));
    }

    #[test]
    fn different_graphs_different_keys() {
        let c6 = cycle_graph(6).unwrap();
        let two_k3 = k_copies(2, &complete_graph(3).unwrap()).unwrap();
        assert_ne!(canonical_form(&c6), canonical_form(&two_k3));
    }

    #[test]
    fn three_vertex_connected_classes() {
        // All 8 labelled 3-vertex graphs, filtered connected, dedupe: P3, K3.
        let mut keys = HashSet::new();
        for mask in 0u8..8 {
            let mut g = Graph::empty(3).unwrap();
            let pairs = [(0usize, 1usize), (0, 2), (1, 2)];
            for (i, &(u, v)) in pairs.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    g.add_edge_mut(u, v).unwrap();
                }
            }
            if g.is_connected() {
                keys.insert(canonical_form(&g));
            }
        }
        assert_eq!(keys.len(), 2);
    }

    #[test]
    fn small_class_counts() {
        let expected = [1usize, 1, 2, 6, 21, 112];
        for (i, &want) in expected.iter().enumerate() {
            assert_eq!(connected_graph_count(i + 1).unwrap(), want, "n={}", i + 1);
        }
    }

    #[test]
    fn stream_yields_distinct_connected_canonical_graphs() {
        let mut keys = HashSet::new();
        for g in connected_graphs(5).unwrap() {
            assert!(g.is_connected());
            assert_eq!(g, canonical_representative(&g));
            assert!(keys.insert(canonical_form(&g)));
        }
        assert_eq!(keys.len(), 21);
    }

    #[test]
    fn enumeration_rejects_large_n() {
        assert!(matches!(connected_graphs(11), Err(Error::SizeLimit(_))));
        assert!(matches!(connected_graphs(0), Err(Error::SizeLimit(_))));
    }

    #[test]
    fn graph6_stream_reads_files() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "Bw").unwrap();
        writeln!(f).unwrap();
        writeln!(f, "DQc").unwrap();
        f.flush().unwrap();
        let graphs: Vec<_> = read_graph6_stream(f.path())
            .unwrap()
            .collect::<Result<Vec<_>>>()
            .unwrap();
        assert_eq!(graphs.len(), 2);
        assert_eq!(graphs[0], complete_graph(3).unwrap());
    }

    #[test]
    fn graph6_stream_reports_bad_line() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "Bw").unwrap();
        writeln!(f, "!!").unwrap();
        writeln!(f, "Bw").unwrap();
        f.flush().unwrap();
        let results: Vec<_> = read_graph6_stream(f.path()).unwrap().collect();
        assert_eq!(results.len(), 3);
        assert!(results[0].is_ok());
        match &results[1] {
            Err(Error::Decode { line, .. }) => assert_eq!(*line, 2),
            other => panic!("unexpected: {other:?}"),
        }
        assert!(results[2].is_ok());
    }

    #[test]
    fn empty_file_is_empty_stream() {
        let f = tempfile::NamedTempFile::new().unwrap();
        assert_eq!(read_graph6_stream(f.path()).unwrap().count(), 0);
    }
}
