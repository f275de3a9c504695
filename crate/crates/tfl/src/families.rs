//! The named graph families: the exceptional family (one parametric
//! construction covering the sandwich between its two extreme members plus
//! the pendant-K2 variant) and the two sharpness joins.
//!
//! The exceptional family on n vertices, written here as `(n, t)`: a clique
//! K_{n-2} on vertices 0..n-3 and an edge {n-2, n-1}, with vertex n-2
//! attached to the first `t` clique vertices. `t = n-2` collapses the clique
//! and the attachment vertex into K_{n-1} with a pendant; `t = 1` is the
//! variant where a single bridge joins the clique to the K2. Every member
//! has exactly one vertex of degree 1, hence no 2-factor at all.

use serde::{Deserialize, Serialize};

use crate::enumerate::isomorphic;
use crate::error::{Error, Result};
use crate::graph::{complete_graph, is_clique, join, k_copies, Graph, VertexSet};

/// Parsed structure of a recognized family member.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FamilyDescriptor {
    /// Member `(n, t)` of the exceptional family; `1 <= t <= n-2`.
    GFamily { n: usize, t: usize },
    /// (k+1)K2 ∨ kK1 on 3k+2 vertices.
    Sharpness { k: usize },
    /// (k+2)K2 ∨ kK1 on 3k+4 vertices.
    AlphaSharpness { k: usize },
}

impl FamilyDescriptor {
    /// Rebuilds the described graph.
    pub fn build(&self) -> Result<Graph> {
        match *self {
            FamilyDescriptor::GFamily { n, t } => build_g_family(n, t),
            FamilyDescriptor::Sharpness { k } => sharpness_graph(k),
            FamilyDescriptor::AlphaSharpness { k } => alpha_sharpness_graph(k),
        }
    }
}

impl std::fmt::Display for FamilyDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            FamilyDescriptor::GFamily { n, t } => write!(f, "g-family(n={n}, t={t})"),
            FamilyDescriptor::Sharpness { k } => write!(f, "sharpness(k={k})"),
            FamilyDescriptor::AlphaSharpness { k } => write!(f, "alpha-sharpness(k={k})"),
        }
    }
}

/// Smallest order at which family membership is defined (the clique side
/// needs at least three vertices).
pub const G_FAMILY_MIN_N: usize = 5;

/// Builds the family member `(n, t)`.
pub fn build_g_family(n: usize, t: usize) -> Result<Graph> {
    if n < G_FAMILY_MIN_N || n > crate::graph::MAX_VERTICES {
        return Err(Error::InvalidArgument(format!(
            "family order must be in {G_FAMILY_MIN_N}..=64, got {n}"
        )));
    }
    if t < 1 || t > n - 2 {
        return Err(Error::InvalidArgument(format!(
            "attachment count must be in 1..={}, got {t}",
            n - 2
        )));
    }
    let mut g = Graph::empty(n)?;
    for u in 0..(n - 2) {
        for v in (u + 1)..(n - 2) {
            g.add_edge_mut(u, v)?;
        }
    }
    g.add_edge_mut(n - 2, n - 1)?;
    for u in 0..t {
        g.add_edge_mut(u, n - 2)?;
    }
    Ok(g)
}

/// Structural recognizer: `Some(descriptor)` iff `g` is isomorphic to some
/// `build_g_family(n, t)`.
pub fn is_in_family_g(g: &Graph) -> Option<FamilyDescriptor> {
    let n = g.n();
    if n < G_FAMILY_MIN_N {
        return None;
    }
    // Every member has exactly one vertex of degree 1.
    let mut pendant = None;
    for v in 0..n {
        if g.degree(v) == 1 {
            if pendant.is_some() {
                return None;
            }
            pendant = Some(v);
        }
    }
    let y = pendant?;
    let v = g.neighbors(y).iter().next().expect("degree 1");
    let t = if g.degree(v) == 2 {
        // Bridge variant: v sees only y and one clique vertex; the rest of
        // the graph must be a clique.
        let mut others = g.vertex_set();
        others.remove(y);
        others.remove(v);
        if !is_clique(g, others) {
            return None;
        }
        1
    } else {
        // v sees y plus t >= 2 clique vertices; removing y and v must leave
        // a clique, and v's remaining neighbors must all lie in it.
        let mut clique = g.vertex_set();
        clique.remove(y);
        clique.remove(v);
        if !is_clique(g, clique) {
            return None;
        }
        let mut attach = g.neighbors(v);
        attach.remove(y);
        if !attach.is_subset_of(clique) {
            return None;
        }
        attach.len()
    };
    if t > n - 2 {
        return None;
    }
    let descriptor = FamilyDescriptor::GFamily { n, t };
    // Confirm by isomorphism against the constructor.
    let reference = descriptor.build().ok()?;
    if isomorphic(g, &reference) {
        Some(descriptor)
    } else {
        None
    }
}

/// (k+1)K2 ∨ kK1: order 3k+2, κ = k, α = k+1.
pub fn sharpness_graph(k: usize) -> Result<Graph> {
    if k < 1 || 3 * k + 2 > crate::graph::MAX_VERTICES {
        return Err(Error::InvalidSize(format!(
            "sharpness parameter must satisfy 1 <= k and 3k+2 <= 64, got {k}"
        )));
    }
    let pairs = k_copies(k + 1, &complete_graph(2)?)?;
    let singles = Graph::empty(k)?;
    join(&pairs, &singles)
}

/// (k+2)K2 ∨ kK1: order 3k+4, κ = k, α = k+2.
pub fn alpha_sharpness_graph(k: usize) -> Result<Graph> {
    if k < 1 || 3 * k + 4 > crate::graph::MAX_VERTICES {
        return Err(Error::InvalidSize(format!(
            "sharpness parameter must satisfy 1 <= k and 3k+4 <= 64, got {k}"
        )));
    }
    let pairs = k_copies(k + 2, &complete_graph(2)?)?;
    let singles = Graph::empty(k)?;
    join(&pairs, &singles)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::cycle_graph;
    use crate::invariants::{independence_number, vertex_connectivity};

    #[test]
    fn build_matches_figure_shapes() {
        // (7, 2): exactly one degree-1 vertex, and the attachment vertex has
        // degree 3 (two clique edges plus the pendant).
        let g = build_g_family(7, 2).unwrap();
        let ones: Vec<usize> = (0..7).filter(|&v| g.degree(v) == 1).collect();
        assert_eq!(ones, vec![6]);
        assert_eq!(g.degree(5), 3);

        // (7, 5): K6 plus a pendant.
        let g = build_g_family(7, 5).unwrap();
        assert_eq!(g.edge_count(), 15 + 1);
        assert_eq!(g.degree(6), 1);

        // (7, 1): the pendant's neighbor has degree 2.
        let g = build_g_family(7, 1).unwrap();
        assert_eq!(g.degree(6), 1);
        assert_eq!(g.degree(5), 2);
    }

    #[test]
    fn build_rejects_bad_parameters() {
        assert!(build_g_family(4, 1).is_err());
        assert!(build_g_family(7, 0).is_err());
        assert!(build_g_family(7, 6).is_err());
    }

    #[test]
    fn recognizer_round_trip() {
        for n in 5..=10 {
            for t in 1..=(n - 2) {
                let g = build_g_family(n, t).unwrap();
                assert_eq!(
                    is_in_family_g(&g),
                    Some(FamilyDescriptor::GFamily { n, t }),
                    "(n,t)=({n},{t})"
                );
            }
        }
    }

    #[test]
    fn recognizer_rejects_non_members() {
        assert!(is_in_family_g(&cycle_graph(9).unwrap()).is_none());
        assert!(is_in_family_g(&complete_graph(6).unwrap()).is_none());
        assert!(is_in_family_g(&sharpness_graph(2).unwrap()).is_none());
        // A path has two degree-1 vertices.
        assert!(is_in_family_g(&crate::graph::path_graph(6).unwrap()).is_none());
        // Clique with two pendants on the same root.
        let mut g = Graph::from_edges(7, &[(0, 5), (0, 6)]).unwrap();
        for u in 0..5 {
            for v in (u + 1)..5 {
                g.add_edge_mut(u, v).unwrap();
            }
        }
        assert!(is_in_family_g(&g).is_none());
    }

    #[test]
    fn recognizer_is_isomorphism_invariant() {
        let g = build_g_family(9, 4).unwrap();
        let perm = [5, 3, 8, 0, 7, 2, 6, 1, 4];
        let h = g.relabel(&perm);
        assert_eq!(is_in_family_g(&h), Some(FamilyDescriptor::GFamily { n: 9, t: 4 }));
    }

    #[test]
    fn k6_plus_pendant_is_recognized() {
        let mut g = Graph::from_edges(7, &[(0, 6)]).unwrap();
        for u in 0..6 {
            for v in (u + 1)..6 {
                g.add_edge_mut(u, v).unwrap();
            }
        }
        assert_eq!(is_in_family_g(&g), Some(FamilyDescriptor::GFamily { n: 7, t: 5 }));
    }

    #[test]
    fn family_members_have_pendants_and_tiny_invariants() {
        for n in 6..=10 {
            for t in 1..=(n - 2) {
                let g = build_g_family(n, t).unwrap();
                assert_eq!(g.min_degree(), 1);
                assert_eq!(independence_number(&g).size, 2);
                assert_eq!(vertex_connectivity(&g).kappa, 1);
            }
        }
    }

    #[test]
    fn sharpness_values() {
        let g = sharpness_graph(2).unwrap();
        assert_eq!(g.n(), 8);
        assert_eq!(vertex_connectivity(&g).kappa, 2);
        assert_eq!(independence_number(&g).size, 3);

        let g = alpha_sharpness_graph(2).unwrap();
        assert_eq!(g.n(), 10);
        assert_eq!(vertex_connectivity(&g).kappa, 2);
        assert_eq!(independence_number(&g).size, 4);

        let g = sharpness_graph(1).unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(vertex_connectivity(&g).kappa, 1);
        assert_eq!(independence_number(&g).size, 2);
    }

    #[test]
    fn descriptor_rebuild_round_trip() {
        let d = FamilyDescriptor::GFamily { n: 8, t: 3 };
        let g = d.build().unwrap();
        assert_eq!(is_in_family_g(&g), Some(d));
        assert!(crate::enumerate::isomorphic(
            &FamilyDescriptor::Sharpness { k: 2 }.build().unwrap(),
            &sharpness_graph(2).unwrap()
        ));
    }
}
