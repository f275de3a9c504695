//! tfl — the two-factor lab.
//!
//! An exact combinatorial toolkit for small simple graphs (≤ 64 vertices)
//! centred on 2-factors with few components under independence/connectivity
//! conditions: invariants with witnesses, exact cycle and 2-factor searches,
//! the exceptional and sharpness graph families, a proof-shaped witness
//! extractor, and exhaustive verification campaigns over isomorph-free
//! streams of small connected graphs.
//!
//! Start with the runnable examples (`cargo run --example <name>`) or the
//! `tfl` binary (`cargo run --bin tfl -- --help`).

pub mod cycles;
pub mod enumerate;
pub mod error;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod harness;
pub mod invariants;
pub mod proof;
pub mod two_factor;

pub mod cli;

pub use error::{Error, Result};
pub use graph::{
    complete_graph, cycle_graph, disjoint_union, induced_subgraph, join, k_copies, path_graph,
    Graph, VertexSet,
};
pub use graph6::{from_graph6, to_graph6};
