//! Named test graphs with a size budget for exhaustive two-player sweeps.

use crate::family::{complete, complete_multipartite, join, path, path_power};
use crate::graph::Graph;

#[derive(Clone, Debug)]
pub struct NamedGraph {
    pub name: String,
    pub graph: Graph,
    /// Largest configuration size worth sweeping.
    pub budget: u32,
}

fn named(name: impl Into<String>, graph: Graph, budget: u32) -> NamedGraph {
    NamedGraph {
        name: name.into(),
        graph,
        budget,
    }
}

fn cycle(n: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

fn edgeless(n: usize) -> Graph {
    Graph::empty(n)
}

/// Root, center, two children of the center, two leaves under each child.
pub fn tree_exemplar() -> Graph {
    Graph::from_edges(8, &[(0, 1), (1, 2), (1, 3), (2, 4), (2, 5), (3, 6), (3, 7)])
        .unwrap()
        .with_root(0)
        .unwrap()
}

/// A diameter-2 graph on 6 vertices between K_6 and P_6 by edge inclusion
/// with an unbounded two-player pebbling number at root 0. Vertices: root 0,
/// its neighbors 1 and 2, and a triangle 3, 4, 5 with 1 adjacent to 3 and 4
/// and 2 adjacent to 4 and 5.
pub fn diameter_two_exhibit() -> Graph {
    Graph::from_edges(
        6,
        &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 4), (2, 5), (3, 4), (4, 5), (3, 5)],
    )
    .unwrap()
    .with_root(0)
    .unwrap()
}

/// The path 3-1-0-2-5-4 inside [`diameter_two_exhibit`].
pub fn exhibit_path() -> Graph {
    Graph::from_edges(6, &[(3, 1), (1, 0), (0, 2), (2, 5), (5, 4)]).unwrap()
}

/// Graphs rooted at a vertex adjacent to all others (vertex 0).
pub fn dominating_root_graphs() -> Vec<NamedGraph> {
    let apex = |name: &str, g: Graph| {
        let n = g.n() + 1;
        named(name, join(&Graph::empty(1), &g).with_root(0).unwrap(), n as u32 + 2)
    };
    vec![
        named("K5", complete(5).unwrap().with_root(0).unwrap(), 7),
        apex("star-3", edgeless(3)),
        apex("star-5", edgeless(5)),
        apex("wheel-5", cycle(5)),
        apex("fan-4", path(4).unwrap()),
        apex("fan-5", path(5).unwrap()),
        apex("friendship-2", Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap()),
        apex("apex-P3+K1", Graph::from_edges(4, &[(0, 1), (1, 2)]).unwrap()),
        apex("apex-K3+2K1", Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2)]).unwrap()),
        apex("apex-C4+K1", Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()),
    ]
}

/// Graphs on which every root is swept; budgets exceed the expected
/// two-player pebbling numbers.
pub fn corpus() -> Vec<NamedGraph> {
    let mut out = Vec::new();
    for n in 2..=6 {
        out.push(named(format!("K{n}"), complete(n).unwrap(), n as u32 + 2));
    }
    for (n, budget) in [(2, 4), (3, 8), (4, 10), (5, 20)] {
        out.push(named(format!("P{n}"), path(n).unwrap(), budget));
    }
    out.push(named("C4", cycle(4), 12));
    out.push(named("C5", cycle(5), 16));
    out.push(named("K1,3", complete_multipartite(&[1, 3]).unwrap(), 10));
    out.push(named("K1,4", complete_multipartite(&[1, 4]).unwrap(), 11));
    out.push(named("K2,3", complete_multipartite(&[2, 3]).unwrap(), 13));
    out.push(named("P4^2", path_power(4, 2).unwrap(), 10));
    for g in dominating_root_graphs() {
        out.push(named(format!("{}-all-roots", g.name), g.graph, 16));
    }
    out.push(named("tree-exemplar", tree_exemplar(), 16));
    out.push(named("diameter-2-exhibit", diameter_two_exhibit(), 16));
    out
}
