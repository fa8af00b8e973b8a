//! Constructors for the graph families used throughout the crate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Descriptor for a constructible graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Complete(usize),
    Path(usize),
    /// `k`-th power of the path on `n` vertices: `ij` is an edge iff `|i-j| <= k`.
    PathPower { n: usize, k: usize },
    /// Cartesian product `P_m □ P_n`, vertex `(i, j)` labeled `i * n + j`.
    Grid { m: usize, n: usize },
    /// Parts are labeled consecutively in the given order.
    CompleteMultipartite(Vec<usize>),
    Gst(GstDescriptor),
    /// Vertices of the second graph are shifted by the order of the first.
    Join(Box<Graph>, Box<Graph>),
    DisjointUnion(Box<Graph>, Box<Graph>),
    Explicit { n: usize, edges: Vec<(Vertex, Vertex)> },
}

pub fn build_family(family: &Family) -> Result<Graph> {
    match family {
        Family::Complete(n) => complete(*n),
        Family::Path(n) => path(*n),
        Family::PathPower { n, k } => path_power(*n, *k),
        Family::Grid { m, n } => grid(*m, *n),
        Family::CompleteMultipartite(parts) => complete_multipartite(parts),
        Family::Gst(desc) => desc.graph(),
        Family::Join(a, b) => Ok(join(a, b)),
        Family::DisjointUnion(a, b) => Ok(disjoint_union(a, b)),
        Family::Explicit { n, edges } => {
            if *n == 0 {
                return Err(Error::InvalidSize("graph needs at least one vertex".into()));
            }
            Graph::from_edges(*n, edges)
        }
    }
}

fn positive(name: &str, v: usize) -> Result<()> {
    if v == 0 {
        Err(Error::InvalidSize(format!("{name} must be positive")))
    } else {
        Ok(())
    }
}

pub fn complete(n: usize) -> Result<Graph> {
    positive("n", n)?;
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in (u + 1)..n {
            g.add_edge(u, v)?;
        }
    }
    Ok(g)
}

pub fn path(n: usize) -> Result<Graph> {
    path_power(n, 1)
}

pub fn path_power(n: usize, k: usize) -> Result<Graph> {
    positive("n", n)?;
    if n > 1 && (k == 0 || k >= n) {
        return Err(Error::InvalidSize(format!(
            "path power needs 1 <= k < n (got n={n}, k={k})"
        )));
    }
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in (u + 1)..n.min(u + k + 1) {
            g.add_edge(u, v)?;
        }
    }
    Ok(g)
}

pub fn grid(m: usize, n: usize) -> Result<Graph> {
    positive("m", m)?;
    positive("n", n)?;
    let mut g = Graph::empty(m * n);
    for i in 0..m {
        for j in 0..n {
            let v = i * n + j;
            if j + 1 < n {
                g.add_edge(v, v + 1)?;
            }
            if i + 1 < m {
                g.add_edge(v, v + n)?;
            }
        }
    }
    Ok(g)
}

pub fn complete_multipartite(parts: &[usize]) -> Result<Graph> {
    if parts.len() < 2 {
        return Err(Error::InvalidSize(
            "complete multipartite graph needs at least 2 parts".into(),
        ));
    }
    for &p in parts {
        positive("part size", p)?;
    }
    let n = parts.iter().sum();
    let mut label = Vec::with_capacity(n);
    for (i, &p) in parts.iter().enumerate() {
        label.extend(std::iter::repeat_n(i, p));
    }
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if label[u] != label[v] {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let off = a.n();
    let mut g = Graph::empty(a.n() + b.n());
    for (u, v) in a.edges() {
        g.add_edge(u, v).unwrap();
    }
    for (u, v) in b.edges() {
        g.add_edge(u + off, v + off).unwrap();
    }
    g
}

pub fn join(a: &Graph, b: &Graph) -> Graph {
    let mut g = disjoint_union(a, b);
    for u in a.vertices() {
        for v in b.vertices() {
            g.add_edge(u, v + a.n()).unwrap();
        }
    }
    g
}

/// A member of the class `(K_1 ∪ independent T) ∨ H` with `|S| = |V(H)| = s`
/// and `|T| = t`.
///
/// Labeling: vertex 0 is the root, `1..=t` are T, `t+1..=t+s` are S. H edges
/// are given over `0..s` (S-local indices).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GstDescriptor {
    pub s: usize,
    pub t: usize,
    pub h_edges: Vec<(usize, usize)>,
}

impl GstDescriptor {
    pub fn new(s: usize, t: usize, h_edges: Vec<(usize, usize)>) -> Result<Self> {
        positive("s", s)?;
        positive("t", t)?;
        let mut h = h_edges;
        for e in &mut h {
            if e.0 >= s || e.1 >= s {
                return Err(Error::InvalidVertex {
                    vertex: e.0.max(e.1),
                    n: s,
                });
            }
            if e.0 == e.1 {
                return Err(Error::SelfLoop(e.0));
            }
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        h.sort_unstable();
        h.dedup();
        Ok(GstDescriptor { s, t, h_edges: h })
    }

    /// The labeled H selected by bit `i` of `mask` for the `i`-th pair
    /// `(a, b)`, `a < b`, in lexicographic order.
    pub fn from_mask(s: usize, t: usize, mask: u64) -> Result<Self> {
        let edges = s_pairs(s)
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, p)| p)
            .collect();
        GstDescriptor::new(s, t, edges)
    }

    /// Every labeled H on `s` vertices, `2^(s choose 2)` descriptors.
    pub fn all_labeled(s: usize, t: usize) -> Result<Vec<Self>> {
        let pairs = s * s.saturating_sub(1) / 2;
        if pairs >= 20 {
            return Err(Error::InvalidSize(format!("too many labeled graphs for s={s}")));
        }
        (0..1u64 << pairs)
            .map(|mask| GstDescriptor::from_mask(s, t, mask))
            .collect()
    }

    pub fn n(&self) -> usize {
        1 + self.t + self.s
    }

    pub const ROOT: Vertex = 0;

    pub fn t_vertices(&self) -> std::ops::Range<Vertex> {
        1..1 + self.t
    }

    pub fn s_vertices(&self) -> std::ops::Range<Vertex> {
        1 + self.t..1 + self.t + self.s
    }

    pub fn h(&self) -> Graph {
        Graph::from_edges(self.s, &self.h_edges).unwrap()
    }

    /// The rooted graph, labeled as described on the type.
    pub fn graph(&self) -> Result<Graph> {
        let mut g = Graph::empty(self.n());
        let off = 1 + self.t;
        for &(a, b) in &self.h_edges {
            g.add_edge(a + off, b + off)?;
        }
        for u in 0..off {
            for v in self.s_vertices() {
                g.add_edge(u, v)?;
            }
        }
        g.with_root(Self::ROOT)
    }
}

fn s_pairs(s: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..s).flat_map(move |a| ((a + 1)..s).map(move |b| (a, b)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_four() {
        let g = complete(4).unwrap();
        assert_eq!((g.n(), g.edge_count(), g.diameter().unwrap()), (4, 6, 1));
    }

    #[test]
    fn grid_four_by_four() {
        let g = grid(4, 4).unwrap();
        assert_eq!((g.n(), g.edge_count()), (16, 24));
        assert_eq!(g.diameter().unwrap(), 6);
    }

    #[test]
    fn path_and_powers() {
        let p = path(6).unwrap();
        assert_eq!((p.edge_count(), p.diameter().unwrap()), (5, 5));
        assert_eq!(path(1).unwrap().n(), 1);
        assert_eq!(path_power(5, 4).unwrap(), complete(5).unwrap());
        assert_eq!(path_power(9, 2).unwrap().edge_count(), 8 + 7);
        assert!(path_power(4, 4).is_err());
        assert!(path(0).is_err());
    }

    #[test]
    fn multipartite_checks() {
        let g = complete_multipartite(&[3, 3]).unwrap();
        assert_eq!(g.edge_count(), 9);
        assert!(complete_multipartite(&[3]).is_err());
        assert!(complete_multipartite(&[3, 0]).is_err());
    }

    #[test]
    fn gst_with_empty_h_is_k33() {
        let d = GstDescriptor::new(3, 2, vec![]).unwrap();
        let g = d.graph().unwrap();
        assert_eq!(g.root(), Some(0));
        // {root} ∪ T is the size-3 part, S the other.
        let k33 = complete_multipartite(&[3, 3]).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), k33.edges().collect::<Vec<_>>());
    }

    #[test]
    fn gst_invariants_over_all_labeled_h() {
        for s in 1..=4 {
            for t in 1..=3 {
                let all = GstDescriptor::all_labeled(s, t).unwrap();
                assert_eq!(all.len(), 1 << (s * (s - 1) / 2));
                for d in all {
                    let g = d.graph().unwrap();
                    assert_eq!(g.degree(0), s);
                    for v in d.t_vertices() {
                        assert_eq!(g.degree(v), s);
                    }
                    assert_eq!(g.diameter().unwrap(), 2);
                    assert_eq!(g.edge_count(), d.h_edges.len() + s * (t + 1));
                    let joined = join(&Graph::empty(t + 1), &d.h());
                    assert_eq!(joined.edge_count(), g.edge_count());
                }
            }
        }
    }

    #[test]
    fn gst_descriptor_validation() {
        assert!(GstDescriptor::new(0, 2, vec![]).is_err());
        assert!(GstDescriptor::new(2, 0, vec![]).is_err());
        assert!(GstDescriptor::new(2, 2, vec![(0, 2)]).is_err());
        assert!(GstDescriptor::new(2, 2, vec![(1, 1)]).is_err());
        let d = GstDescriptor::new(3, 2, vec![(2, 0), (0, 2)]).unwrap();
        assert_eq!(d.h_edges, vec![(0, 2)]);
    }

    #[test]
    fn unions_and_joins() {
        let a = complete(2).unwrap();
        let b = path(3).unwrap();
        let u = disjoint_union(&a, &b);
        assert_eq!((u.n(), u.edge_count()), (5, 3));
        assert!(!u.is_connected());
        let j = join(&a, &b);
        assert_eq!(j.edge_count(), 3 + 6);
        assert!(j.is_connected());
    }
}
