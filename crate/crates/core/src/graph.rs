//! Simple undirected graphs with an optional distinguished root.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{parse_err, Error, Result};

pub type Vertex = usize;

/// A finite simple undirected graph. Neighbor lists are kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    root: Option<Vertex>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            root: None,
        }
    }

    /// Builds a graph from an edge list. Duplicate edges are merged; self-loops
    /// are rejected.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if let Err(pos) = self.adj[u].binary_search(&v) {
            self.adj[u].insert(pos, v);
            let pos = self.adj[v].binary_search(&u).unwrap_err();
            self.adj[v].insert(pos, u);
        }
        Ok(())
    }

    /// Removes the edge `uv` if present; returns whether it existed.
    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        if u >= self.n() || v >= self.n() {
            return false;
        }
        match self.adj[u].binary_search(&v) {
            Ok(pos) => {
                self.adj[u].remove(pos);
                let pos = self.adj[v].binary_search(&u).unwrap();
                self.adj[v].remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    pub fn with_root(mut self, root: Vertex) -> Result<Self> {
        self.check_vertex(root)?;
        self.root = Some(root);
        Ok(self)
    }

    pub fn set_root(&mut self, root: Option<Vertex>) -> Result<()> {
        if let Some(r) = root {
            self.check_vertex(r)?;
        }
        self.root = root;
        Ok(())
    }

    pub fn root(&self) -> Option<Vertex> {
        self.root
    }

    pub fn require_root(&self) -> Result<Vertex> {
        self.root.ok_or(Error::NoRoot)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                vertex: v,
                n: self.n(),
            })
        }
    }

    /// `N(v) ∩ set`, ascending. `v` itself is never included.
    pub fn restricted_neighborhood(&self, v: Vertex, set: &[Vertex]) -> Result<Vec<Vertex>> {
        self.check_vertex(v)?;
        for &s in set {
            self.check_vertex(s)?;
        }
        Ok(self.adj[v]
            .iter()
            .copied()
            .filter(|u| set.contains(u))
            .collect())
    }

    /// BFS distances from `source`; `None` for unreachable vertices.
    pub fn distances_from(&self, source: Vertex) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &v in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.distances_from(0).iter().all(Option::is_some)
    }

    /// Largest eccentricity, via BFS from every vertex.
    pub fn diameter(&self) -> Result<usize> {
        let mut best = 0;
        for v in self.vertices() {
            for d in self.distances_from(v) {
                best = best.max(d.ok_or(Error::Disconnected)?);
            }
        }
        Ok(best)
    }

    /// Connected components of the graph with `removed` deleted. Each
    /// component is sorted; components are ordered by their least vertex.
    pub fn components_without(&self, removed: &[bool]) -> Vec<Vec<Vertex>> {
        let mut seen = removed.to_vec();
        let mut comps = Vec::new();
        for start in self.vertices() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// The complement graph (root preserved).
    pub fn complement(&self) -> Graph {
        let n = self.n();
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in (u + 1)..n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        g.root = self.root;
        g
    }

    /// Parses the text format: a header line `n root` (root `-1` when unset)
    /// followed by one `u v` edge per line. Blank lines and `#` comments are
    /// ignored.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
            .filter(|(_, l)| !l.is_empty());
        let (lineno, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(parse_err(lineno, "header must be `n root`"));
        }
        let n: usize = fields[0]
            .parse()
            .map_err(|_| parse_err(lineno, "bad vertex count"))?;
        let root: i64 = fields[1]
            .parse()
            .map_err(|_| parse_err(lineno, "bad root"))?;
        let mut g = Graph::empty(n);
        for (lineno, line) in lines {
            let mut it = line.split_whitespace();
            let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
                return Err(parse_err(lineno, "edge line must be `u v`"));
            };
            let u = a.parse().map_err(|_| parse_err(lineno, "bad vertex"))?;
            let v = b.parse().map_err(|_| parse_err(lineno, "bad vertex"))?;
            g.add_edge(u, v).map_err(|e| parse_err(lineno, e.to_string()))?;
        }
        match root {
            -1 => {}
            r if r >= 0 => g
                .set_root(Some(r as usize))
                .map_err(|e| parse_err(lineno, e.to_string()))?,
            _ => return Err(parse_err(lineno, "root must be -1 or a vertex")),
        }
        Ok(g)
    }

    pub fn to_text(&self) -> String {
        let root = self.root.map_or(-1, |r| r as i64);
        let mut out = format!("{} {}\n", self.n(), root);
        for (u, v) in self.edges() {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }
}
