//! Cut-set certificates that the two-player pebbling number is unbounded,
//! and the Defender strategy they license.
//!
//! A certificate is a cut set `S` (root outside it) with root component
//! `G_0` of `G - S`, such that every `v` in `S` has at least two neighbors
//! outside `G_0 ∪ S`, and every vertex `x` outside `G_0 ∪ S` adjacent to `S`
//! has at least two neighbors outside `S`. From any configuration supported
//! off `G_0 ∪ S`, Defender can keep every pebble out of `G_0` forever.

use serde::{Deserialize, Serialize};

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::game::{Game, GameState, Move, Strategy};
use crate::graph::{Graph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfinityCertificate {
    pub cut_set: Vec<Vertex>,
    pub root_component: Vec<Vertex>,
}

fn mask(n: usize, vs: &[Vertex]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &v in vs {
        m[v] = true;
    }
    m
}

impl InfinityCertificate {
    /// Checks every certificate condition directly against `g` and `root`.
    pub fn is_valid(&self, g: &Graph, root: Vertex) -> bool {
        let n = g.n();
        if self.cut_set.iter().chain(&self.root_component).any(|&v| v >= n) {
            return false;
        }
        let in_s = mask(n, &self.cut_set);
        if in_s[root] || !self.root_component.contains(&root) {
            return false;
        }
        let comps = g.components_without(&in_s);
        let Some(g0) = comps.iter().find(|c| c.contains(&root)) else {
            return false;
        };
        if *g0 != self.root_component || comps.len() < 2 {
            return false;
        }
        let in_g0 = mask(n, g0);
        let outside = |v: Vertex| !in_s[v] && !in_g0[v];
        let s_ok = self
            .cut_set
            .iter()
            .all(|&v| g.neighbors(v).iter().filter(|&&u| outside(u)).count() >= 2);
        let boundary_ok = g.vertices().filter(|&x| outside(x)).all(|x| {
            let touches_s = g.neighbors(x).iter().any(|&u| in_s[u]);
            !touches_s || g.neighbors(x).iter().filter(|&&u| !in_s[u]).count() >= 2
        });
        s_ok && boundary_ok
    }

    /// Vertices where a starting configuration may place pebbles.
    pub fn supported_vertices(&self, g: &Graph) -> Vec<Vertex> {
        let in_s = mask(g.n(), &self.cut_set);
        let in_g0 = mask(g.n(), &self.root_component);
        g.vertices().filter(|&v| !in_s[v] && !in_g0[v]).collect()
    }
}

/// Tries every cut set of size `1..=max_cut` not containing `r`, smallest
/// first and lexicographically within a size. `None` proves nothing.
pub fn infinity_certificate(g: &Graph, r: Vertex, max_cut: usize) -> Result<Option<InfinityCertificate>> {
    g.check_vertex(r)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    // A cut vertex needs two neighbors beyond the root side.
    let candidates: Vec<Vertex> = g.vertices().filter(|&v| v != r && g.degree(v) >= 2).collect();
    for size in 1..=max_cut.min(candidates.len()) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let cut: Vec<Vertex> = idx.iter().map(|&i| candidates[i]).collect();
            if let Some(cert) = try_cut(g, r, &cut) {
                return Ok(Some(cert));
            }
            // Next combination.
            let mut i = size;
            while i > 0 && idx[i - 1] == candidates.len() - size + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    Ok(None)
}

fn try_cut(g: &Graph, r: Vertex, cut: &[Vertex]) -> Option<InfinityCertificate> {
    let in_s = mask(g.n(), cut);
    let comps = g.components_without(&in_s);
    if comps.len() < 2 {
        return None;
    }
    let g0 = comps.into_iter().find(|c| c.contains(&r))?;
    let cert = InfinityCertificate {
        cut_set: cut.to_vec(),
        root_component: g0,
    };
    cert.is_valid(g, r).then_some(cert)
}

/// Defender strategy that never lets a pebble into the root component.
///
/// When Mover doubles up a cut vertex, Defender moves those pebbles out to
/// the far side. Otherwise Defender moves between non-cut vertices off the
/// root side, and only as a last resort onto an empty cut vertex.
#[derive(Clone, Debug)]
pub struct CutsetDefender {
    in_s: Vec<bool>,
    in_g0: Vec<bool>,
}

impl CutsetDefender {
    pub fn new(g: &Graph, root: Vertex, cert: &InfinityCertificate) -> Result<Self> {
        if !cert.is_valid(g, root) {
            return Err(Error::Unsupported("certificate does not hold on this graph".into()));
        }
        Ok(CutsetDefender {
            in_s: mask(g.n(), &cert.cut_set),
            in_g0: mask(g.n(), &cert.root_component),
        })
    }

    /// Rejects configurations with pebbles on the cut set or root side.
    pub fn check_start(&self, config: &Configuration) -> Result<()> {
        if config.len() != self.in_s.len() {
            return Err(Error::ConfigLength {
                expected: self.in_s.len(),
                got: config.len(),
            });
        }
        match (0..config.len()).find(|&v| config[v] > 0 && (self.in_s[v] || self.in_g0[v])) {
            Some(v) => Err(Error::Unsupported(format!(
                "vertex {v} holds pebbles but lies in the cut set or root component"
            ))),
            None => Ok(()),
        }
    }

    pub fn choose(&self, game: &Game<'_>, state: &GameState) -> Option<Move> {
        let moves = game.legal_moves(state);
        let c = &state.config;
        let far = |v: Vertex| !self.in_s[v] && !self.in_g0[v];
        if let Some(v) = (0..c.len()).find(|&v| self.in_s[v] && c[v] >= 2) {
            if let Some(&m) = moves.iter().find(|m| m.from == v && far(m.to)) {
                return Some(m);
            }
        }
        moves
            .iter()
            .find(|m| far(m.from) && far(m.to))
            .or_else(|| moves.iter().find(|m| self.in_s[m.to] && c[m.to] == 0))
            .or_else(|| moves.first())
            .copied()
    }
}

impl Strategy for CutsetDefender {
    fn choose(&mut self, game: &Game<'_>, state: &GameState) -> Option<Move> {
        CutsetDefender::choose(self, game, state)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{complete, grid};
    use crate::game::Player;
    use crate::solver::solve_against_defender;

    fn tree_exemplar() -> Graph {
        // r=0, c=1, x1=2, x2=3, y1=4, y1'=5, y2=6, y2'=7
        Graph::from_edges(8, &[(0, 1), (1, 2), (1, 3), (2, 4), (2, 5), (3, 6), (3, 7)])
            .unwrap()
            .with_root(0)
            .unwrap()
    }

    #[test]
    fn grid_corner_certificate() {
        let g = grid(4, 4).unwrap();
        let cert = infinity_certificate(&g, 0, 2).unwrap().unwrap();
        assert_eq!(cert.cut_set, vec![1, 4]);
        assert_eq!(cert.root_component, vec![0]);
    }

    #[test]
    fn tree_certificate() {
        let g = tree_exemplar();
        let cert = infinity_certificate(&g, 0, 1).unwrap().unwrap();
        assert_eq!(cert.cut_set, vec![1]);
        assert!(cert.is_valid(&g, 0));
    }

    #[test]
    fn complete_graphs_have_none() {
        for n in 2..=6 {
            let g = complete(n).unwrap();
            for r in 0..n {
                assert_eq!(infinity_certificate(&g, r, n).unwrap(), None);
            }
        }
    }

    #[test]
    fn invalid_certificates_rejected() {
        let g = grid(4, 4).unwrap();
        let bad = InfinityCertificate {
            cut_set: vec![1],
            root_component: vec![0],
        };
        assert!(!bad.is_valid(&g, 0));
        assert!(CutsetDefender::new(&g, 0, &bad).is_err());
    }

    #[test]
    fn start_outside_family_rejected() {
        let g = tree_exemplar();
        let cert = infinity_certificate(&g, 0, 1).unwrap().unwrap();
        let d = CutsetDefender::new(&g, 0, &cert).unwrap();
        let mut c = vec![0u8; 8];
        c[4] = 9;
        assert!(d.check_start(&Configuration::new(c.clone()).unwrap()).is_ok());
        c[0] = 1;
        assert!(d.check_start(&Configuration::new(c.clone()).unwrap()).is_err());
        c[0] = 0;
        c[1] = 1;
        assert!(d.check_start(&Configuration::new(c).unwrap()).is_err());
    }

    #[test]
    fn cutset_defender_beats_exhaustive_mover_on_tree() {
        let g = tree_exemplar();
        let game = Game::new(&g).unwrap();
        let cert = infinity_certificate(&g, 0, 1).unwrap().unwrap();
        let d = CutsetDefender::new(&g, 0, &cert).unwrap();
        let support = cert.supported_vertices(&g);
        for size in 0..=8 {
            for c in crate::config::enumerate_configurations(support.len(), size) {
                let mut counts = vec![0u8; 8];
                for (i, &v) in support.iter().enumerate() {
                    counts[v] = c[i];
                }
                let start = GameState::new(Configuration::new(counts).unwrap());
                let w = solve_against_defender(&game, &start, &|s: &GameState| d.choose(&game, s)).unwrap();
                assert_eq!(w, Player::Defender, "{:?}", start.config);
            }
        }
    }
}
