//! Closed-form winner classification on `(K_1 ∪ T) ∨ H` with `|T| >= 2`.
//!
//! Statistics of a configuration: `k` is the number of pebble-free vertices
//! of S and `C_T = Σ_{v∈T} ⌊C(v)/2⌋` counts the pebbling moves available in
//! T. Away from the boundary case the winner depends only on `k`, `C_T` and
//! the parities on T. The boundary case (`k` even, `C_T = k + 2`, exactly one
//! positive even vertex `x` in T) depends on the structure of H and reduces
//! to the element selecting game.

use serde::{Deserialize, Serialize};

use crate::config::{enumerate_configurations, Configuration};
use crate::error::{Error, Result};
use crate::esg::{build_esg, solve_esg, JRule};
use crate::family::GstDescriptor;
use crate::game::Player;
use crate::graph::{Graph, Vertex};
use crate::solver::Solver;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GstConfigView {
    pub k: usize,
    pub c_t: u32,
    pub s0: Vec<Vertex>,
    pub s1: Vec<Vertex>,
    /// T vertices with an even count, zero included.
    pub t_evens: Vec<Vertex>,
    /// The single even T vertex when it is unique and holds at least 2.
    pub x: Option<Vertex>,
    /// Root pebbled or an S vertex holding two or more pebbles.
    pub trivial: bool,
}

impl GstConfigView {
    pub fn is_boundary(&self) -> bool {
        !self.trivial && self.k % 2 == 0 && self.c_t as usize == self.k + 2 && self.x.is_some()
    }
}

pub fn view(gst: &GstDescriptor, c: &Configuration) -> Result<GstConfigView> {
    if c.len() != gst.n() {
        return Err(Error::ConfigLength {
            expected: gst.n(),
            got: c.len(),
        });
    }
    let (s0, s1): (Vec<Vertex>, Vec<Vertex>) = gst.s_vertices().partition(|&v| c[v] == 0);
    let t_evens: Vec<Vertex> = gst.t_vertices().filter(|&v| c[v] % 2 == 0).collect();
    let x = match t_evens.as_slice() {
        &[x] if c[x] >= 2 => Some(x),
        _ => None,
    };
    Ok(GstConfigView {
        k: s0.len(),
        c_t: gst.t_vertices().map(|v| c[v] as u32 / 2).sum(),
        trivial: c[GstDescriptor::ROOT] > 0 || gst.s_vertices().any(|v| c[v] >= 2),
        s0,
        s1,
        t_evens,
        x,
    })
}

/// Every boundary configuration of size at most `max_size`: S holds 0 or 1
/// per vertex with an even number free, one T vertex `x` holds an even
/// count of at least 2, the rest of T is odd, and `C_T = k + 2`.
pub fn boundary_configurations(gst: &GstDescriptor, max_size: u32) -> Result<Vec<Configuration>> {
    if gst.t < 2 {
        return Err(Error::InvalidSize("boundary configurations need |T| >= 2".into()));
    }
    let s_first = gst.s_vertices().start;
    let t: Vec<Vertex> = gst.t_vertices().collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << gst.s {
        let pebbled = mask.count_ones();
        let k = gst.s as u32 - pebbled;
        if k % 2 == 1 {
            continue;
        }
        for (xi, &x) in t.iter().enumerate() {
            for half in 1..=k + 2 {
                let rest = k + 2 - half;
                // Odd vertices carry 2a + 1 pebbles for a total of `rest` moves.
                let floor = pebbled + 2 * half + 2 * rest + (t.len() as u32 - 1);
                if floor > max_size {
                    continue;
                }
                for moves in enumerate_configurations(t.len() - 1, rest) {
                    let mut c = vec![0u8; gst.n()];
                    for i in 0..gst.s {
                        c[s_first + i] = (mask >> i & 1) as u8;
                    }
                    c[x] = (2 * half) as u8;
                    let others = t.iter().enumerate().filter(|&(i, _)| i != xi).map(|(_, &v)| v);
                    for (v, a) in others.zip(moves.counts()) {
                        c[v] = 2 * a + 1;
                    }
                    out.push(Configuration::new(c)?);
                }
            }
        }
    }
    Ok(out)
}

/// Which result decided a classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    TrivialConfig,
    KOddTable,
    KEvenTable,
    AllOddT,
    MultiEvenT,
    #[serde(rename = "C(x)>=k+2")]
    LargeX,
    ClosedNeighborhoodPebbled,
    #[serde(rename = "C(x)=2-defender")]
    SmallXDefender,
    #[serde(rename = "C(x)=4-corollary")]
    FourCorollary,
    MultipartiteS,
    EsgFallback,
    BruteForceFallback,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::TrivialConfig => "trivial-config",
            Rule::KOddTable => "k-odd-table",
            Rule::KEvenTable => "k-even-table",
            Rule::AllOddT => "all-odd-T",
            Rule::MultiEvenT => "multi-even-T",
            Rule::LargeX => "C(x)>=k+2",
            Rule::ClosedNeighborhoodPebbled => "closed-neighborhood-pebbled",
            Rule::SmallXDefender => "C(x)=2-defender",
            Rule::FourCorollary => "C(x)=4-corollary",
            Rule::MultipartiteS => "multipartite-S",
            Rule::EsgFallback => "esg-fallback",
            Rule::BruteForceFallback => "brute-force-fallback",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationOutcome {
    pub winner: Player,
    pub rule: Rule,
}

/// How boundary configurations not settled by a closed-form rule are decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fallback {
    Esg(JRule),
    BruteForce,
}

impl Default for Fallback {
    fn default() -> Self {
        Fallback::Esg(JRule::SELECTED)
    }
}

/// `N_{S_0}(v)` for an S vertex `v`.
fn free_neighbors(g: &Graph, v: Vertex, free: &[bool]) -> Vec<Vertex> {
    g.neighbors(v).iter().copied().filter(|&u| free[u]).collect()
}

/// The C(x) = 4 corollary as literally stated. Mover clause: some `v ∈ S_0`
/// such that for every other `u ∈ S_0`, either some pebbled `w` has
/// `N_{S_0}(w)` equal to `{v}` or `{u, v}`, or `N_{S_0}(u) = {v}`. Defender
/// clause: for every `v ∈ S_0` some other `u ∈ S_0` has no such `w` and
/// `N_{S_0}(u) ≠ {v}`. The Defender clause ignores the sets contributed by
/// free vertices and is not sound; [`four_corollary`] is the exact form.
pub fn four_corollary_literal(g: &Graph, view: &GstConfigView) -> Option<Player> {
    let mut free = vec![false; g.n()];
    for &v in &view.s0 {
        free[v] = true;
    }
    let pebbled_sets: Vec<Vec<Vertex>> = view.s1.iter().map(|&w| free_neighbors(g, w, &free)).collect();
    let covered = |v: Vertex, u: Vertex| {
        let uv = if u < v { vec![u, v] } else { vec![v, u] };
        pebbled_sets.iter().any(|n| *n == [v] || *n == uv)
    };
    let points_at = |u: Vertex, v: Vertex| free_neighbors(g, u, &free) == [v];
    let mover = view.s0.iter().any(|&v| {
        view.s0
            .iter()
            .filter(|&&u| u != v)
            .all(|&u| covered(v, u) || points_at(u, v))
    });
    if mover {
        return Some(Player::Mover);
    }
    let defender = view.s0.iter().all(|&v| {
        view.s0
            .iter()
            .filter(|&&u| u != v)
            .any(|&u| !covered(v, u) && !points_at(u, v))
    });
    defender.then_some(Player::Defender)
}

/// The element selecting sets `N[w] ∩ S_0` for every S vertex `w`.
fn selecting_sets(g: &Graph, view: &GstConfigView) -> Vec<Vec<Vertex>> {
    let mut free = vec![false; g.n()];
    for &v in &view.s0 {
        free[v] = true;
    }
    let mut sets: Vec<Vec<Vertex>> = view.s1.iter().map(|&w| free_neighbors(g, w, &free)).collect();
    sets.extend(view.s0.iter().map(|&w| {
        let mut n = free_neighbors(g, w, &free);
        n.push(w);
        n
    }));
    sets
}

/// The C(x) = 4 boundary case: one selection each, so Mover wins exactly
/// when some free `v` meets every free `u ≠ v` in a pair `{u, v}` that
/// contains a whole selecting set. With more pebbles on `x` the Mover half
/// still holds.
pub fn four_corollary(g: &Graph, view: &GstConfigView) -> Player {
    let sets = selecting_sets(g, view);
    let within = |u: Vertex, v: Vertex| sets.iter().any(|n| n.iter().all(|&a| a == u || a == v));
    let mover = view.s0.iter().any(|&v| {
        view.s0
            .iter()
            .filter(|&&u| u != v)
            .all(|&u| within(u, v))
    });
    if mover {
        Player::Mover
    } else {
        Player::Defender
    }
}

/// Parts of H when H is complete multipartite (non-adjacency is an
/// equivalence relation), as S-vertex lists in global labels.
pub fn multipartite_parts(gst: &GstDescriptor) -> Option<Vec<Vec<Vertex>>> {
    let h = gst.h();
    let comps = h.complement().components_without(&vec![false; gst.s]);
    for (i, a) in comps.iter().enumerate() {
        for (j, b) in comps.iter().enumerate() {
            for &u in a {
                for &v in b {
                    if u != v && h.has_edge(u, v) != (i != j) {
                        return None;
                    }
                }
            }
        }
    }
    let off = 1 + gst.t;
    Some(
        comps
            .into_iter()
            .map(|c| c.into_iter().map(|v| v + off).collect())
            .collect(),
    )
}

/// Boundary winner when H is complete multipartite with `k_i` free vertices
/// in part `i`, from the threshold on `C(x)`.
pub fn multipartite_boundary_winner(part_free_counts: &[usize], c_x: u32) -> Result<Player> {
    let k: usize = part_free_counts.iter().sum();
    if k % 2 != 0 {
        return Err(Error::InvalidSize(format!("free vertex total {k} is odd")));
    }
    if c_x % 2 != 0 || c_x < 2 {
        return Err(Error::InvalidSize(format!("C(x) = {c_x} must be even and at least 2")));
    }
    let k_m = part_free_counts.iter().copied().max().unwrap_or(0);
    let c_x = c_x as usize;
    let mover = if 2 * k_m >= k {
        c_x >= 2 * (k - k_m) + 2
    } else {
        c_x >= k + 2
    };
    Ok(if mover { Player::Mover } else { Player::Defender })
}

pub fn classify(gst: &GstDescriptor, c: &Configuration, fallback: Fallback) -> Result<ClassificationOutcome> {
    let g = gst.graph()?;
    match fallback {
        Fallback::BruteForce => {
            let solver = Solver::new(&g)?;
            classify_with(gst, &g, c, fallback, Some(&solver))
        }
        Fallback::Esg(_) => classify_with(gst, &g, c, fallback, None),
    }
}

/// As [`classify`], reusing a prebuilt graph and, for brute-force fallback,
/// a solver on it.
pub fn classify_with(
    gst: &GstDescriptor,
    g: &Graph,
    c: &Configuration,
    fallback: Fallback,
    solver: Option<&Solver<'_>>,
) -> Result<ClassificationOutcome> {
    use Player::{Defender, Mover};
    if gst.t < 2 {
        return Err(Error::InvalidSize("classification needs |T| >= 2".into()));
    }
    let out = |winner, rule| Ok(ClassificationOutcome { winner, rule });
    let v = view(gst, c)?;
    if v.trivial {
        return out(Mover, Rule::TrivialConfig);
    }
    let (k, c_t) = (v.k as u32, v.c_t);
    if k % 2 == 1 {
        return out(if c_t > k { Mover } else { Defender }, Rule::KOddTable);
    }
    if c_t >= k + 3 {
        return out(Mover, Rule::KEvenTable);
    }
    if c_t <= k + 1 {
        return out(Defender, Rule::KEvenTable);
    }
    if v.t_evens.is_empty() {
        return out(Mover, Rule::AllOddT);
    }
    let Some(x) = v.x else {
        return out(Defender, Rule::MultiEvenT);
    };
    let c_x = c[x] as u32;
    if c_x >= k + 2 {
        return out(Mover, Rule::LargeX);
    }
    let mut pebbled = vec![false; g.n()];
    for &w in &v.s1 {
        pebbled[w] = true;
    }
    let closed = v.s1.iter().any(|&w| {
        g.neighbors(w)
            .iter()
            .filter(|&&u| gst.s_vertices().contains(&u))
            .all(|&u| pebbled[u])
    });
    if closed {
        return out(Mover, Rule::ClosedNeighborhoodPebbled);
    }
    // Past the previous rule every pebbled S vertex has a free S-neighbor.
    if c_x == 2 {
        return out(Defender, Rule::SmallXDefender);
    }
    match four_corollary(g, &v) {
        Mover => return out(Mover, Rule::FourCorollary),
        Defender if c_x == 4 => return out(Defender, Rule::FourCorollary),
        _ => {}
    }
    if c_x <= k {
        if let Some(parts) = multipartite_parts(gst) {
            let mut free: Vec<usize> = parts
                .iter()
                .map(|p| p.iter().filter(|&&u| c[u] == 0).count())
                .collect();
            free.sort_unstable();
            return out(multipartite_boundary_winner(&free, c_x)?, Rule::MultipartiteS);
        }
    }
    match fallback {
        Fallback::Esg(rule) => {
            let inst = build_esg(gst, c, rule)?;
            out(solve_esg(&inst).as_player(), Rule::EsgFallback)
        }
        Fallback::BruteForce => {
            let w = match solver {
                Some(s) => s.solve_config(c)?,
                None => Solver::new(g)?.solve_config(c)?,
            };
            out(w, Rule::BruteForceFallback)
        }
    }
}

/// Two-player pebbling number of any member of the class with `|T| >= 2`.
pub fn eta_gst_formula(s: usize, t: usize) -> Result<u32> {
    if s < 1 || t < 2 {
        return Err(Error::InvalidSize("need s >= 1 and t >= 2".into()));
    }
    let base = (t + 2 * s) as u32;
    Ok(if s % 2 == 0 { base + 4 } else { base + 3 })
}

/// Two-player pebbling number of a complete multipartite graph whose parts
/// all have at least 3 vertices.
pub fn eta_multipartite_formula(parts: &[usize]) -> Result<u32> {
    if parts.len() < 2 {
        return Err(Error::InvalidSize("need at least 2 parts".into()));
    }
    if parts.iter().any(|&a| a < 3) {
        return Err(Error::InvalidSize("every part must have at least 3 vertices".into()));
    }
    let n: usize = parts.iter().sum();
    let a1 = *parts.iter().min().unwrap();
    let base = (2 * n - a1) as u32;
    Ok(if (n - a1) % 2 == 0 { base + 3 } else { base + 2 })
}

/// Rooting in a part of size `a` gives the class with `s = n - a` and
/// `t = a - 1`; the maximum of that formula over parts.
pub fn eta_multipartite_by_roots(parts: &[usize]) -> Result<u32> {
    let n: usize = parts.iter().sum();
    parts
        .iter()
        .map(|&a| eta_gst_formula(n - a, a - 1))
        .try_fold(0, |acc, x| Ok(acc.max(x?)))
}

/// The size `η - 1` configuration on which Defender wins. For even `s`: T
/// holds one empty vertex, `t - 2` singletons and `2s + 5` on the last, S
/// empty. For odd `s`: one pebble on the first S vertex, T holds one empty
/// vertex, `t - 2` singletons and `2s + 3` on the last.
pub fn defender_witness(gst: &GstDescriptor) -> Result<Configuration> {
    let eta = eta_gst_formula(gst.s, gst.t)?;
    let mut c = vec![0u8; gst.n()];
    let t: Vec<Vertex> = gst.t_vertices().collect();
    for &v in &t[1..t.len() - 1] {
        c[v] = 1;
    }
    let last = *t.last().unwrap();
    if gst.s % 2 == 0 {
        c[last] = (2 * gst.s + 5) as u8;
    } else {
        c[gst.s_vertices().start] = 1;
        c[last] = (2 * gst.s + 3) as u8;
    }
    let c = Configuration::new(c)?;
    debug_assert_eq!(c.size(), eta - 1);
    Ok(c)
}

/// The odd-`s` configuration as literally described for the lower bound:
/// one pebble on an S vertex, one on each of `t - 1` T vertices and `2s + 1`
/// on the remaining T vertex. Its size is `t + 2s + 1`, which is `η - 2`.
pub fn odd_s_literal_witness(gst: &GstDescriptor) -> Result<Configuration> {
    if gst.s % 2 == 0 {
        return Err(Error::InvalidSize("defined for odd s only".into()));
    }
    let mut c = vec![0u8; gst.n()];
    c[gst.s_vertices().start] = 1;
    let t: Vec<Vertex> = gst.t_vertices().collect();
    for &v in &t[..t.len() - 1] {
        c[v] = 1;
    }
    c[*t.last().unwrap()] = (2 * gst.s + 1) as u8;
    Configuration::new(c)
}
