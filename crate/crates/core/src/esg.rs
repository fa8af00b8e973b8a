//! The element selecting game and its construction from boundary
//! configurations.
//!
//! Mary and Dan alternately select distinct elements of a universe, Mary
//! first, for `j` rounds of one pick each. Mary wins as soon as some set of
//! the family is fully selected; an empty set is complete from the start.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::config::Configuration;
use crate::error::{parse_err, Error, Result};
use crate::family::GstDescriptor;
use crate::game::Player;
use crate::gst::view;
use crate::solver::Solver;

/// Universes are bitmasks.
pub const MAX_UNIVERSE: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EsgPlayer {
    Mary,
    Dan,
}

impl EsgPlayer {
    pub fn other(self) -> EsgPlayer {
        match self {
            EsgPlayer::Mary => EsgPlayer::Dan,
            EsgPlayer::Dan => EsgPlayer::Mary,
        }
    }

    /// The pebbling player Mary or Dan stands for.
    pub fn as_player(self) -> Player {
        match self {
            EsgPlayer::Mary => Player::Mover,
            EsgPlayer::Dan => Player::Defender,
        }
    }
}

impl std::fmt::Display for EsgPlayer {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            EsgPlayer::Mary => "mary",
            EsgPlayer::Dan => "dan",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EsgInstance {
    pub labels: Vec<String>,
    /// Indices into `labels`, sorted and distinct.
    pub sets: Vec<Vec<usize>>,
    pub rounds: usize,
}

impl EsgInstance {
    pub fn new(labels: Vec<String>, sets: Vec<Vec<usize>>, rounds: usize) -> Result<Self> {
        if labels.len() > MAX_UNIVERSE {
            return Err(Error::Unsupported(format!(
                "universe of {} elements exceeds {MAX_UNIVERSE}",
                labels.len()
            )));
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(l) = labels.iter().find(|l| !seen.insert(l.as_str())) {
            return Err(Error::InvalidSize(format!("duplicate label {l}")));
        }
        let mut norm = Vec::with_capacity(sets.len());
        for mut s in sets {
            if let Some(&e) = s.iter().find(|&&e| e >= labels.len()) {
                return Err(Error::InvalidSize(format!("set member {e} outside universe")));
            }
            s.sort_unstable();
            s.dedup();
            norm.push(s);
        }
        Ok(EsgInstance {
            labels,
            sets: norm,
            rounds,
        })
    }

    pub fn universe_len(&self) -> usize {
        self.labels.len()
    }

    fn masks(&self) -> Vec<u64> {
        self.sets
            .iter()
            .map(|s| s.iter().fold(0u64, |m, &e| m | 1 << e))
            .collect()
    }

    /// Format: `u p j`, then the `u` universe labels on one line, then `p`
    /// lines of set members by label (an empty line is the empty set).
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim_start().starts_with('#'));
        let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
        let nums: Vec<usize> = header
            .split_whitespace()
            .map(|w| w.parse().map_err(|_| parse_err(hl + 1, "expected `u p j`")))
            .collect::<Result<_>>()?;
        let &[u, p, j] = nums.as_slice() else {
            return Err(parse_err(hl + 1, "expected `u p j`"));
        };
        let (ll, label_line) = lines.next().ok_or_else(|| parse_err(hl + 2, "missing universe line"))?;
        let labels: Vec<String> = label_line.split_whitespace().map(str::to_owned).collect();
        if labels.len() != u {
            return Err(parse_err(ll + 1, format!("expected {u} labels, found {}", labels.len())));
        }
        let index: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let mut sets = Vec::with_capacity(p);
        for i in 0..p {
            let (sl, line) = lines
                .next()
                .ok_or_else(|| parse_err(ll + 2 + i, format!("expected {p} set lines")))?;
            let set = line
                .split_whitespace()
                .map(|w| {
                    index
                        .get(w)
                        .copied()
                        .ok_or_else(|| parse_err(sl + 1, format!("unknown element {w}")))
                })
                .collect::<Result<Vec<_>>>()?;
            sets.push(set);
        }
        if let Some((l, extra)) = lines.find(|(_, l)| !l.trim().is_empty()) {
            return Err(parse_err(l + 1, format!("unexpected trailing line `{extra}`")));
        }
        EsgInstance::new(labels, sets, j)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n{}\n", self.labels.len(), self.sets.len(), self.rounds, self.labels.join(" "));
        for s in &self.sets {
            let names: Vec<&str> = s.iter().map(|&e| self.labels[e].as_str()).collect();
            out.push_str(&names.join(" "));
            out.push('\n');
        }
        out
    }
}

/// A position: which elements are taken, who picks next, and how many picks
/// remain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EsgState {
    pub selected: u64,
    pub next_picker: EsgPlayer,
    pub picks_remaining: usize,
}

impl EsgState {
    pub fn initial(inst: &EsgInstance) -> Self {
        EsgState {
            selected: 0,
            next_picker: EsgPlayer::Mary,
            picks_remaining: 2 * inst.rounds,
        }
    }

    pub fn rounds_remaining(&self) -> usize {
        self.picks_remaining.div_ceil(2)
    }

    pub fn pick(&self, inst: &EsgInstance, e: usize) -> Result<EsgState> {
        if e >= inst.universe_len() || self.selected >> e & 1 == 1 || self.picks_remaining == 0 {
            return Err(Error::Unsupported(format!("element {e} cannot be picked")));
        }
        Ok(EsgState {
            selected: self.selected | 1 << e,
            next_picker: self.next_picker.other(),
            picks_remaining: self.picks_remaining - 1,
        })
    }
}

struct EsgSolver {
    full: u64,
    masks: Vec<u64>,
    /// Parity of the selection count at which Mary picks.
    mary_parity: u32,
    /// Keyed by selection; the pick count and picker follow from it.
    memo: HashMap<u64, bool>,
}

impl EsgSolver {
    fn complete(&self, selected: u64) -> bool {
        self.masks.iter().any(|&m| m & selected == m)
    }

    /// Whether Mary wins from `selected` with `left` picks remaining.
    fn mary_wins(&mut self, selected: u64, left: usize) -> bool {
        if self.complete(selected) {
            return true;
        }
        if left == 0 {
            return false;
        }
        if selected == self.full {
            debug_assert!(self.masks.is_empty(), "exhausted universe with an incomplete set");
            return false;
        }
        if let Some(&w) = self.memo.get(&selected) {
            return w;
        }
        let mary = selected.count_ones() % 2 == self.mary_parity;
        let mut free = self.full & !selected;
        let mut result = !mary;
        while free != 0 {
            let bit = free & free.wrapping_neg();
            free ^= bit;
            if self.mary_wins(selected | bit, left - 1) == mary {
                result = mary;
                break;
            }
        }
        self.memo.insert(selected, result);
        result
    }
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Winner under optimal play.
pub fn solve_esg(inst: &EsgInstance) -> EsgPlayer {
    winner_from(inst, &EsgState::initial(inst))
}

/// Winner from an arbitrary position.
pub fn winner_from(inst: &EsgInstance, state: &EsgState) -> EsgPlayer {
    let parity = state.selected.count_ones() % 2;
    let mut solver = EsgSolver {
        full: full_mask(inst.universe_len()),
        masks: inst.masks(),
        mary_parity: if state.next_picker == EsgPlayer::Mary { parity } else { 1 - parity },
        memo: HashMap::new(),
    };
    if solver.mary_wins(state.selected, state.picks_remaining) {
        EsgPlayer::Mary
    } else {
        EsgPlayer::Dan
    }
}

/// A winning pick for the player to move, if one exists.
pub fn best_pick(inst: &EsgInstance, state: &EsgState) -> Option<usize> {
    (0..inst.universe_len())
        .filter(|&e| state.selected >> e & 1 == 0)
        .find(|&e| {
            state
                .pick(inst, e)
                .map(|next| winner_from(inst, &next) == state.next_picker)
                .unwrap_or(false)
        })
}

/// How many rounds the game built from a boundary configuration lasts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum JRule {
    /// `j = k / 2`.
    HalfK,
    /// `j = min(k / 2, (C(x) - 2) / 2)`.
    CappedByX,
}

impl JRule {
    pub const ALL: [JRule; 2] = [JRule::HalfK, JRule::CappedByX];

    /// The rule that agrees with exhaustive search on every swept boundary
    /// configuration. `HalfK` overcounts rounds whenever `C(x) < k + 2`.
    pub const SELECTED: JRule = JRule::CappedByX;

    pub fn name(self) -> &'static str {
        match self {
            JRule::HalfK => "half-k",
            JRule::CappedByX => "capped-by-x",
        }
    }

    pub fn rounds(self, k: usize, c_x: usize) -> usize {
        match self {
            JRule::HalfK => k / 2,
            JRule::CappedByX => (k / 2).min(c_x.saturating_sub(2) / 2),
        }
    }
}

/// The game on the pebble-free S vertices with one set `N[v] ∩ S_0` per S
/// vertex `v`.
pub fn build_esg(gst: &GstDescriptor, c: &Configuration, rule: JRule) -> Result<EsgInstance> {
    let v = view(gst, c)?;
    if !v.is_boundary() {
        return Err(Error::Unsupported("not a boundary configuration".into()));
    }
    let x = v.x.expect("boundary has x");
    let g = gst.graph()?;
    let index: HashMap<usize, usize> = v.s0.iter().enumerate().map(|(i, &u)| (u, i)).collect();
    let sets = gst
        .s_vertices()
        .map(|w| {
            std::iter::once(w)
                .chain(g.neighbors(w).iter().copied())
                .filter_map(|u| index.get(&u).copied())
                .collect()
        })
        .collect();
    let labels = v.s0.iter().map(|u| u.to_string()).collect();
    EsgInstance::new(labels, sets, rule.rounds(v.k, c[x] as usize))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleVerdict {
    pub rule: JRule,
    pub rounds: usize,
    pub winner: Player,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub configuration: Configuration,
    pub brute_force: Player,
    pub verdicts: Vec<RuleVerdict>,
}

impl EquivalenceReport {
    pub fn agreeing_rules(&self) -> Vec<JRule> {
        self.verdicts.iter().filter(|v| v.agrees).map(|v| v.rule).collect()
    }
}

pub fn verify_equivalence(gst: &GstDescriptor, c: &Configuration) -> Result<EquivalenceReport> {
    let g = gst.graph()?;
    verify_equivalence_with(gst, c, &Solver::new(&g)?)
}

/// As [`verify_equivalence`] with a solver already built on `gst.graph()`.
pub fn verify_equivalence_with(gst: &GstDescriptor, c: &Configuration, solver: &Solver<'_>) -> Result<EquivalenceReport> {
    let brute_force = solver.solve_config(c)?;
    let verdicts = JRule::ALL
        .iter()
        .map(|&rule| {
            let inst = build_esg(gst, c, rule)?;
            let winner = solve_esg(&inst).as_player();
            Ok(RuleVerdict {
                rule,
                rounds: inst.rounds,
                winner,
                agrees: winner == brute_force,
            })
        })
        .collect::<Result<_>>()?;
    Ok(EquivalenceReport {
        configuration: c.clone(),
        brute_force,
        verdicts,
    })
}
