//! Exact minimax solver for the two-player pebbling game.
//!
//! Every move removes a pebble, so the game graph is a finite DAG. Only
//! Mover-to-move positions are memoized; they are keyed by the configuration
//! alone. Defender positions are expanded inline since their forbidden edge
//! is determined by the Mover move that produced them.

use std::hash::BuildHasherDefault;

use dashmap::DashMap;
use rustc_hash::{FxHashMap, FxHasher};

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::game::{Game, GameState, Move, Player};
use crate::graph::{Graph, Vertex};

type Fx = BuildHasherDefault<FxHasher>;

/// Concurrent table keyed by per-vertex counts.
pub(crate) enum Memo {
    /// Up to 16 vertices, one byte each.
    Packed(DashMap<u128, bool, Fx>),
    Wide(DashMap<Box<[u8]>, bool, Fx>),
}

fn pack(c: &[u8]) -> u128 {
    c.iter()
        .enumerate()
        .fold(0u128, |acc, (i, &x)| acc | (x as u128) << (8 * i))
}

impl Memo {
    pub(crate) fn for_order(n: usize) -> Self {
        if n <= 16 {
            Memo::Packed(DashMap::default())
        } else {
            Memo::Wide(DashMap::default())
        }
    }

    pub(crate) fn get(&self, c: &[u8]) -> Option<bool> {
        match self {
            Memo::Packed(m) => m.get(&pack(c)).map(|r| *r),
            Memo::Wide(m) => m.get(c).map(|r| *r),
        }
    }

    pub(crate) fn insert(&self, c: &[u8], v: bool) {
        match self {
            Memo::Packed(m) => {
                m.insert(pack(c), v);
            }
            Memo::Wide(m) => {
                m.insert(c.into(), v);
            }
        }
    }

    pub(crate) fn len(&self) -> usize {
        match self {
            Memo::Packed(m) => m.len(),
            Memo::Wide(m) => m.len(),
        }
    }
}

/// Reusable solver for one rooted graph. Shares its table across calls and
/// across threads.
pub struct Solver<'g> {
    game: Game<'g>,
    /// Neighbors of each vertex, nearest-to-root first.
    toward_root: Vec<Vec<Vertex>>,
    memo: Memo,
}

impl<'g> Solver<'g> {
    pub fn new(graph: &'g Graph) -> Result<Self> {
        Self::from_game(Game::new(graph)?)
    }

    pub fn with_root(graph: &'g Graph, root: Vertex) -> Result<Self> {
        Self::from_game(Game::with_root(graph, root)?)
    }

    fn from_game(game: Game<'g>) -> Result<Self> {
        let g = game.graph();
        let dist = g.distances_from(game.root());
        let toward_root = g
            .vertices()
            .map(|u| {
                let mut ns = g.neighbors(u).to_vec();
                ns.sort_by_key(|&v| (dist[v], v));
                ns
            })
            .collect();
        Ok(Solver {
            memo: Memo::for_order(g.n()),
            toward_root,
            game,
        })
    }

    pub fn game(&self) -> &Game<'g> {
        &self.game
    }

    pub fn root(&self) -> Vertex {
        self.game.root()
    }

    /// Number of memoized Mover positions.
    pub fn table_len(&self) -> usize {
        self.memo.len()
    }

    /// Winner under optimal play from `state`.
    pub fn solve(&self, state: &GameState) -> Result<Player> {
        self.game.check_state(state)?;
        let mut c = state.config.counts().to_vec();
        let root = self.root();
        let mover_wins = if c[root] > 0 {
            true
        } else {
            match state.turn {
                Player::Mover => self.mover_node(&mut c),
                Player::Defender => self.defender_node(&mut c, state.forbidden),
            }
        };
        Ok(if mover_wins {
            Player::Mover
        } else {
            Player::Defender
        })
    }

    /// Winner with Mover to move on `config`.
    pub fn solve_config(&self, config: &Configuration) -> Result<Player> {
        self.solve(&GameState::new(config.clone()))
    }

    /// Whether Mover wins with Mover to move. Counts must fit the graph.
    pub fn mover_wins(&self, counts: &[u8]) -> bool {
        let mut c = counts.to_vec();
        c[self.root()] > 0 || self.mover_node(&mut c)
    }

    fn mover_node(&self, c: &mut [u8]) -> bool {
        if let Some(v) = self.memo.get(c) {
            return v;
        }
        let root = self.root();
        let mut wins = false;
        'outer: for u in 0..c.len() {
            if c[u] < 2 {
                continue;
            }
            for &v in &self.toward_root[u] {
                if v == root {
                    wins = true;
                    break 'outer;
                }
                c[u] -= 2;
                c[v] += 1;
                let w = self.defender_node(c, Some(Move::new(v, u)));
                c[u] += 2;
                c[v] -= 1;
                if w {
                    wins = true;
                    break 'outer;
                }
            }
        }
        self.memo.insert(c, wins);
        wins
    }

    /// True when Mover wins after Defender's reply. Root is empty on entry.
    fn defender_node(&self, c: &mut [u8], forbidden: Option<Move>) -> bool {
        let root = self.root();
        let mut any = false;
        for u in 0..c.len() {
            if c[u] < 2 {
                continue;
            }
            for &v in self.toward_root[u].iter().rev() {
                if forbidden == Some(Move::new(u, v)) {
                    continue;
                }
                any = true;
                if v == root {
                    continue;
                }
                c[u] -= 2;
                c[v] += 1;
                let w = self.mover_node(c);
                c[u] += 2;
                c[v] -= 1;
                if !w {
                    return false;
                }
            }
        }
        // No legal reply: the game ends with the root empty.
        any
    }

    /// A move that preserves the game value for the player to move; the first
    /// such move in `(from, to)` order. When the position is lost, the first
    /// legal move.
    pub fn best_move(&self, state: &GameState) -> Result<Move> {
        if self.game.terminal_winner(state).is_some() {
            return Err(Error::Terminal);
        }
        let value = self.solve(state)?;
        let moves = self.game.legal_moves(state);
        if value == state.turn {
            for &m in &moves {
                if self.solve(&self.game.apply_move(state, m)?)? == value {
                    return Ok(m);
                }
            }
        }
        Ok(moves[0])
    }

    /// Strategy that plays `best_move`.
    pub fn strategy(&self) -> impl FnMut(&Game<'_>, &GameState) -> Option<Move> + '_ {
        move |_: &Game<'_>, s: &GameState| self.best_move(s).ok()
    }
}

pub fn solve(g: &Graph, state: &GameState) -> Result<Player> {
    Solver::new(g)?.solve(state)
}

pub fn best_move(g: &Graph, state: &GameState) -> Result<Move> {
    Solver::new(g)?.best_move(state)
}

/// Exhaustive search where Mover plays optimally and Defender is pinned to
/// `defender`. Returns the winner. A Defender strategy that declines to move
/// in a live position, or moves illegally, is a fault.
pub fn solve_against_defender<F>(game: &Game<'_>, start: &GameState, defender: &F) -> Result<Player>
where
    F: Fn(&GameState) -> Option<Move>,
{
    PinnedSearch::new(game, defender).winner(start)
}

/// [`solve_against_defender`] with one table shared across many starts. The
/// pinned Defender is a function of the state alone, so Mover-to-move values
/// do not depend on the start they were reached from.
pub struct PinnedSearch<'a, 'g, F> {
    game: &'a Game<'g>,
    defender: &'a F,
    memo: FxHashMap<Vec<u8>, bool>,
}

impl<'a, 'g, F> PinnedSearch<'a, 'g, F>
where
    F: Fn(&GameState) -> Option<Move>,
{
    pub fn new(game: &'a Game<'g>, defender: &'a F) -> Self {
        PinnedSearch {
            game,
            defender,
            memo: FxHashMap::default(),
        }
    }

    pub fn winner(&mut self, start: &GameState) -> Result<Player> {
        self.game.check_state(start)?;
        let wins = self.node(start)?;
        Ok(if wins { Player::Mover } else { Player::Defender })
    }

    fn node(&mut self, state: &GameState) -> Result<bool> {
        if let Some(w) = self.game.terminal_winner(state) {
            return Ok(w == Player::Mover);
        }
        match state.turn {
            Player::Mover => {
                if let Some(&v) = self.memo.get(state.config.counts()) {
                    return Ok(v);
                }
                let mut wins = false;
                for m in self.game.legal_moves(state) {
                    let next = self.game.apply_move(state, m)?;
                    if self.node(&next)? {
                        wins = true;
                        break;
                    }
                }
                self.memo.insert(state.config.counts().to_vec(), wins);
                Ok(wins)
            }
            Player::Defender => {
                let m = (self.defender)(state).ok_or_else(|| {
                    Error::StrategyFault("defender declined to move in a live position".into())
                })?;
                let next = self.game.apply_move(state, m).map_err(|_| {
                    Error::StrategyFault(format!("defender chose illegal move {}->{}", m.from, m.to))
                })?;
                self.node(&next)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{complete, path};

    fn cfg(c: &[u8]) -> Configuration {
        Configuration::new(c.to_vec()).unwrap()
    }

    /// Plain recursive minimax over full `GameState`s, no memo, no ordering.
    fn naive(game: &Game<'_>, s: &GameState) -> Player {
        if let Some(w) = game.terminal_winner(s) {
            return w;
        }
        let outcomes: Vec<Player> = game
            .legal_moves(s)
            .into_iter()
            .map(|m| naive(game, &game.apply_move(s, m).unwrap()))
            .collect();
        if outcomes.contains(&s.turn) {
            s.turn
        } else {
            s.turn.other()
        }
    }

    #[test]
    fn complete_graph_examples() {
        let g = complete(4).unwrap().with_root(0).unwrap();
        assert_eq!(
            solve(&g, &GameState::new(cfg(&[0, 1, 1, 1]))).unwrap(),
            Player::Defender
        );
        assert_eq!(
            solve(&g, &GameState::new(cfg(&[0, 2, 0, 0]))).unwrap(),
            Player::Mover
        );
    }

    #[test]
    fn p3_examples() {
        let g = path(3).unwrap().with_root(0).unwrap();
        assert_eq!(solve(&g, &GameState::new(cfg(&[0, 0, 4]))).unwrap(), Player::Mover);
        assert_eq!(solve(&g, &GameState::new(cfg(&[0, 0, 3]))).unwrap(), Player::Defender);
    }

    #[test]
    fn forced_reverse_ends_the_game() {
        // Defender's only raw move is the forbidden reverse.
        let g = path(3).unwrap().with_root(0).unwrap();
        let s = GameState {
            config: cfg(&[0, 0, 2]),
            turn: Player::Defender,
            forbidden: Some(Move::new(2, 1)),
        };
        assert_eq!(solve(&g, &s).unwrap(), Player::Defender);
    }

    #[test]
    fn matches_naive_minimax_on_small_graphs() {
        let graphs = [
            path(4).unwrap().with_root(0).unwrap(),
            path(4).unwrap().with_root(1).unwrap(),
            complete(4).unwrap().with_root(2).unwrap(),
            crate::family::grid(2, 3).unwrap().with_root(0).unwrap(),
            crate::family::complete_multipartite(&[2, 3]).unwrap().with_root(0).unwrap(),
        ];
        for g in &graphs {
            let solver = Solver::new(g).unwrap();
            let game = Game::new(g).unwrap();
            for size in 0..=9 {
                for c in crate::config::enumerate_configurations(g.n(), size) {
                    let s = GameState::new(c);
                    assert_eq!(solver.solve(&s).unwrap(), naive(&game, &s), "{:?}", s.config);
                }
            }
        }
    }

    #[test]
    fn best_move_examples() {
        let g = complete(3).unwrap().with_root(0).unwrap();
        let s = GameState::new(cfg(&[0, 2, 0]));
        assert_eq!(best_move(&g, &s).unwrap(), Move::new(1, 0));
        let done = GameState::new(cfg(&[1, 0, 0]));
        assert_eq!(best_move(&g, &done), Err(Error::Terminal));
    }

    #[test]
    fn optimal_play_reproduces_solve() {
        let g = path(4).unwrap().with_root(0).unwrap();
        let solver = Solver::new(&g).unwrap();
        for size in 0..=10 {
            for c in crate::config::enumerate_configurations(4, size) {
                let s = GameState::new(c);
                let value = solver.solve(&s).unwrap();
                if let Some(_) = solver.game().terminal_winner(&s) {
                    continue;
                }
                let m = solver.best_move(&s).unwrap();
                let next = solver.game().apply_move(&s, m).unwrap();
                if value == Player::Mover {
                    assert_eq!(solver.solve(&next).unwrap(), Player::Mover);
                }
                let mut a = solver.strategy();
                let mut b = solver.strategy();
                let t = solver.game().play(&s, &mut a, &mut b).unwrap();
                assert_eq!(t.winner, value);
                assert!(t.moves.len() <= s.config.size() as usize);
            }
        }
    }

    #[test]
    fn pinned_search_against_first_move() {
        let g = path(3).unwrap().with_root(0).unwrap();
        let game = Game::new(&g).unwrap();
        let first = |s: &GameState| game.legal_moves(s).into_iter().next();
        let s = GameState::new(cfg(&[0, 0, 4]));
        assert_eq!(solve_against_defender(&game, &s, &first).unwrap(), Player::Mover);
        let s = GameState::new(cfg(&[0, 0, 3]));
        assert_eq!(solve_against_defender(&game, &s, &first).unwrap(), Player::Defender);
    }
}
