//! The two-player pebbling game: states, moves, and strategy-driven play.
//!
//! A round is a Mover turn followed by a Defender turn. Both turns are
//! mandatory. Defender may not immediately reverse the move Mover just made.
//! Mover wins as soon as the root holds a pebble (including at the start);
//! Defender wins when the root is empty and the player to move has no legal
//! move.

use serde::{Deserialize, Serialize};

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Player {
    Mover,
    Defender,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::Mover => Player::Defender,
            Player::Defender => Player::Mover,
        }
    }
}

impl std::fmt::Display for Player {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Player::Mover => "mover",
            Player::Defender => "defender",
        })
    }
}

/// Remove two pebbles from `from`, add one to the adjacent `to`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Move {
    pub from: Vertex,
    pub to: Vertex,
}

impl Move {
    pub fn new(from: Vertex, to: Vertex) -> Self {
        Move { from, to }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GameState {
    pub config: Configuration,
    pub turn: Player,
    /// Directed edge Defender may not use this turn. Only set on Defender's
    /// turn, to the reverse of Mover's preceding move.
    pub forbidden: Option<Move>,
}

impl GameState {
    /// Start of a game: Mover to move.
    pub fn new(config: Configuration) -> Self {
        GameState {
            config,
            turn: Player::Mover,
            forbidden: None,
        }
    }
}

/// A connected graph with a root, validated once for game use.
#[derive(Clone, Debug)]
pub struct Game<'g> {
    graph: &'g Graph,
    root: Vertex,
}

impl<'g> Game<'g> {
    pub fn new(graph: &'g Graph) -> Result<Self> {
        let root = graph.require_root()?;
        if !graph.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(Game { graph, root })
    }

    pub fn with_root(graph: &'g Graph, root: Vertex) -> Result<Self> {
        graph.check_vertex(root)?;
        if !graph.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(Game { graph, root })
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn root(&self) -> Vertex {
        self.root
    }

    /// Legal moves in ascending `(from, to)` order.
    pub fn legal_moves(&self, state: &GameState) -> Vec<Move> {
        let c = &state.config;
        let mut moves = Vec::new();
        for u in self.graph.vertices() {
            if c[u] < 2 {
                continue;
            }
            for &v in self.graph.neighbors(u) {
                let m = Move::new(u, v);
                if state.turn == Player::Defender && state.forbidden == Some(m) {
                    continue;
                }
                moves.push(m);
            }
        }
        moves
    }

    pub fn is_legal(&self, state: &GameState, m: Move) -> bool {
        m.from < self.graph.n()
            && state.config[m.from] >= 2
            && self.graph.has_edge(m.from, m.to)
            && !(state.turn == Player::Defender && state.forbidden == Some(m))
    }

    pub fn apply_move(&self, state: &GameState, m: Move) -> Result<GameState> {
        if !self.is_legal(state, m) {
            return Err(Error::IllegalMove {
                from: m.from,
                to: m.to,
            });
        }
        let mut config = state.config.clone();
        let counts = config.counts_mut();
        counts[m.from] -= 2;
        counts[m.to] += 1;
        let forbidden = match state.turn {
            Player::Mover => Some(Move::new(m.to, m.from)),
            Player::Defender => None,
        };
        Ok(GameState {
            config,
            turn: state.turn.other(),
            forbidden,
        })
    }

    pub fn terminal_winner(&self, state: &GameState) -> Option<Player> {
        if state.config[self.root] > 0 {
            Some(Player::Mover)
        } else if self.legal_moves(state).is_empty() {
            Some(Player::Defender)
        } else {
            None
        }
    }

    pub(crate) fn check_state(&self, state: &GameState) -> Result<()> {
        state.config.check_for(self.graph)
    }

    /// Runs the game to termination. A strategy that declines to move, or
    /// proposes an illegal move, is reported as a fault.
    pub fn play(
        &self,
        start: &GameState,
        mover: &mut dyn Strategy,
        defender: &mut dyn Strategy,
    ) -> Result<Transcript> {
        self.check_state(start)?;
        let mut state = start.clone();
        let mut moves = Vec::new();
        loop {
            if let Some(winner) = self.terminal_winner(&state) {
                return Ok(Transcript { moves, winner });
            }
            let player = state.turn;
            let strategy: &mut dyn Strategy = match player {
                Player::Mover => &mut *mover,
                Player::Defender => &mut *defender,
            };
            let m = strategy.choose(self, &state).ok_or_else(|| {
                Error::StrategyFault(format!("{player} declined to move in a live position"))
            })?;
            state = self.apply_move(&state, m).map_err(|_| {
                Error::StrategyFault(format!("{player} chose illegal move {}->{}", m.from, m.to))
            })?;
            moves.push(TranscriptMove {
                player,
                from: m.from,
                to: m.to,
                remaining_pebbles: state.config.size(),
            });
        }
    }
}

/// A choice function from game states to moves.
pub trait Strategy {
    fn choose(&mut self, game: &Game<'_>, state: &GameState) -> Option<Move>;
}

impl<F> Strategy for F
where
    F: FnMut(&Game<'_>, &GameState) -> Option<Move>,
{
    fn choose(&mut self, game: &Game<'_>, state: &GameState) -> Option<Move> {
        self(game, state)
    }
}

/// Picks the first legal move.
pub struct FirstMove;

impl Strategy for FirstMove {
    fn choose(&mut self, game: &Game<'_>, state: &GameState) -> Option<Move> {
        game.legal_moves(state).into_iter().next()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptMove {
    pub player: Player,
    pub from: Vertex,
    pub to: Vertex,
    pub remaining_pebbles: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub moves: Vec<TranscriptMove>,
    pub winner: Player,
}

pub fn legal_moves(g: &Graph, state: &GameState) -> Result<Vec<Move>> {
    let game = Game::new(g)?;
    game.check_state(state)?;
    Ok(game.legal_moves(state))
}

pub fn apply_move(g: &Graph, state: &GameState, m: Move) -> Result<GameState> {
    let game = Game::new(g)?;
    game.check_state(state)?;
    game.apply_move(state, m)
}

pub fn terminal_winner(g: &Graph, state: &GameState) -> Result<Option<Player>> {
    let game = Game::new(g)?;
    game.check_state(state)?;
    Ok(game.terminal_winner(state))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{complete, path};

    fn cfg(c: &[u8]) -> Configuration {
        Configuration::new(c.to_vec()).unwrap()
    }

    #[test]
    fn legal_moves_on_p3() {
        let g = path(3).unwrap().with_root(0).unwrap();
        let s = GameState::new(cfg(&[0, 0, 2]));
        assert_eq!(legal_moves(&g, &s).unwrap(), vec![Move::new(2, 1)]);
    }

    #[test]
    fn forbidden_reverse_is_filtered() {
        let g = complete(3).unwrap().with_root(0).unwrap();
        let s = GameState {
            config: cfg(&[0, 0, 2]),
            turn: Player::Defender,
            forbidden: Some(Move::new(2, 1)),
        };
        assert_eq!(legal_moves(&g, &s).unwrap(), vec![Move::new(2, 0)]);
        // Same position on Mover's turn: no filter.
        let s = GameState::new(cfg(&[0, 0, 2]));
        assert_eq!(legal_moves(&g, &s).unwrap().len(), 2);
    }

    #[test]
    fn no_moves_when_no_doubles() {
        let g = complete(4).unwrap().with_root(0).unwrap();
        let s = GameState::new(cfg(&[0, 1, 1, 1]));
        assert!(legal_moves(&g, &s).unwrap().is_empty());
        assert_eq!(terminal_winner(&g, &s).unwrap(), Some(Player::Defender));
    }

    #[test]
    fn apply_sets_and_clears_forbidden() {
        let g = path(3).unwrap().with_root(0).unwrap();
        let s0 = GameState::new(cfg(&[0, 0, 4]));
        let s1 = apply_move(&g, &s0, Move::new(2, 1)).unwrap();
        assert_eq!(s1.config.counts(), &[0, 1, 2]);
        assert_eq!(s1.turn, Player::Defender);
        assert_eq!(s1.forbidden, Some(Move::new(1, 2)));
        assert_eq!(s1.config.size(), s0.config.size() - 1);
        let s2 = apply_move(&g, &s1, Move::new(2, 1)).unwrap();
        assert_eq!(s2.forbidden, None);
        assert_eq!(s2.turn, Player::Mover);
        assert_eq!(
            apply_move(&g, &s0, Move::new(2, 0)),
            Err(Error::IllegalMove { from: 2, to: 0 })
        );
    }

    #[test]
    fn terminal_states() {
        let g = path(3).unwrap().with_root(0).unwrap();
        let pebbled = GameState {
            config: cfg(&[1, 0, 0]),
            turn: Player::Defender,
            forbidden: None,
        };
        assert_eq!(terminal_winner(&g, &pebbled).unwrap(), Some(Player::Mover));
        let live = GameState::new(cfg(&[0, 0, 4]));
        assert_eq!(terminal_winner(&g, &live).unwrap(), None);
    }

    #[test]
    fn rootless_graph_rejected() {
        let g = path(3).unwrap();
        let s = GameState::new(cfg(&[0, 0, 2]));
        assert_eq!(legal_moves(&g, &s), Err(Error::NoRoot));
    }

    #[test]
    fn play_empty_start() {
        let g = path(3).unwrap().with_root(0).unwrap();
        let game = Game::new(&g).unwrap();
        let t = game
            .play(&GameState::new(cfg(&[0, 1, 1])), &mut FirstMove, &mut FirstMove)
            .unwrap();
        assert!(t.moves.is_empty());
        assert_eq!(t.winner, Player::Defender);
    }

    #[test]
    fn play_reports_strategy_fault() {
        let g = path(3).unwrap().with_root(0).unwrap();
        let game = Game::new(&g).unwrap();
        let mut cheat = |_: &Game<'_>, _: &GameState| Some(Move::new(2, 0));
        let err = game
            .play(&GameState::new(cfg(&[0, 0, 4])), &mut cheat, &mut FirstMove)
            .unwrap_err();
        assert!(matches!(err, Error::StrategyFault(_)));
    }
}
