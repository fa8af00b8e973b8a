//! Exact solving of the two-player pebbling game.
//!
//! Mover and Defender alternate mandatory pebbling moves on a rooted graph;
//! Mover wins once a pebble reaches the root. The crate provides the game
//! engine and memoized solver, classical and two-player pebbling numbers,
//! certificates for unbounded two-player pebbling numbers, a closed-form
//! winner classifier for the class of graphs `(K_1 ∪ T) ∨ H`, and the
//! element selecting game that its hard case reduces to.

pub mod certificate;
pub mod config;
pub mod corpus;
pub mod error;
pub mod esg;
pub mod family;
pub mod game;
pub mod graph;
pub mod gst;
pub mod numbers;
pub mod solver;
pub mod verify;

pub use config::{enumerate_configurations, Configuration};
pub use error::{Error, Result};
pub use family::{build_family, Family, GstDescriptor};
pub use game::{Game, GameState, Move, Player, Strategy, Transcript};
pub use graph::{Graph, Vertex};
pub use solver::Solver;
