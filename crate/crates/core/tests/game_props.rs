use proptest::prelude::*;

use pebblegame::numbers::{is_r_solvable, pi};
use pebblegame::{Configuration, Game, GameState, Graph, Move, Player, Solver};

/// Connected graph on `2..=5` vertices: a random spanning tree plus extra edges.
fn arb_graph() -> impl Strategy<Value = Graph> {
    (2usize..=5)
        .prop_flat_map(|n| {
            let parents: Vec<_> = (1..n).map(|i| 0..i).collect();
            (Just(n), parents, any::<u16>())
        })
        .prop_map(|(n, parents, extra)| {
            let mut g = Graph::empty(n);
            for (i, p) in parents.into_iter().enumerate() {
                g.add_edge(i + 1, p).unwrap();
            }
            let mut bit = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if extra >> bit & 1 == 1 {
                        g.add_edge(u, v).unwrap();
                    }
                    bit += 1;
                }
            }
            g.with_root(0).unwrap()
        })
}

fn arb_position() -> impl Strategy<Value = (Graph, Configuration)> {
    arb_graph().prop_flat_map(|g| {
        let n = g.n();
        (Just(g), proptest::collection::vec(0u8..4, n)).prop_map(|(g, mut c)| {
            c[0] = 0;
            (g, Configuration::new(c).unwrap())
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn moves_remove_exactly_one_pebble((g, c) in arb_position()) {
        let game = Game::new(&g).unwrap();
        let s = GameState::new(c);
        for m in game.legal_moves(&s) {
            let next = game.apply_move(&s, m).unwrap();
            prop_assert_eq!(next.config.size() + 1, s.config.size());
        }
    }

    #[test]
    fn value_matches_one_ply_expansion((g, c) in arb_position()) {
        let solver = Solver::new(&g).unwrap();
        let game = solver.game();
        for turn in [Player::Mover, Player::Defender] {
            let s = GameState { config: c.clone(), turn, forbidden: None };
            let value = solver.solve(&s).unwrap();
            let expected = match game.terminal_winner(&s) {
                Some(w) => w,
                None => {
                    let children: Vec<Player> = game
                        .legal_moves(&s)
                        .into_iter()
                        .map(|m| solver.solve(&game.apply_move(&s, m).unwrap()).unwrap())
                        .collect();
                    if children.contains(&turn) { turn } else { turn.other() }
                }
            };
            prop_assert_eq!(value, expected);
        }
    }

    #[test]
    fn forbidden_edge_only_binds_defender((g, c) in arb_position()) {
        let game = Game::new(&g).unwrap();
        let mover = GameState::new(c.clone());
        let all = game.legal_moves(&mover);
        for &m in &all {
            let with = GameState { forbidden: Some(m), ..mover.clone() };
            prop_assert_eq!(game.legal_moves(&with), all.clone());
            let def = GameState { turn: Player::Defender, forbidden: Some(m), config: c.clone() };
            let filtered = game.legal_moves(&def);
            prop_assert_eq!(filtered.len() + 1, all.len());
            prop_assert!(!filtered.contains(&m));
        }
        // The restriction lasts one Defender turn: after the reply it is gone.
        for m in all {
            let after_mover = game.apply_move(&mover, m).unwrap();
            prop_assert_eq!(after_mover.forbidden, Some(Move::new(m.to, m.from)));
            for r in game.legal_moves(&after_mover) {
                prop_assert_eq!(game.apply_move(&after_mover, r).unwrap().forbidden, None);
            }
        }
    }

    #[test]
    fn value_is_path_independent((g, c) in arb_position()) {
        // A position solved fresh and after warming the table from other
        // starts has the same value.
        let warm = Solver::new(&g).unwrap();
        let game = warm.game();
        let start = GameState::new(c.clone());
        for m in game.legal_moves(&start) {
            let _ = warm.solve(&game.apply_move(&start, m).unwrap()).unwrap();
        }
        let fresh = Solver::new(&g).unwrap();
        prop_assert_eq!(warm.solve(&start).unwrap(), fresh.solve(&start).unwrap());
    }

    #[test]
    fn mover_win_implies_classically_solvable((g, c) in arb_position()) {
        // Mover alone choosing every move can replay any winning line.
        if Solver::new(&g).unwrap().solve_config(&c).unwrap() == Player::Mover {
            prop_assert!(is_r_solvable(&g, &c, 0).unwrap());
        }
    }

    #[test]
    fn pebbling_number_at_least_order(g in arb_graph()) {
        prop_assert!(pi(&g).unwrap() >= g.n() as u32);
    }
}
