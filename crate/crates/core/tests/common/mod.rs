//! Helpers shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use bidgame::{GameId, Games, Solver};

pub fn solver() -> Solver {
    Solver::new(Arc::new(Games::new()))
}

/// Plain alternating normal play, written without the bidding engine. With a
/// total budget of 0 the marker holder wins every round and then hands the
/// marker over, so `0^` means Left moves first and `0` means Right does.
pub struct Minimax<'a> {
    games: &'a Games,
    memo: HashMap<(GameId, bool), bool>,
}

impl<'a> Minimax<'a> {
    pub fn new(games: &'a Games) -> Self {
        Minimax {
            games,
            memo: HashMap::new(),
        }
    }

    /// Does Left win when `left_moves` says whose turn it is?
    pub fn left_wins(&mut self, g: GameId, left_moves: bool) -> bool {
        if let Some(&w) = self.memo.get(&(g, left_moves)) {
            return w;
        }
        let w = if left_moves {
            let opts = self.games.left(g).to_vec();
            opts.into_iter().any(|o| self.left_wins(o, false))
        } else {
            let opts = self.games.right(g).to_vec();
            opts.into_iter().all(|o| self.left_wins(o, true))
        };
        self.memo.insert((g, left_moves), w);
        w
    }
}
