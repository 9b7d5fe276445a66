//! Classical alternating normal play, independent of the bidding solver.

use std::collections::HashMap;

use crate::auction::Player;
use crate::game::{GameId, Games};

pub struct AlternatingOracle<'a> {
    games: &'a Games,
    memo: HashMap<(GameId, Player), bool>,
}

impl<'a> AlternatingOracle<'a> {
    pub fn new(games: &'a Games) -> Self {
        AlternatingOracle {
            games,
            memo: HashMap::new(),
        }
    }

    /// Does `mover`, moving first in `g`, win under normal play?
    pub fn first_player_wins(&mut self, g: GameId, mover: Player) -> bool {
        if let Some(&hit) = self.memo.get(&(g, mover)) {
            return hit;
        }
        let opts = self.games.options(g, mover).to_vec();
        let win = opts
            .into_iter()
            .any(|o| !self.first_player_wins(o, mover.opponent()));
        self.memo.insert((g, mover), win);
        win
    }
}
