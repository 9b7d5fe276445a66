//! Play sessions between a human and the engine.

use serde::Serialize;
use thiserror::Error;

use crate::auction::{legal_bids, resolve, Bid, BudgetState, Player, RoundResult};
use crate::game::GameId;
use crate::notation::{print, Style};
use crate::solver::{PartialOutcome, Solver};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SessionError {
    #[error("illegal bid {bid} in state {state}")]
    IllegalBid {
        bid: Bid,
        state: BudgetState,
        legal: Vec<Bid>,
    },
    #[error("no move is expected right now")]
    NoMoveExpected,
    #[error("a move is required before the next bid")]
    MoveRequired,
    #[error("not an option of the current position: {0}")]
    IllegalMove(String),
    #[error("the game is over")]
    Finished,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "phase")]
pub enum Phase {
    /// Waiting for the human's bid.
    Bidding,
    /// The human won the round and must pick an option; the state is already updated.
    AwaitingMove,
    Finished {
        winner: Player,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HistoryEntry {
    pub round: usize,
    pub position: String,
    pub state: BudgetState,
    pub left_bid: Bid,
    pub right_bid: Bid,
    pub result: RoundResult,
    /// The option moved to by the round winner; `None` when the winner could not
    /// move (and lost) or the human has not chosen yet.
    pub moved_to: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MoveChoice {
    pub index: usize,
    pub notation: String,
}

#[derive(Debug, Clone)]
pub struct Session {
    pub id: u64,
    pub game: GameId,
    pub position: GameId,
    pub state: BudgetState,
    pub human_side: Player,
    pub phase: Phase,
    pub history: Vec<HistoryEntry>,
}

/// What one human action produced.
#[derive(Debug, Clone, Serialize)]
pub struct TurnReport {
    pub engine_bid: Option<Bid>,
    pub result: Option<RoundResult>,
    pub engine_move: Option<String>,
    /// Present when the human won the round and has to choose.
    pub required_move: Option<Vec<MoveChoice>>,
}

impl Session {
    pub fn new(id: u64, game: GameId, state: BudgetState, human_side: Player) -> Self {
        Session {
            id,
            game,
            position: game,
            state,
            human_side,
            phase: Phase::Bidding,
            history: Vec::new(),
        }
    }

    pub fn engine_side(&self) -> Player {
        self.human_side.opponent()
    }

    pub fn legal_bids(&self) -> Vec<Bid> {
        legal_bids(&self.state, self.human_side)
    }

    pub fn move_choices(&self, solver: &Solver) -> Vec<MoveChoice> {
        let games = solver.games();
        games
            .options(self.position, self.human_side)
            .iter()
            .enumerate()
            .map(|(index, &o)| MoveChoice {
                index,
                notation: print(games, o, Style::Named),
            })
            .collect()
    }

    /// The human bids; the engine answers with its prescribed bid and, if it wins,
    /// its prescribed move.
    pub fn bid(&mut self, solver: &Solver, bid: Bid) -> Result<TurnReport, SessionError> {
        match self.phase {
            Phase::Finished { .. } => return Err(SessionError::Finished),
            Phase::AwaitingMove => return Err(SessionError::MoveRequired),
            Phase::Bidding => {}
        }
        let engine = self.engine_side();
        let engine_bid = solver.prescribed_bid(self.position, self.state, engine);
        let (left_bid, right_bid) = match self.human_side {
            Player::Left => (bid, engine_bid),
            Player::Right => (engine_bid, bid),
        };
        let result =
            resolve(&self.state, &left_bid, &right_bid).map_err(|_| SessionError::IllegalBid {
                bid,
                state: self.state,
                legal: self.legal_bids(),
            })?;
        let games = solver.games();
        let mut entry = HistoryEntry {
            round: self.history.len() + 1,
            position: print(games, self.position, Style::Named),
            state: self.state,
            left_bid,
            right_bid,
            result,
            moved_to: None,
        };
        self.state = result.next_state;
        let mut report = TurnReport {
            engine_bid: Some(engine_bid),
            result: Some(result),
            engine_move: None,
            required_move: None,
        };
        if games.options(self.position, result.winner).is_empty() {
            self.phase = Phase::Finished {
                winner: result.winner.opponent(),
            };
        } else if result.winner == engine {
            let mv = solver
                .best_move(self.position, result.next_state, engine)
                .expect("options are non-empty");
            let name = print(games, mv, Style::Named);
            entry.moved_to = Some(name.clone());
            report.engine_move = Some(name);
            self.position = mv;
        } else {
            self.phase = Phase::AwaitingMove;
            report.required_move = Some(self.move_choices(solver));
        }
        self.history.push(entry);
        Ok(report)
    }

    /// The human's move after winning a round, by option index.
    pub fn choose(&mut self, solver: &Solver, index: usize) -> Result<TurnReport, SessionError> {
        match self.phase {
            Phase::AwaitingMove => {}
            Phase::Finished { .. } => return Err(SessionError::Finished),
            Phase::Bidding => return Err(SessionError::NoMoveExpected),
        }
        let games = solver.games();
        let opts = games.options(self.position, self.human_side);
        let &mv = opts
            .get(index)
            .ok_or_else(|| SessionError::IllegalMove(format!("index {index} of {}", opts.len())))?;
        let name = print(games, mv, Style::Named);
        if let Some(last) = self.history.last_mut() {
            last.moved_to = Some(name);
        }
        self.position = mv;
        self.phase = Phase::Bidding;
        Ok(TurnReport {
            engine_bid: None,
            result: None,
            engine_move: None,
            required_move: None,
        })
    }

    /// Index of the option with the given notation (compared by interned id).
    pub fn choice_index(&self, solver: &Solver, target: GameId) -> Option<usize> {
        solver
            .games()
            .options(self.position, self.human_side)
            .iter()
            .position(|&o| o == target)
    }

    pub fn winner(&self) -> Option<Player> {
        match self.phase {
            Phase::Finished { winner } => Some(winner),
            _ => None,
        }
    }

    /// Value of the current position for Left under optimal play.
    pub fn value(&self, solver: &Solver) -> PartialOutcome {
        solver.partial_outcome(self.position, self.state)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Games;
    use crate::notation::parse;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    fn solver() -> Solver {
        Solver::new(Arc::new(Games::new()))
    }

    #[test]
    fn star_plus_star_as_left() {
        let s = solver();
        let g = parse(s.games(), "*+*").unwrap();
        let mut sess = Session::new(1, g, BudgetState::hatted(1, 1), Player::Left);
        let r = sess.bid(&s, Bid::new(0, true)).unwrap();
        assert_eq!(r.engine_bid, Some(Bid::ZERO));
        assert_eq!(r.result.unwrap().winner, Player::Left);
        assert_eq!(sess.phase, Phase::AwaitingMove);
        sess.choose(&s, 0).unwrap();
        let r = sess.bid(&s, Bid::plain(1)).unwrap();
        assert_eq!(r.result.unwrap().winner, Player::Left);
        sess.choose(&s, 0).unwrap();
        while sess.winner().is_none() {
            if sess.phase == Phase::AwaitingMove {
                sess.choose(&s, 0).unwrap();
            } else {
                sess.bid(&s, Bid::ZERO).unwrap();
            }
        }
        assert_eq!(sess.winner(), Some(Player::Left));
    }

    #[test]
    fn illegal_bid_lists_legal_ones() {
        let s = solver();
        let g = parse(s.games(), "1").unwrap();
        let mut sess = Session::new(1, g, BudgetState::plain(2, 0), Player::Right);
        let err = sess.bid(&s, Bid::plain(5)).unwrap_err();
        let SessionError::IllegalBid { legal, .. } = err else {
            panic!()
        };
        let amounts: Vec<u32> = legal.iter().map(|b| b.amount).collect();
        assert_eq!(amounts, vec![0, 0, 1, 1, 2, 2]);
    }

    /// Random human play never beats the engine from a state the engine wins.
    #[test]
    fn engine_keeps_its_value() {
        let s = solver();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let games = [
            "1",
            "{0|{0|^}}",
            "*+*",
            "^+v",
            "1/2",
            "{1|-1}",
            "-1+*",
            "{0,*|0}",
        ];
        for text in games {
            let g = parse(s.games(), text).unwrap();
            for tb in 0..=3 {
                for state in BudgetState::all(tb) {
                    for human in [Player::Left, Player::Right] {
                        let engine = human.opponent();
                        if s.partial_outcome(g, state) != PartialOutcome::win_for(engine) {
                            continue;
                        }
                        for _ in 0..5 {
                            let mut sess = Session::new(0, g, state, human);
                            while sess.winner().is_none() {
                                if sess.phase == Phase::AwaitingMove {
                                    let n = s.games().options(sess.position, human).len();
                                    sess.choose(&s, rng.gen_range(0..n)).unwrap();
                                } else {
                                    let legal = sess.legal_bids();
                                    let b = legal[rng.gen_range(0..legal.len())];
                                    sess.bid(&s, b).unwrap();
                                }
                            }
                            assert_eq!(sess.winner(), Some(engine), "{text} tb={tb} {state}");
                        }
                    }
                }
            }
        }
    }
}
