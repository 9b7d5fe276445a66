//! Backward induction over (position, budget state).
//!
//! A round is a simultaneous-bid matrix game: the round winner must move, and a
//! winner without options loses. Left wins a state iff some Left bid wins against
//! every Right bid. Results are memoized per total budget.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use dashmap::DashMap;
use parking_lot::RwLock;
use serde::{Deserialize, Serialize};

use crate::auction::{legal_bids, resolve_unchecked, Bid, BudgetState, Player, RoundResult};
use crate::error::{Error, Result};
use crate::game::{GameId, Games};

/// Winner of a state under optimal play. Ordered `R < L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PartialOutcome {
    R,
    L,
}

impl PartialOutcome {
    pub fn win_for(player: Player) -> Self {
        match player {
            Player::Left => PartialOutcome::L,
            Player::Right => PartialOutcome::R,
        }
    }

    pub fn winner(self) -> Player {
        match self {
            PartialOutcome::L => Player::Left,
            PartialOutcome::R => Player::Right,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            PartialOutcome::L => PartialOutcome::R,
            PartialOutcome::R => PartialOutcome::L,
        }
    }

    fn as_char(self) -> char {
        match self {
            PartialOutcome::L => 'L',
            PartialOutcome::R => 'R',
        }
    }
}

impl fmt::Display for PartialOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// The `2(tb+1)` partial outcomes, ordered `tb^, …, 0^, tb, …, 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OutcomeVector {
    tb: u32,
    entries: Vec<PartialOutcome>,
}

impl OutcomeVector {
    pub fn from_entries(tb: u32, entries: Vec<PartialOutcome>) -> Self {
        assert_eq!(entries.len(), 2 * (tb as usize + 1));
        OutcomeVector { tb, entries }
    }

    pub fn tb(&self) -> u32 {
        self.tb
    }

    pub fn entries(&self) -> &[PartialOutcome] {
        &self.entries
    }

    pub fn get(&self, state: &BudgetState) -> PartialOutcome {
        assert_eq!(state.tb, self.tb);
        self.entries[state.vector_index()]
    }

    pub fn all(&self, o: PartialOutcome) -> bool {
        self.entries.iter().all(|&e| e == o)
    }

    /// Pointwise comparison with `L > R`.
    pub fn leq(&self, other: &OutcomeVector) -> Result<bool> {
        if self.tb != other.tb {
            return Err(Error::TbMismatch {
                left: self.tb,
                right: other.tb,
            });
        }
        Ok(self.entries.iter().zip(&other.entries).all(|(a, b)| a <= b))
    }

    /// States `p` (same marker) with `o(p) > o(p+1)`.
    pub fn monotonicity_violations(&self) -> Vec<BudgetState> {
        let tb = self.tb;
        let mut out = Vec::new();
        for p in 0..tb {
            for s in [BudgetState::hatted(tb, p), BudgetState::plain(tb, p)] {
                let up = BudgetState {
                    left_budget: p + 1,
                    ..s
                };
                if self.get(&s) > self.get(&up) {
                    out.push(s);
                }
            }
        }
        out
    }

    /// States `p^` with `o(p^) > o(p+1)`.
    pub fn marker_worth_violations(&self) -> Vec<BudgetState> {
        let tb = self.tb;
        (0..tb)
            .map(|p| BudgetState::hatted(tb, p))
            .filter(|s| self.get(s) > self.get(&BudgetState::plain(tb, s.left_budget + 1)))
            .collect()
    }
}

impl fmt::Display for OutcomeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl Serialize for OutcomeVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Round outcomes for every pair of legal bids, with the winner moving optimally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BidMatrix {
    pub state: BudgetState,
    pub left_bids: Vec<Bid>,
    pub right_bids: Vec<Bid>,
    /// `entries[i][j]` is the result of Left bid `i` against Right bid `j`.
    pub entries: Vec<Vec<PartialOutcome>>,
}

impl BidMatrix {
    pub fn all_left_rows(&self) -> Vec<usize> {
        (0..self.left_bids.len())
            .filter(|&i| self.entries[i].iter().all(|&e| e == PartialOutcome::L))
            .collect()
    }

    pub fn all_right_columns(&self) -> Vec<usize> {
        (0..self.right_bids.len())
            .filter(|&j| self.entries.iter().all(|row| row[j] == PartialOutcome::R))
            .collect()
    }

    /// Exactly one of "some row is all L" and "some column is all R".
    pub fn is_determined(&self) -> bool {
        self.all_left_rows().is_empty() != self.all_right_columns().is_empty()
    }
}

/// Prescribed play for one player at one state.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrategyEntry {
    pub position: GameId,
    pub state: BudgetState,
    pub player: Player,
    pub value: PartialOutcome,
    pub best_bid: Bid,
    /// The move prescribed if the player wins the round against the opponent's
    /// own prescribed bid.
    pub winning_move: Option<GameId>,
    pub zero_bid_optimal: bool,
}

type StateKey = (GameId, u32, Player);

#[derive(Default)]
struct TbCache {
    outcomes: DashMap<StateKey, PartialOutcome>,
    zero_bid: DashMap<(GameId, u32, Player, Player), bool>,
}

/// Memoizing solver over a shared arena.
pub struct Solver {
    games: Arc<Games>,
    caches: RwLock<HashMap<u32, Arc<TbCache>>>,
}

impl fmt::Debug for Solver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Solver")
            .field("games", &self.games)
            .finish()
    }
}

impl Solver {
    pub fn new(games: Arc<Games>) -> Self {
        Solver {
            games,
            caches: RwLock::new(HashMap::new()),
        }
    }

    pub fn games(&self) -> &Arc<Games> {
        &self.games
    }

    fn cache(&self, tb: u32) -> Arc<TbCache> {
        if let Some(c) = self.caches.read().get(&tb) {
            return c.clone();
        }
        self.caches.write().entry(tb).or_default().clone()
    }

    /// Number of memoized partial outcomes for `tb`.
    pub fn memo_len(&self, tb: u32) -> usize {
        self.caches.read().get(&tb).map_or(0, |c| c.outcomes.len())
    }

    pub fn partial_outcome(&self, g: GameId, state: BudgetState) -> PartialOutcome {
        let cache = self.cache(state.tb);
        self.outcome_in(&cache, g, state)
    }

    fn outcome_in(&self, cache: &TbCache, g: GameId, state: BudgetState) -> PartialOutcome {
        let key = (g, state.left_budget, state.marker);
        if let Some(hit) = cache.outcomes.get(&key) {
            return *hit;
        }
        let value = self.solve_state(cache, g, state);
        cache.outcomes.insert(key, value);
        value
    }

    /// Whether `player`, having won the round into `next`, has an option that wins.
    fn mover_wins(&self, cache: &TbCache, g: GameId, player: Player, next: BudgetState) -> bool {
        let target = PartialOutcome::win_for(player);
        self.games
            .options(g, player)
            .iter()
            .any(|&o| self.outcome_in(cache, o, next) == target)
    }

    fn round_value(&self, cache: &TbCache, g: GameId, round: RoundResult) -> PartialOutcome {
        if self.mover_wins(cache, g, round.winner, round.next_state) {
            PartialOutcome::win_for(round.winner)
        } else {
            PartialOutcome::win_for(round.winner.opponent())
        }
    }

    fn entry(
        &self,
        cache: &TbCache,
        g: GameId,
        state: BudgetState,
        lb: Bid,
        rb: Bid,
    ) -> PartialOutcome {
        let give = match state.marker {
            Player::Left => lb.include_marker,
            Player::Right => rb.include_marker,
        };
        let round = resolve_unchecked(&state, lb.amount, rb.amount, give);
        self.round_value(cache, g, round)
    }

    fn solve_state(&self, cache: &TbCache, g: GameId, state: BudgetState) -> PartialOutcome {
        let left_bids = legal_bids(&state, Player::Left);
        let right_bids = legal_bids(&state, Player::Right);
        let left_wins = left_bids.iter().any(|&lb| {
            right_bids
                .iter()
                .all(|&rb| self.entry(cache, g, state, lb, rb) == PartialOutcome::L)
        });
        if left_wins {
            PartialOutcome::L
        } else {
            PartialOutcome::R
        }
    }

    pub fn outcome_vector(&self, g: GameId, tb: u32) -> OutcomeVector {
        let cache = self.cache(tb);
        let entries = BudgetState::all(tb)
            .map(|s| self.outcome_in(&cache, g, s))
            .collect();
        OutcomeVector { tb, entries }
    }

    pub fn bid_matrix(&self, g: GameId, state: BudgetState) -> BidMatrix {
        let cache = self.cache(state.tb);
        let left_bids = legal_bids(&state, Player::Left);
        let right_bids = legal_bids(&state, Player::Right);
        let entries = left_bids
            .iter()
            .map(|&lb| {
                right_bids
                    .iter()
                    .map(|&rb| self.entry(&cache, g, state, lb, rb))
                    .collect()
            })
            .collect();
        BidMatrix {
            state,
            left_bids,
            right_bids,
            entries,
        }
    }

    /// Result of one concrete pair of bids, with the winner moving optimally.
    pub fn round_outcome(&self, g: GameId, round: RoundResult) -> PartialOutcome {
        let cache = self.cache(round.next_state.tb);
        self.round_value(&cache, g, round)
    }

    /// The bid `player` is prescribed at `state`: the smallest amount (keep before give)
    /// that secures a win, or `0` when the state is lost anyway.
    pub fn prescribed_bid(&self, g: GameId, state: BudgetState, player: Player) -> Bid {
        let cache = self.cache(state.tb);
        let target = PartialOutcome::win_for(player);
        let own = legal_bids(&state, player);
        let theirs = legal_bids(&state, player.opponent());
        let secures = |bid: Bid| {
            theirs.iter().all(|&other| {
                let (lb, rb) = match player {
                    Player::Left => (bid, other),
                    Player::Right => (other, bid),
                };
                self.entry(&cache, g, state, lb, rb) == target
            })
        };
        if self.outcome_in(&cache, g, state) == target {
            if let Some(&bid) = own.iter().find(|&&b| secures(b)) {
                return bid;
            }
        }
        own[0]
    }

    /// The move `player` makes after winning a round into `next`: the smallest
    /// winning option, else the smallest option, else `None` (the player loses).
    pub fn best_move(&self, g: GameId, next: BudgetState, player: Player) -> Option<GameId> {
        let cache = self.cache(next.tb);
        let target = PartialOutcome::win_for(player);
        let options = self.games.options(g, player);
        options
            .iter()
            .copied()
            .find(|&o| self.outcome_in(&cache, o, next) == target)
            .or_else(|| options.first().copied())
    }

    pub fn best_response(&self, g: GameId, state: BudgetState, player: Player) -> StrategyEntry {
        let value = self.partial_outcome(g, state);
        let best_bid = self.prescribed_bid(g, state, player);
        let reply = self.prescribed_bid(g, state, player.opponent());
        let (lb, rb) = match player {
            Player::Left => (best_bid, reply),
            Player::Right => (reply, best_bid),
        };
        let give = match state.marker {
            Player::Left => lb.include_marker,
            Player::Right => rb.include_marker,
        };
        let round = resolve_unchecked(&state, lb.amount, rb.amount, give);
        let winning_move = (round.winner == player)
            .then(|| self.best_move(g, round.next_state, player))
            .flatten();
        StrategyEntry {
            position: g,
            state,
            player,
            value,
            best_bid,
            winning_move,
            zero_bid_optimal: self.zero_bid_optimal(g, state, player),
        }
    }

    /// Whether bidding `0` is optimal for `player` here: either the player cannot win
    /// `(g, state)` at all, or they win it with a strategy that bids `0` in every
    /// round against any opponent bid, choosing a winning option whenever they win
    /// a round and surviving every option the opponent may pick.
    pub fn zero_bid_optimal(&self, g: GameId, state: BudgetState, player: Player) -> bool {
        let cache = self.cache(state.tb);
        self.outcome_in(&cache, g, state) != PartialOutcome::win_for(player)
            || self.zero_bid_wins(&cache, g, state, player)
    }

    /// `player` wins `(g, state)` while only ever bidding `0`.
    fn zero_bid_wins(
        &self,
        cache: &TbCache,
        g: GameId,
        state: BudgetState,
        player: Player,
    ) -> bool {
        let key = (g, state.left_budget, state.marker, player);
        if let Some(hit) = cache.zero_bid.get(&key) {
            return *hit;
        }
        // A 0-bid win is in particular a win; skip the search otherwise.
        let value = self.outcome_in(cache, g, state) == PartialOutcome::win_for(player)
            && self
                .zero_bid_successors(g, state, player)
                .into_iter()
                .all(|round| {
                    let opts = self.games.options(g, round.winner);
                    if round.winner == player {
                        opts.iter()
                            .any(|&o| self.zero_bid_wins(cache, o, round.next_state, player))
                    } else {
                        opts.iter()
                            .all(|&o| self.zero_bid_wins(cache, o, round.next_state, player))
                    }
                });
        cache.zero_bid.insert(key, value);
        value
    }

    /// Distinct round results when `player` bids `0`.
    fn zero_bid_successors(
        &self,
        _g: GameId,
        state: BudgetState,
        player: Player,
    ) -> Vec<RoundResult> {
        let mut out: Vec<RoundResult> = Vec::new();
        for other in legal_bids(&state, player.opponent()) {
            let (la, ra) = match player {
                Player::Left => (0, other.amount),
                Player::Right => (other.amount, 0),
            };
            let give = state.marker != player && other.include_marker;
            let round = resolve_unchecked(&state, la, ra, give);
            if !out.contains(&round) {
                out.push(round);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse;

    fn solver() -> Solver {
        Solver::new(Arc::new(Games::new()))
    }

    fn vector(s: &Solver, text: &str, tb: u32) -> String {
        let g = parse(s.games(), text).unwrap();
        s.outcome_vector(g, tb).to_string()
    }

    #[test]
    fn zero_loses_for_the_marker_holder() {
        let s = solver();
        for tb in 0..=4 {
            for st in BudgetState::all(tb) {
                let expected = if st.left_has_marker() {
                    PartialOutcome::R
                } else {
                    PartialOutcome::L
                };
                assert_eq!(s.partial_outcome(GameId::ZERO, st), expected, "{st}");
            }
        }
        assert_eq!(vector(&s, "0", 1), "RRLL");
    }

    #[test]
    fn one_is_a_left_win_everywhere() {
        let s = solver();
        for tb in 0..=5 {
            let g = parse(s.games(), "1").unwrap();
            assert!(s.outcome_vector(g, tb).all(PartialOutcome::L));
        }
        assert_eq!(vector(&s, "1", 2), "LLLLLL");
        assert_eq!(vector(&s, "-1", 2), "RRRRRR");
    }

    #[test]
    fn star_at_budget_one() {
        // Brute force by hand: at 1^ Left bids 1 with the marker and moves to 0
        // with Right holding the marker; at 0 Right ties at 0 and moves to 0.
        let s = solver();
        let star = s.games().star();
        assert_eq!(
            s.partial_outcome(star, BudgetState::hatted(1, 1)),
            PartialOutcome::L
        );
        assert_eq!(
            s.partial_outcome(star, BudgetState::plain(1, 0)),
            PartialOutcome::R
        );
        let m = s.bid_matrix(star, BudgetState::hatted(1, 1));
        assert!(!m.all_left_rows().is_empty());
        assert!(m.is_determined());
    }

    #[test]
    fn outcome_leq_examples() {
        let rrll = OutcomeVector::from_entries(1, "RRLL".chars().map(o).collect());
        let llll = OutcomeVector::from_entries(1, "LLLL".chars().map(o).collect());
        assert!(rrll.leq(&llll).unwrap());
        let a = OutcomeVector::from_entries(1, "LRRR".chars().map(o).collect());
        let b = OutcomeVector::from_entries(1, "RRRL".chars().map(o).collect());
        assert!(!a.leq(&b).unwrap());
        assert!(!b.leq(&a).unwrap());
        let other = OutcomeVector::from_entries(0, vec![PartialOutcome::L; 2]);
        assert_eq!(a.leq(&other), Err(Error::TbMismatch { left: 1, right: 0 }));

        let s = solver();
        let one = parse(s.games(), "1").unwrap();
        for tb in 0..=4 {
            let z = s.outcome_vector(GameId::ZERO, tb);
            assert!(z.leq(&s.outcome_vector(one, tb)).unwrap());
        }
    }

    fn o(c: char) -> PartialOutcome {
        if c == 'L' {
            PartialOutcome::L
        } else {
            PartialOutcome::R
        }
    }

    #[test]
    fn best_response_examples() {
        let s = solver();
        let one = parse(s.games(), "1").unwrap();
        let e = s.best_response(one, BudgetState::hatted(1, 0), Player::Left);
        assert_eq!(e.value, PartialOutcome::L);
        assert_eq!(e.best_bid.amount, 0);
        assert!(e.zero_bid_optimal);

        let e = s.best_response(GameId::ZERO, BudgetState::plain(1, 0), Player::Right);
        assert_eq!(e.best_bid, Bid::ZERO);
        assert_eq!(e.value, PartialOutcome::L);
        assert_eq!(e.winning_move, None);
    }

    #[test]
    fn zero_bid_counterexample_needs_positive_bids() {
        let s = solver();
        let g = parse(s.games(), "{0|{0|^}}").unwrap();
        let st = BudgetState::plain(4, 0);
        assert_eq!(s.partial_outcome(g, st), PartialOutcome::L);
        assert!(!s.zero_bid_optimal(g, st, Player::Left));
        let g2 = parse(s.games(), "{0|^}").unwrap();
        let st2 = BudgetState::plain(2, 0);
        assert_eq!(s.partial_outcome(g2, st2), PartialOutcome::L);
        assert!(!s.zero_bid_optimal(g2, st2, Player::Left));
    }

    #[test]
    fn zero_bids_at_numbers() {
        let s = solver();
        for text in ["0", "1", "2", "3", "-2", "1/2", "1/4", "3/4", "-1/2"] {
            let g = parse(s.games(), text).unwrap();
            for tb in 0..=3 {
                for st in BudgetState::all(tb) {
                    for p in [Player::Left, Player::Right] {
                        assert!(s.zero_bid_optimal(g, st, p), "{text} tb={tb} {st} {p}");
                    }
                }
            }
        }
    }

    #[test]
    fn mmw_flags_on_vectors() {
        let v = OutcomeVector::from_entries(1, "LRLL".chars().map(o).collect());
        assert!(v.monotonicity_violations().is_empty());
        let bad = OutcomeVector::from_entries(1, "RLRL".chars().map(o).collect());
        assert_eq!(bad.monotonicity_violations().len(), 2);
        let mw = OutcomeVector::from_entries(1, "RLRR".chars().map(o).collect());
        assert_eq!(
            mw.marker_worth_violations(),
            vec![BudgetState::hatted(1, 0)]
        );
    }
}
