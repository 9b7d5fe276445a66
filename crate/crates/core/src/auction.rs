//! One bidding round: budgets, the tie-breaking marker, legal bids and their resolution.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Player {
    Left,
    Right,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Left => Player::Right,
            Player::Right => Player::Left,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::Left => "Left",
            Player::Right => "Right",
        })
    }
}

impl FromStr for Player {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "left" | "l" => Ok(Player::Left),
            "right" | "r" => Ok(Player::Right),
            other => Err(format!("expected 'left' or 'right', got '{other}'")),
        }
    }
}

/// Total budget, Left's share of it, and who holds the marker.
///
/// Renders as `p^` when Left holds the marker and `p` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BudgetState {
    pub tb: u32,
    pub left_budget: u32,
    pub marker: Player,
}

impl BudgetState {
    pub fn new(tb: u32, left_budget: u32, marker: Player) -> Result<Self> {
        if left_budget > tb {
            return Err(Error::InvalidState { tb, left_budget });
        }
        Ok(BudgetState {
            tb,
            left_budget,
            marker,
        })
    }

    /// `p` in the usual notation: Left owns `p`, Right owns the marker.
    pub fn plain(tb: u32, left_budget: u32) -> Self {
        assert!(left_budget <= tb, "left budget {left_budget} > tb {tb}");
        BudgetState {
            tb,
            left_budget,
            marker: Player::Right,
        }
    }

    /// `p^`: Left owns `p` and the marker.
    pub fn hatted(tb: u32, left_budget: u32) -> Self {
        assert!(left_budget <= tb, "left budget {left_budget} > tb {tb}");
        BudgetState {
            tb,
            left_budget,
            marker: Player::Left,
        }
    }

    pub fn right_budget(&self) -> u32 {
        self.tb - self.left_budget
    }

    pub fn budget(&self, player: Player) -> u32 {
        match player {
            Player::Left => self.left_budget,
            Player::Right => self.right_budget(),
        }
    }

    pub fn left_has_marker(&self) -> bool {
        self.marker == Player::Left
    }

    /// Swap the players' roles: Right's share becomes Left's and the marker flips.
    pub fn mirror(&self) -> Self {
        BudgetState {
            tb: self.tb,
            left_budget: self.right_budget(),
            marker: self.marker.opponent(),
        }
    }

    /// All `2(tb+1)` states in outcome-vector order: `tb^, …, 0^, tb, …, 0`.
    pub fn all(tb: u32) -> impl Iterator<Item = BudgetState> {
        (0..=tb)
            .rev()
            .map(move |p| BudgetState::hatted(tb, p))
            .chain((0..=tb).rev().map(move |p| BudgetState::plain(tb, p)))
    }

    /// Position of this state in the outcome vector.
    pub fn vector_index(&self) -> usize {
        let offset = (self.tb - self.left_budget) as usize;
        match self.marker {
            Player::Left => offset,
            Player::Right => self.tb as usize + 1 + offset,
        }
    }
}

impl fmt::Display for BudgetState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.left_budget)?;
        if self.left_has_marker() {
            f.write_str("^")?;
        }
        Ok(())
    }
}

impl BudgetState {
    /// Parses `p` or `p^` for a given total budget.
    pub fn parse(tb: u32, text: &str) -> Result<Self> {
        let text = text.trim();
        let (digits, marker) = match text.strip_suffix('^') {
            Some(d) => (d, Player::Left),
            None => (text, Player::Right),
        };
        let left_budget: u32 = digits
            .trim()
            .parse()
            .map_err(|_| Error::syntax(0, format!("bad budget state '{text}'")))?;
        BudgetState::new(tb, left_budget, marker)
    }
}

/// A sealed bid. `include_marker` only matters for the marker holder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bid {
    pub amount: u32,
    pub include_marker: bool,
}

impl Bid {
    pub fn new(amount: u32, include_marker: bool) -> Self {
        Bid {
            amount,
            include_marker,
        }
    }

    /// The marker-less bid of the given amount.
    pub fn plain(amount: u32) -> Self {
        Bid::new(amount, false)
    }

    pub const ZERO: Bid = Bid {
        amount: 0,
        include_marker: false,
    };
}

impl fmt::Display for Bid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.amount)?;
        if self.include_marker {
            f.write_str("+marker")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RoundResult {
    pub winner: Player,
    pub next_state: BudgetState,
}

/// Bids available to `player`, ordered by amount and, for the holder, keep before give.
pub fn legal_bids(state: &BudgetState, player: Player) -> Vec<Bid> {
    let budget = state.budget(player);
    if state.marker == player {
        (0..=budget)
            .flat_map(|m| [Bid::new(m, false), Bid::new(m, true)])
            .collect()
    } else {
        (0..=budget).map(Bid::plain).collect()
    }
}

pub fn is_legal(state: &BudgetState, player: Player, bid: &Bid) -> bool {
    bid.amount <= state.budget(player) && (!bid.include_marker || state.marker == player)
}

/// Resolves one round. The winner pays its bid to the loser; a tie goes to the
/// marker holder and always hands the marker over.
pub fn resolve(state: &BudgetState, left_bid: &Bid, right_bid: &Bid) -> Result<RoundResult> {
    for (player, bid) in [(Player::Left, left_bid), (Player::Right, right_bid)] {
        if !is_legal(state, player, bid) {
            return Err(Error::IllegalBid {
                player,
                bid: *bid,
                state: *state,
            });
        }
    }
    Ok(resolve_unchecked(
        state,
        left_bid.amount,
        right_bid.amount,
        {
            let holder_bid = match state.marker {
                Player::Left => left_bid,
                Player::Right => right_bid,
            };
            holder_bid.include_marker
        },
    ))
}

/// Resolution for amounts already known to be legal; `give` is the holder's marker flag.
pub(crate) fn resolve_unchecked(
    state: &BudgetState,
    left_amount: u32,
    right_amount: u32,
    give: bool,
) -> RoundResult {
    let holder = state.marker;
    let (holder_amount, other_amount) = match holder {
        Player::Left => (left_amount, right_amount),
        Player::Right => (right_amount, left_amount),
    };
    let (winner, marker) = if holder_amount > other_amount {
        (holder, if give { holder.opponent() } else { holder })
    } else if holder_amount == other_amount {
        (holder, holder.opponent())
    } else {
        (holder.opponent(), holder)
    };
    let left_budget = match winner {
        Player::Left => state.left_budget - left_amount,
        Player::Right => state.left_budget + right_amount,
    };
    RoundResult {
        winner,
        next_state: BudgetState {
            tb: state.tb,
            left_budget,
            marker,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn keep(m: u32) -> Bid {
        Bid::new(m, false)
    }
    fn give(m: u32) -> Bid {
        Bid::new(m, true)
    }

    #[test]
    fn legal_bid_sets() {
        let s = BudgetState::hatted(2, 1);
        assert_eq!(
            legal_bids(&s, Player::Left),
            vec![keep(0), give(0), keep(1), give(1)]
        );
        assert_eq!(
            legal_bids(&s, Player::Right),
            vec![Bid::plain(0), Bid::plain(1)]
        );
        let z = BudgetState::plain(0, 0);
        assert!(legal_bids(&z, Player::Left).iter().all(|b| b.amount == 0));
        assert!(legal_bids(&z, Player::Right).iter().all(|b| b.amount == 0));
    }

    #[test]
    fn rule_two_win_with_marker() {
        let s = BudgetState::hatted(4, 2);
        let r = resolve(&s, &give(2), &Bid::plain(2)).unwrap();
        assert_eq!(r.winner, Player::Left);
        assert_eq!(r.next_state, BudgetState::plain(4, 0));
    }

    #[test]
    fn rule_four_right_outbids() {
        let s = BudgetState::hatted(4, 2);
        let r = resolve(&s, &keep(1), &Bid::plain(2)).unwrap();
        assert_eq!(r.winner, Player::Right);
        assert_eq!(r.next_state, BudgetState::hatted(4, 4));
    }

    #[test]
    fn tie_at_zero() {
        let s = BudgetState::hatted(1, 1);
        let r = resolve(&s, &give(0), &Bid::plain(0)).unwrap();
        assert_eq!(r.winner, Player::Left);
        assert_eq!(r.next_state, BudgetState::plain(1, 1));
    }

    #[test]
    fn rule_one_strict_win_keeps_marker() {
        let s = BudgetState::hatted(4, 3);
        let r = resolve(&s, &keep(2), &Bid::plain(1)).unwrap();
        assert_eq!(r.winner, Player::Left);
        assert_eq!(r.next_state, BudgetState::hatted(4, 1));
    }

    #[test]
    fn illegal_bids_are_rejected() {
        let s = BudgetState::hatted(4, 2);
        assert!(matches!(
            resolve(&s, &keep(3), &Bid::plain(0)),
            Err(Error::IllegalBid {
                player: Player::Left,
                ..
            })
        ));
        assert!(matches!(
            resolve(&s, &keep(0), &Bid::new(0, true)),
            Err(Error::IllegalBid {
                player: Player::Right,
                ..
            })
        ));
    }

    fn all_states(max_tb: u32) -> Vec<BudgetState> {
        (0..=max_tb).flat_map(BudgetState::all).collect()
    }

    #[test]
    fn conservation_and_monotone_budgets() {
        for s in all_states(4) {
            for lb in legal_bids(&s, Player::Left) {
                for rb in legal_bids(&s, Player::Right) {
                    let r = resolve(&s, &lb, &rb).unwrap();
                    let n = r.next_state;
                    assert_eq!(n.left_budget + n.right_budget(), s.tb);
                    match r.winner {
                        Player::Left => {
                            assert!(n.left_budget <= s.left_budget);
                            assert!(n.right_budget() >= s.right_budget());
                        }
                        Player::Right => {
                            assert!(n.right_budget() <= s.right_budget());
                            assert!(n.left_budget >= s.left_budget);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn ties_always_transfer_the_marker() {
        for s in all_states(4) {
            let holder = s.marker;
            for m in 0..=s.budget(holder).min(s.budget(holder.opponent())) {
                let other = Bid::plain(m);
                let outcome = |hb: Bid| match holder {
                    Player::Left => resolve(&s, &hb, &other).unwrap(),
                    Player::Right => resolve(&s, &other, &hb).unwrap(),
                };
                let kept = outcome(keep(m));
                assert_eq!(kept, outcome(give(m)));
                assert_eq!(kept.next_state.marker, holder.opponent());
                assert_eq!(kept.winner, holder);
            }
        }
    }

    #[test]
    fn mirroring_mirrors_the_result() {
        for s in all_states(4) {
            let m = s.mirror();
            for lb in legal_bids(&s, Player::Left) {
                for rb in legal_bids(&s, Player::Right) {
                    let r = resolve(&s, &lb, &rb).unwrap();
                    let mr = resolve(&m, &rb, &lb).unwrap();
                    assert_eq!(mr.winner, r.winner.opponent());
                    assert_eq!(mr.next_state, r.next_state.mirror());
                }
            }
        }
    }

    #[test]
    fn vector_order() {
        let v: Vec<String> = BudgetState::all(1).map(|s| s.to_string()).collect();
        assert_eq!(v, ["1^", "0^", "1", "0"]);
        for (i, s) in BudgetState::all(3).enumerate() {
            assert_eq!(s.vector_index(), i);
        }
    }

    #[test]
    fn state_parsing() {
        assert_eq!(
            BudgetState::parse(3, "2^").unwrap(),
            BudgetState::hatted(3, 2)
        );
        assert_eq!(
            BudgetState::parse(3, "0").unwrap(),
            BudgetState::plain(3, 0)
        );
        assert!(BudgetState::parse(3, "4").is_err());
    }
}
