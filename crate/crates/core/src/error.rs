use thiserror::Error;

use crate::auction::{Bid, BudgetState, Player};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("{what} {value} exceeds the configured bound {limit}")]
    BoundExceeded {
        what: &'static str,
        value: u128,
        limit: u128,
    },

    #[error("total budget mismatch: {left} vs {right}")]
    TbMismatch { left: u32, right: u32 },

    #[error("invalid budget state: left budget {left_budget} exceeds total budget {tb}")]
    InvalidState { tb: u32, left_budget: u32 },

    #[error("illegal bid {bid} for {player} in state {state}")]
    IllegalBid {
        player: Player,
        bid: Bid,
        state: BudgetState,
    },

    #[error(
        "{inverse} is not a certified inverse of {game}: {game} + {inverse} has no EQ0 certificate"
    )]
    InvalidInverse { game: String, inverse: String },

    #[error("unknown suite '{0}'")]
    UnknownSuite(String),

    #[error("unknown conjecture '{0}'")]
    UnknownConjecture(String),

    #[error("search space of about {estimate} forms exceeds the limit {limit}; lower the bounds or sample")]
    SearchTooLarge { estimate: u128, limit: u128 },
}

impl Error {
    pub(crate) fn syntax(position: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            position,
            message: message.into(),
        }
    }
}
