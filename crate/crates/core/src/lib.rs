//! Exact engine for discrete bidding combinatorial games.
//!
//! * [`game`]: interned game forms, sum and conjugate.
//! * [`notation`]: the bracket notation parser and printer.
//! * [`auction`]: one bidding round under the marker rules.
//! * [`solver`]: partial outcomes, outcome vectors, strategies and 0-bid analysis.
//! * [`algebra`]: constructive comparison, numbers, integers and dyadics.
//! * [`explorer`]: bounded enumeration, witness search, suites and conjecture runs.
//! * [`service`]: the CLI front-end helpers and the local HTTP play service.

pub mod algebra;
pub mod auction;
pub mod error;
pub mod explorer;
pub mod game;
pub mod notation;
pub mod service;
pub mod solver;

pub use auction::{Bid, BudgetState, Player, RoundResult};
pub use error::{Error, Result};
pub use game::{Bounds, GameForm, GameId, Games};
pub use notation::{parse, print, Style};
pub use solver::{OutcomeVector, PartialOutcome, Solver, StrategyEntry};
