//! Bounded searches for distinguishing positions and inverses.

use serde::Serialize;

use crate::algebra::{classify, Relation};
use crate::auction::BudgetState;
use crate::error::Result;
use crate::explorer::enumerate::{enumerate_forms, EnumerationSpec};
use crate::game::GameId;
use crate::notation::{parse, print, Style};
use crate::solver::{PartialOutcome, Solver};

/// A position `(x, state)` at which `g + x` and `h + x` have different partial outcomes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// Literal notation, so the witness can be re-parsed and replayed.
    pub x: String,
    pub tb: u32,
    pub state: String,
    pub outcome_g: PartialOutcome,
    pub outcome_h: PartialOutcome,
    /// Relations of `g` to `h` the witness refutes.
    pub refutes: Vec<&'static str>,
}

impl Counterexample {
    /// Re-evaluates the witness from its textual form.
    pub fn replays(&self, solver: &Solver, g: GameId, h: GameId) -> Result<bool> {
        let games = solver.games();
        let x = parse(games, &self.x)?;
        let s = BudgetState::parse(self.tb, &self.state)?;
        Ok(solver.partial_outcome(games.sum(g, x), s) == self.outcome_g
            && solver.partial_outcome(games.sum(h, x), s) == self.outcome_h)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum WitnessResult {
    /// The claim held on every instance within the bounds.
    Verified,
    CounterexampleFound(Counterexample),
    /// Nothing distinguishing was found; the bounds are not a proof.
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessReport {
    pub claim: String,
    pub bounds: EnumerationSpec,
    #[serde(flatten)]
    pub result: WitnessResult,
}

/// Searches `x` over the enumerated forms and every budget state for
/// `o(g+x, s) != o(h+x, s)`, in enumeration order.
pub fn witness_search(
    solver: &Solver,
    g: GameId,
    h: GameId,
    spec: &EnumerationSpec,
) -> Result<WitnessReport> {
    let games = solver.games();
    let xs = enumerate_forms(games, spec)?;
    let claim = format!(
        "{} = {}",
        print(games, g, Style::Named),
        print(games, h, Style::Named)
    );
    let found = find_distinguishing(solver, g, h, &spec.tb_range, &xs);
    Ok(WitnessReport {
        claim,
        bounds: spec.clone(),
        result: match found {
            Some(c) => WitnessResult::CounterexampleFound(c),
            None => WitnessResult::Inconclusive,
        },
    })
}

pub(crate) fn find_distinguishing(
    solver: &Solver,
    g: GameId,
    h: GameId,
    tbs: &[u32],
    xs: &[GameId],
) -> Option<Counterexample> {
    let games = solver.games();
    for &tb in tbs {
        for &x in xs {
            let (gx, hx) = (games.sum(g, x), games.sum(h, x));
            for s in BudgetState::all(tb) {
                let a = solver.partial_outcome(gx, s);
                let b = solver.partial_outcome(hx, s);
                if a != b {
                    let refutes = if a < b {
                        vec!["EQ", "GE", "GT"]
                    } else {
                        vec!["EQ", "LE", "LT"]
                    };
                    return Some(Counterexample {
                        x: print(games, x, Style::Literal),
                        tb,
                        state: s.to_string(),
                        outcome_g: a,
                        outcome_h: b,
                        refutes,
                    });
                }
            }
        }
    }
    None
}

#[derive(Debug, Clone, Serialize)]
pub struct RefutedCandidate {
    pub candidate: String,
    pub witness: Counterexample,
}

#[derive(Debug, Clone, Serialize)]
pub struct InverseReport {
    pub game: String,
    pub tb: u32,
    pub bounds: EnumerationSpec,
    pub candidates: usize,
    /// Candidates `h` with `g + h` certified `EQ0`.
    pub certified: Vec<String>,
    /// Candidates neither certified nor refuted within the bounds.
    pub surviving: Vec<String>,
    pub refuted: usize,
    #[serde(skip)]
    pub refutations: Vec<RefutedCandidate>,
}

/// Tries every enumerated `h` as an inverse of `g`: certifies `g + h = 0` when
/// possible, otherwise looks for a witness separating `g + h` from `0`.
pub fn inverse_search(
    solver: &Solver,
    g: GameId,
    tb: u32,
    spec: &EnumerationSpec,
) -> Result<InverseReport> {
    let games = solver.games();
    let forms = enumerate_forms(games, spec)?;
    let zero = games.zero();
    let mut certified = Vec::new();
    let mut surviving = Vec::new();
    let mut refutations = Vec::new();
    for &h in &forms {
        let s = games.sum(g, h);
        if classify(solver, s, tb).verdict(Relation::Eq).is_proven() {
            certified.push(print(games, h, Style::Named));
            continue;
        }
        match find_distinguishing(solver, s, zero, &[tb], &forms) {
            Some(w) => refutations.push(RefutedCandidate {
                candidate: print(games, h, Style::Literal),
                witness: w,
            }),
            None => surviving.push(print(games, h, Style::Named)),
        }
    }
    Ok(InverseReport {
        game: print(games, g, Style::Named),
        tb,
        bounds: spec.clone(),
        candidates: forms.len(),
        certified,
        surviving,
        refuted: refutations.len(),
        refutations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Games;
    use std::sync::Arc;

    fn solver() -> Solver {
        Solver::new(Arc::new(Games::new()))
    }

    #[test]
    fn up_plus_down_is_not_zero() {
        let s = solver();
        let g = parse(s.games(), "^+v").unwrap();
        let spec = EnumerationSpec::new(0, [1]);
        let r = witness_search(&s, g, GameId::ZERO, &spec).unwrap();
        let WitnessResult::CounterexampleFound(c) = r.result else {
            panic!("expected a witness")
        };
        assert_eq!((c.x.as_str(), c.state.as_str()), ("0", "1^"));
        assert_eq!(
            (c.outcome_g, c.outcome_h),
            (PartialOutcome::L, PartialOutcome::R)
        );
        assert!(c.replays(&s, g, GameId::ZERO).unwrap());
    }

    #[test]
    fn star_plus_star_is_not_zero() {
        let s = solver();
        let g = parse(s.games(), "*+*").unwrap();
        let r = witness_search(&s, g, GameId::ZERO, &EnumerationSpec::new(0, [1])).unwrap();
        assert!(matches!(r.result, WitnessResult::CounterexampleFound(ref c) if c.state == "1^"));
    }

    #[test]
    fn integer_difference_has_no_witness() {
        let s = solver();
        let g = parse(s.games(), "1+-1").unwrap();
        let r = witness_search(&s, g, GameId::ZERO, &EnumerationSpec::new(2, 0..=2)).unwrap();
        assert_eq!(r.result, WitnessResult::Inconclusive);
    }

    #[test]
    fn inverses() {
        let s = solver();
        let one = parse(s.games(), "1").unwrap();
        let r = inverse_search(&s, one, 2, &EnumerationSpec::new(1, [2])).unwrap();
        assert!(r.certified.contains(&"-1".to_string()), "{:?}", r.certified);
        let r = inverse_search(&s, GameId::ZERO, 1, &EnumerationSpec::new(1, [1])).unwrap();
        assert!(r.certified.contains(&"0".to_string()));
    }
}
