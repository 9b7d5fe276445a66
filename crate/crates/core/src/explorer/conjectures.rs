//! Bounded experiments on open conjectures. Results are evidence within the
//! stamped bounds, never proofs.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{
    classify, compare, identify_number_value, integer_form, is_infinitesimal_bounded, is_number,
    Relation, Status,
};
use crate::error::{Error, Result};
use crate::explorer::enumerate::{enumerate_forms, EnumerationSpec};
use crate::explorer::search::{find_distinguishing, Counterexample};
use crate::game::GameId;
use crate::notation::{print, Style};
use crate::solver::Solver;

pub const CONJECTURES: &[&str] = &[
    "inverse-is-conjugate",
    "number-definition-equivalence",
    "unique-idempotent",
    "number-simplicity",
    "positive-infinitesimals",
    "integer-exceeds-birthday",
];

pub const DISCLAIMER: &str =
    "bounded experiment: evidence within the stated bounds only, not a proof";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConjectureResult {
    /// Every decided instance agrees with the conjecture and none was left undecided.
    Verified,
    /// A decided instance contradicts the conjecture; see `counterexample`.
    CounterexampleFound,
    /// No contradiction, but some instances could not be decided.
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjectureReport {
    pub conjecture: String,
    pub bounds: EnumerationSpec,
    pub result: ConjectureResult,
    pub note: &'static str,
    pub observations: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
    pub elapsed_ms: u128,
}

impl ConjectureReport {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

fn result_of(contradictions: usize, undecided: usize) -> ConjectureResult {
    if contradictions > 0 {
        ConjectureResult::CounterexampleFound
    } else if undecided > 0 {
        ConjectureResult::Inconclusive
    } else {
        ConjectureResult::Verified
    }
}

pub fn run_conjecture(
    solver: &Solver,
    name: &str,
    spec: &EnumerationSpec,
) -> Result<ConjectureReport> {
    let conjecture = CONJECTURES
        .iter()
        .copied()
        .find(|c| c.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::UnknownConjecture(name.to_string()))?;
    let start = Instant::now();
    let forms = enumerate_forms(solver.games(), spec)?;
    let (result, observations, counterexample) = match conjecture {
        "inverse-is-conjugate" => inverse_is_conjugate(solver, spec, &forms),
        "number-definition-equivalence" => number_definitions(solver, spec, &forms),
        "unique-idempotent" => unique_idempotent(solver, spec, &forms),
        "number-simplicity" => number_simplicity(solver, spec, &forms)?,
        "positive-infinitesimals" => positive_infinitesimals(solver, spec, &forms)?,
        "integer-exceeds-birthday" => integer_exceeds_birthday(solver, spec, &forms)?,
        _ => unreachable!("conjecture list and dispatch agree"),
    };
    Ok(ConjectureReport {
        conjecture: conjecture.to_string(),
        bounds: spec.clone(),
        result,
        note: DISCLAIMER,
        observations,
        counterexample,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

type Outcome = (ConjectureResult, Value, Option<Value>);

fn named(solver: &Solver, g: GameId) -> String {
    print(solver.games(), g, Style::Named)
}

fn lit(solver: &Solver, g: GameId) -> String {
    print(solver.games(), g, Style::Literal)
}

/// Every certified inverse `h` of `g` should equal `conj(g)`.
fn inverse_is_conjugate(solver: &Solver, spec: &EnumerationSpec, forms: &[GameId]) -> Outcome {
    let games = solver.games();
    let pairs: Vec<(usize, usize, u32)> = spec
        .tb_range
        .iter()
        .flat_map(|&tb| {
            (0..forms.len()).flat_map(move |i| (i..forms.len()).map(move |j| (i, j, tb)))
        })
        .collect();
    // (g, h, tb, relation of h to conj(g))
    let found: Vec<(GameId, GameId, u32, Status, Option<Counterexample>)> = pairs
        .par_iter()
        .filter_map(|&(i, j, tb)| {
            let (g, h) = (forms[i], forms[j]);
            let s = games.sum(g, h);
            let v = solver.outcome_vector(s, tb);
            // Cheap necessary conditions for EQ0 before the certificate.
            if v.get(&crate::BudgetState::plain(tb, 0)) != crate::PartialOutcome::L
                || v.get(&crate::BudgetState::hatted(tb, tb)) != crate::PartialOutcome::R
            {
                return None;
            }
            if !classify(solver, s, tb).verdict(Relation::Eq).is_proven() {
                return None;
            }
            let cg = games.conjugate(g);
            if h == cg {
                return Some((g, h, tb, Status::Proven, None));
            }
            // Value equality h = conj(g), using g as the inverse of conj(g).
            let status = match compare(solver, h, cg, tb, Some(g), &[]) {
                Ok(c) => c.status(Relation::Eq),
                Err(_) => Status::Unknown,
            };
            let witness = if status == Status::Proven {
                None
            } else {
                find_distinguishing(solver, h, cg, &[tb], forms)
            };
            let status = if witness.is_some() {
                Status::Refuted
            } else {
                status
            };
            Some((g, h, tb, status, witness))
        })
        .collect();
    let structural = found.iter().filter(|f| f.1 == games.conjugate(f.0)).count();
    let by_value = found.iter().filter(|f| f.3 == Status::Proven).count() - structural;
    let bad: Vec<&_> = found.iter().filter(|f| f.3 == Status::Refuted).collect();
    let undecided = found.iter().filter(|f| f.3 == Status::Unknown).count();
    let pair_json = |f: &(GameId, GameId, u32, Status, Option<Counterexample>)| json!({"g": named(solver, f.0), "h": named(solver, f.1), "tb": f.2, "h_equals_conj_g": f.3, "witness": f.4});
    let counterexample = bad.first().map(|f| {
        let mut v = pair_json(f);
        v["g_literal"] = json!(lit(solver, f.0));
        v["h_literal"] = json!(lit(solver, f.1));
        v
    });
    let observations = json!({
        "pairs_checked": pairs.len(),
        "certified_inverse_pairs": found.len(),
        "structurally_conjugate": structural,
        "conjugate_by_certified_value": by_value,
        "undecided": undecided,
        "contradictions": bad.len(),
        "sample_pairs": found.iter().take(20).map(pair_json).collect::<Vec<_>>(),
    });
    (
        result_of(bad.len(), undecided),
        observations,
        counterexample,
    )
}

/// Tri-state `a < b`, routed through `conj(b)`.
fn less(solver: &Solver, a: GameId, b: GameId, tb: u32) -> Option<bool> {
    let c = compare(solver, a, b, tb, Some(solver.games().conjugate(b)), &[]).ok()?;
    match c.status(Relation::Lt) {
        Status::Proven => Some(true),
        Status::Refuted => Some(false),
        Status::Unknown => None,
    }
}

fn all_tri(items: impl IntoIterator<Item = Option<bool>>) -> Option<bool> {
    let mut unknown = false;
    for i in items {
        match i {
            Some(false) => return Some(false),
            None => unknown = true,
            Some(true) => {}
        }
    }
    if unknown {
        None
    } else {
        Some(true)
    }
}

/// Criterion (i): `H^L < H^R` at every subposition. Criterion (ii): `H^L < H < H^R`.
fn number_definitions(solver: &Solver, spec: &EnumerationSpec, forms: &[GameId]) -> Outcome {
    let games = solver.games();
    let jobs: Vec<(GameId, u32)> = spec
        .tb_range
        .iter()
        .flat_map(|&tb| forms.iter().map(move |&g| (g, tb)))
        .collect();
    let rows: Vec<(GameId, u32, Option<bool>, Option<bool>)> = jobs
        .par_iter()
        .map(|&(g, tb)| {
            let subs = games.followers(g);
            let crit_i = all_tri(subs.iter().flat_map(|&s| {
                let (ls, rs) = (games.left(s), games.right(s));
                ls.iter()
                    .flat_map(move |&l| rs.iter().map(move |&r| less(solver, l, r, tb)))
                    .collect::<Vec<_>>()
            }));
            let crit_ii = Some(is_number(solver, g, tb).is_number)
                .filter(|&b| b)
                .or_else(|| {
                    // A failed certificate is not a refutation; look for a refuted comparison.
                    let refuted = subs.iter().any(|&s| {
                        games
                            .left(s)
                            .iter()
                            .any(|&l| less(solver, l, s, tb) == Some(false))
                            || games
                                .right(s)
                                .iter()
                                .any(|&r| less(solver, s, r, tb) == Some(false))
                    });
                    refuted.then_some(false)
                });
            (g, tb, crit_i, crit_ii)
        })
        .collect();
    let both = rows
        .iter()
        .filter(|r| r.2.is_some() && r.3.is_some())
        .count();
    let agree = rows.iter().filter(|r| r.2.is_some() && r.2 == r.3).count();
    let disagreements: Vec<_> = rows
        .iter()
        .filter(|r| r.2.is_some() && r.3.is_some() && r.2 != r.3)
        .collect();
    let undecided = rows.len() - both;
    let observations = json!({
        "instances": rows.len(),
        "both_decided": both,
        "agreements": agree,
        "disagreements": disagreements.len(),
        "undecided": undecided,
        "numbers_by_ii": rows.iter().filter(|r| r.3 == Some(true)).count(),
    });
    let counterexample = disagreements.first().map(|r| {
        json!({"g": named(solver, r.0), "g_literal": lit(solver, r.0), "tb": r.1, "criterion_i": r.2, "criterion_ii": r.3})
    });
    (
        result_of(disagreements.len(), undecided),
        observations,
        counterexample,
    )
}

/// Forms with `g + g` certified equal to `g` should all be zeros.
fn unique_idempotent(solver: &Solver, spec: &EnumerationSpec, forms: &[GameId]) -> Outcome {
    let games = solver.games();
    let jobs: Vec<(GameId, u32)> = spec
        .tb_range
        .iter()
        .flat_map(|&tb| forms.iter().map(move |&g| (g, tb)))
        .collect();
    let rows: Vec<(GameId, u32, Status, Status)> = jobs
        .par_iter()
        .filter_map(|&(g, tb)| {
            let gg = games.sum(g, g);
            // Witness over X = 0 first: g + g and g differ somewhere.
            if find_distinguishing(solver, gg, g, &[tb], &[GameId::ZERO]).is_some() {
                return None;
            }
            let idem = match compare(solver, gg, g, tb, Some(games.conjugate(g)), &[]) {
                Ok(c) => c.status(Relation::Eq),
                Err(_) => Status::Unknown,
            };
            (idem == Status::Proven).then(|| {
                let zero = classify(solver, g, tb).status(Relation::Eq);
                (g, tb, idem, zero)
            })
        })
        .collect();
    let bad: Vec<_> = rows.iter().filter(|r| r.3 == Status::Refuted).collect();
    let undecided = rows.iter().filter(|r| r.3 == Status::Unknown).count();
    let observations = json!({
        "instances": jobs.len(),
        "certified_idempotents": rows.len(),
        "idempotents_certified_zero": rows.iter().filter(|r| r.3 == Status::Proven).count(),
        "undecided": undecided,
        "candidates": rows.iter().take(20).map(|r| json!({"g": named(solver, r.0), "tb": r.1})).collect::<Vec<_>>(),
    });
    let counterexample = bad
        .first()
        .map(|r| json!({"g": named(solver, r.0), "g_literal": lit(solver, r.0), "tb": r.1}));
    (
        result_of(bad.len(), undecided),
        observations,
        counterexample,
    )
}

/// Every certified number should be identified with a dyadic value.
fn number_simplicity(solver: &Solver, spec: &EnumerationSpec, forms: &[GameId]) -> Result<Outcome> {
    let jobs: Vec<(GameId, u32)> = spec
        .tb_range
        .iter()
        .flat_map(|&tb| forms.iter().map(move |&g| (g, tb)))
        .collect();
    let rows: Vec<(GameId, u32, Option<String>)> = jobs
        .par_iter()
        .filter(|&&(g, tb)| is_number(solver, g, tb).is_number)
        .map(|&(g, tb)| {
            let v = identify_number_value(solver, g, tb, 6)?;
            Ok((g, tb, v.map(|v| v.to_string())))
        })
        .collect::<Result<_>>()?;
    let undecided = rows.iter().filter(|r| r.2.is_none()).count();
    let observations = json!({
        "certified_numbers": rows.len(),
        "identified": rows.len() - undecided,
        "unidentified": undecided,
        "values": rows.iter().take(40).map(|r| json!({"g": named(solver, r.0), "tb": r.1, "value": r.2})).collect::<Vec<_>>(),
    });
    Ok((result_of(0, undecided), observations, None))
}

/// Searches for forms certified `> 0` and infinitesimal up to `k = 4`. Any hit is
/// recorded as a candidate; the conjecture-side claim is "none within bounds".
fn positive_infinitesimals(
    solver: &Solver,
    spec: &EnumerationSpec,
    forms: &[GameId],
) -> Result<Outcome> {
    let jobs: Vec<(GameId, u32)> = spec
        .tb_range
        .iter()
        .filter(|&&tb| tb > 0)
        .flat_map(|&tb| forms.iter().map(move |&g| (g, tb)))
        .collect();
    let hits: Vec<(GameId, u32)> = jobs
        .par_iter()
        .filter(|&&(g, tb)| classify(solver, g, tb).verdict(Relation::Gt).is_proven())
        .map(|&(g, tb)| Ok((g, tb, is_infinitesimal_bounded(solver, g, tb, 4)?)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|(_, _, v)| v.is_proven())
        .map(|(g, tb, _)| (g, tb))
        .collect();
    let observations = json!({
        "instances": jobs.len(),
        "positive_infinitesimal_candidates": hits.len(),
        "candidates": hits.iter().take(20).map(|&(g, tb)| json!({"g": named(solver, g), "tb": tb})).collect::<Vec<_>>(),
    });
    let counterexample = hits
        .first()
        .map(|&(g, tb)| json!({"g": named(solver, g), "g_literal": lit(solver, g), "tb": tb, "k_max": 4}));
    Ok((result_of(hits.len(), 0), observations, counterexample))
}

/// `g < n` whenever `n > birthday(g)`; checked at `n = birthday(g) + 1`.
fn integer_exceeds_birthday(
    solver: &Solver,
    spec: &EnumerationSpec,
    forms: &[GameId],
) -> Result<Outcome> {
    let games = solver.games();
    let jobs: Vec<(GameId, u32)> = spec
        .tb_range
        .iter()
        .flat_map(|&tb| forms.iter().map(move |&g| (g, tb)))
        .collect();
    let rows: Vec<(GameId, u32, Status)> = jobs
        .par_iter()
        .map(|&(g, tb)| {
            let n = integer_form(games, games.birthday(g) as i64 + 1)?;
            let c = compare(solver, g, n, tb, Some(games.conjugate(n)), &[])?;
            Ok((g, tb, c.status(Relation::Lt)))
        })
        .collect::<Result<_>>()?;
    let bad: Vec<_> = rows.iter().filter(|r| r.2 == Status::Refuted).collect();
    let undecided = rows.iter().filter(|r| r.2 == Status::Unknown).count();
    let observations = json!({
        "instances": rows.len(),
        "proven": rows.iter().filter(|r| r.2 == Status::Proven).count(),
        "undecided": undecided,
        "refuted": bad.len(),
    });
    let counterexample = bad
        .first()
        .map(|r| json!({"g": named(solver, r.0), "g_literal": lit(solver, r.0), "tb": r.1}));
    Ok((
        result_of(bad.len(), undecided),
        observations,
        counterexample,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Games;
    use std::sync::Arc;

    #[test]
    fn inverse_is_conjugate_small() {
        let s = Solver::new(Arc::new(Games::new()));
        let r =
            run_conjecture(&s, "inverse-is-conjugate", &EnumerationSpec::new(1, 0..=2)).unwrap();
        assert_ne!(
            r.result,
            ConjectureResult::CounterexampleFound,
            "{:?}",
            r.counterexample
        );
        assert!(r.observations["certified_inverse_pairs"].as_u64().unwrap() > 0);
    }

    #[test]
    fn unknown_conjecture() {
        let s = Solver::new(Arc::new(Games::new()));
        assert!(matches!(
            run_conjecture(&s, "x", &EnumerationSpec::default()),
            Err(Error::UnknownConjecture(_))
        ));
    }
}
