//! Number certificates, value identification and infinitesimal bounds.

use std::collections::HashMap;

use serde::Serialize;

use crate::algebra::classify::{classify, compare, Comparison};
use crate::algebra::numbers::{dyadic_form, DyadicValue};
use crate::algebra::verdict::{Relation, RelationVerdict};
use crate::auction::Player;
use crate::error::Result;
use crate::game::GameId;
use crate::solver::Solver;

/// One option check: `G - G^L > 0` for a Left option, `G - G^R < 0` for a Right one.
#[derive(Debug, Clone, Serialize)]
pub struct OptionCheck {
    pub side: Player,
    #[serde(skip)]
    pub option: GameId,
    #[serde(skip)]
    pub difference: GameId,
    pub verdict: RelationVerdict,
}

#[derive(Debug, Clone, Serialize)]
pub struct NumberCertificate {
    #[serde(skip)]
    pub game: GameId,
    pub tb: u32,
    pub is_number: bool,
    pub checks: Vec<OptionCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

/// Recursive number check: every option is a certified number with a certified
/// conjugate inverse, every Left option is below `g`, and `g` is below every Right
/// option.
pub fn is_number(solver: &Solver, g: GameId, tb: u32) -> NumberCertificate {
    let mut memo = HashMap::new();
    certify(solver, g, tb, &mut memo)
}

fn certify(
    solver: &Solver,
    g: GameId,
    tb: u32,
    memo: &mut HashMap<GameId, bool>,
) -> NumberCertificate {
    let games = solver.games();
    let fail = |checks, msg: String| NumberCertificate {
        game: g,
        tb,
        is_number: false,
        checks,
        failure: Some(msg),
    };
    let mut checks = Vec::new();
    for side in [Player::Left, Player::Right] {
        for &o in games.options(g, side) {
            let ok = match memo.get(&o) {
                Some(&b) => b,
                None => {
                    let b = certify(solver, o, tb, memo).is_number;
                    memo.insert(o, b);
                    b
                }
            };
            if !ok {
                return fail(
                    checks,
                    format!("{side} option {o} is not a certified number"),
                );
            }
            let inv = games.conjugate(o);
            if !classify(solver, games.sum(o, inv), tb)
                .verdict(Relation::Eq)
                .is_proven()
            {
                return fail(
                    checks,
                    format!("{side} option {o} has no certified inverse"),
                );
            }
            let difference = games.sum(g, inv);
            let want = match side {
                Player::Left => Relation::Gt,
                Player::Right => Relation::Lt,
            };
            let verdict = classify(solver, difference, tb).verdict(want).clone();
            let proven = verdict.is_proven();
            checks.push(OptionCheck {
                side,
                option: o,
                difference,
                verdict,
            });
            if !proven {
                return fail(
                    checks,
                    format!("{side} option {o} is not certified on the correct side"),
                );
            }
        }
    }
    NumberCertificate {
        game: g,
        tb,
        is_number: true,
        checks,
        failure: None,
    }
}

/// Tri-state comparison of `g` with the dyadic `v`, using `conj(v)` as the inverse.
fn probe(solver: &Solver, g: GameId, v: DyadicValue, tb: u32) -> Result<Option<Relation>> {
    let games = solver.games();
    let d = dyadic_form(games, v)?;
    let c: Comparison = compare(solver, g, d, tb, Some(games.conjugate(d)), &[])?;
    Ok(c.decided())
}

/// Value of a certified number: integer bracketing, then dyadic bisection down to
/// denominators `2^k_max`. `None` when `g` is not a certified number or a probe
/// is inconclusive.
pub fn identify_number_value(
    solver: &Solver,
    g: GameId,
    tb: u32,
    k_max: u32,
) -> Result<Option<DyadicValue>> {
    if !is_number(solver, g, tb).is_number {
        return Ok(None);
    }
    let b = solver.games().birthday(g) as i64;
    let mut lo = DyadicValue::integer(-b - 1);
    let mut hi = DyadicValue::integer(b + 1);
    match (probe(solver, g, lo, tb)?, probe(solver, g, hi, tb)?) {
        (Some(Relation::Gt), Some(Relation::Lt)) => {}
        _ => return Ok(None),
    }
    // Integers first.
    while hi.numerator() - lo.numerator() > 1 {
        let mid = DyadicValue::integer(lo.numerator() + (hi.numerator() - lo.numerator()) / 2);
        match probe(solver, g, mid, tb)? {
            Some(Relation::Eq) => return Ok(Some(mid)),
            Some(Relation::Gt) => lo = mid,
            Some(Relation::Lt) => hi = mid,
            _ => return Ok(None),
        }
    }
    for _ in 0..k_max {
        let mid = lo.midpoint(&hi);
        match probe(solver, g, mid, tb)? {
            Some(Relation::Eq) => return Ok(Some(mid)),
            Some(Relation::Gt) => lo = mid,
            Some(Relation::Lt) => hi = mid,
            _ => return Ok(None),
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum InfinitesimalVerdict {
    /// `-1/2^k < g < 1/2^k` certified for every `k` up to the bound.
    ProvenUpTo { k: u32 },
    /// A bound fails for this `k`.
    Refuted { k: u32 },
    /// A bound could not be decided for this `k`.
    Unknown { k: u32 },
}

impl InfinitesimalVerdict {
    pub fn is_proven(&self) -> bool {
        matches!(self, InfinitesimalVerdict::ProvenUpTo { .. })
    }
}

pub fn is_infinitesimal_bounded(
    solver: &Solver,
    g: GameId,
    tb: u32,
    k_max: u32,
) -> Result<InfinitesimalVerdict> {
    let games = solver.games();
    for k in 1..=k_max {
        let u = dyadic_form(games, DyadicValue::unit(k))?;
        let nu = games.conjugate(u);
        let below = compare(solver, g, u, tb, Some(nu), &[])?;
        let above = compare(solver, g, nu, tb, Some(u), &[])?;
        let (b, a) = (below.verdict(Relation::Lt), above.verdict(Relation::Gt));
        if b.is_refuted() || a.is_refuted() {
            return Ok(InfinitesimalVerdict::Refuted { k });
        }
        if !(b.is_proven() && a.is_proven()) {
            return Ok(InfinitesimalVerdict::Unknown { k });
        }
    }
    Ok(InfinitesimalVerdict::ProvenUpTo { k: k_max })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Games;
    use crate::notation::parse;
    use std::sync::Arc;

    fn solver() -> Solver {
        Solver::new(Arc::new(Games::new()))
    }

    #[test]
    fn numbers_certify() {
        let s = solver();
        for text in ["0", "1", "-2", "1/2", "3/4", "{0|1}"] {
            let g = parse(s.games(), text).unwrap();
            let c = is_number(&s, g, 3);
            assert!(c.is_number, "{text}: {:?}", c.failure);
        }
    }

    #[test]
    fn non_numbers_fail() {
        let s = solver();
        for text in ["*", "^", "{1|-1}"] {
            let g = parse(s.games(), text).unwrap();
            assert!(!is_number(&s, g, 3).is_number, "{text}");
        }
    }

    #[test]
    fn identifies_values() {
        let s = solver();
        for (text, v) in [
            ("0", DyadicValue::integer(0)),
            ("2", DyadicValue::integer(2)),
            ("-3/4", DyadicValue::new(-3, 2)),
            ("{0|1}", DyadicValue::unit(1)),
        ] {
            let g = parse(s.games(), text).unwrap();
            assert_eq!(
                identify_number_value(&s, g, 3, 4).unwrap(),
                Some(v),
                "{text}"
            );
        }
    }

    #[test]
    fn up_is_infinitesimal() {
        let s = solver();
        let up = s.games().up();
        assert!(is_infinitesimal_bounded(&s, up, 3, 3).unwrap().is_proven());
        let half = parse(s.games(), "1/2").unwrap();
        assert_eq!(
            is_infinitesimal_bounded(&s, half, 3, 3).unwrap(),
            InfinitesimalVerdict::Refuted { k: 1 }
        );
    }
}
