//! Tri-state relation verdicts and the evidence behind them.

use std::fmt;

use serde::Serialize;

use crate::auction::BudgetState;
use crate::game::GameId;
use crate::solver::PartialOutcome;

/// A relation of a game against `0` (or, for comparisons, of `g - h` against `0`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Relation {
    #[serde(rename = "GE0")]
    Ge,
    #[serde(rename = "LE0")]
    Le,
    #[serde(rename = "GT0")]
    Gt,
    #[serde(rename = "LT0")]
    Lt,
    #[serde(rename = "EQ0")]
    Eq,
    #[serde(rename = "FUZZY0")]
    Fuzzy,
}

impl Relation {
    pub const ALL: [Relation; 6] = [
        Relation::Ge,
        Relation::Le,
        Relation::Gt,
        Relation::Lt,
        Relation::Eq,
        Relation::Fuzzy,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Ge => ">=",
            Relation::Le => "<=",
            Relation::Gt => ">",
            Relation::Lt => "<",
            Relation::Eq => "=",
            Relation::Fuzzy => "||",
        }
    }

    /// The relation with both sides exchanged (`g R h` iff `h R' g`).
    pub fn converse(self) -> Relation {
        match self {
            Relation::Ge => Relation::Le,
            Relation::Le => Relation::Ge,
            Relation::Gt => Relation::Lt,
            Relation::Lt => Relation::Gt,
            r => r,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Ge => "GE0",
            Relation::Le => "LE0",
            Relation::Gt => "GT0",
            Relation::Lt => "LT0",
            Relation::Eq => "EQ0",
            Relation::Fuzzy => "FUZZY0",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Status {
    Proven,
    Refuted,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Proven => "Proven",
            Status::Refuted => "Refuted",
            Status::Unknown => "Unknown",
        })
    }
}

/// Named results the engine relies on besides the numbered comparison tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    /// `G >= 0` forces `o(G,0) = L`, `G <= 0` forces `o(G,tb^) = R` (take `X = 0`).
    ZeroWitness,
    /// `G > 0` forces every partial outcome to be `L`.
    PositiveIsAllLeft,
    /// `G < 0` forces every partial outcome to be `R`.
    NegativeIsAllRight,
    /// `{G|H} = 0` when `G < 0` and `H > 0` with the matching 0-bid strategies.
    ZeroSandwich,
    /// A number is `>= 0` iff `o(G,0) = L`.
    NumberComparison,
    /// Every game equals itself.
    Reflexivity,
    /// Relations derived from the `>=`/`<=` verdicts they are built from.
    Derived,
}

/// A distinguishing position: `o(g + x, state)` differs from `o(h + x, state)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Witness {
    pub x: String,
    #[serde(skip)]
    pub x_id: GameId,
    pub tb: u32,
    pub state: String,
    #[serde(skip)]
    pub budget: BudgetState,
    pub outcome_g: PartialOutcome,
    pub outcome_h: PartialOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Evidence {
    /// Item number of the constructive comparison tests (1–7).
    Test(u8),
    /// Several comparison tests that jointly establish the relation.
    Tests(Vec<u8>),
    Theorem(Theorem),
    Witness(Witness),
}

impl fmt::Display for Evidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Evidence::Test(n) => write!(f, "test {n}"),
            Evidence::Tests(ns) => {
                let ns: Vec<String> = ns.iter().map(|n| n.to_string()).collect();
                write!(f, "tests {}", ns.join("+"))
            }
            Evidence::Theorem(t) => {
                write!(f, "{}", serde_json::to_value(t).unwrap().as_str().unwrap())
            }
            Evidence::Witness(w) => write!(
                f,
                "witness X={} at {} (tb={}): {} vs {}",
                w.x, w.state, w.tb, w.outcome_g, w.outcome_h
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RelationVerdict {
    pub relation: Relation,
    pub status: Status,
    pub evidence: Option<Evidence>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl RelationVerdict {
    pub fn proven(relation: Relation, evidence: Evidence) -> Self {
        RelationVerdict {
            relation,
            status: Status::Proven,
            evidence: Some(evidence),
            note: None,
        }
    }

    pub fn refuted(relation: Relation, evidence: Evidence) -> Self {
        RelationVerdict {
            relation,
            status: Status::Refuted,
            evidence: Some(evidence),
            note: None,
        }
    }

    pub fn unknown(relation: Relation) -> Self {
        RelationVerdict {
            relation,
            status: Status::Unknown,
            evidence: None,
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn is_proven(&self) -> bool {
        self.status == Status::Proven
    }

    pub fn is_refuted(&self) -> bool {
        self.status == Status::Refuted
    }
}

impl fmt::Display for RelationVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.relation, self.status)?;
        if let Some(e) = &self.evidence {
            write!(f, " ({e})")?;
        }
        if let Some(n) = &self.note {
            write!(f, " [{n}]")?;
        }
        Ok(())
    }
}

/// The six verdicts for one game (or difference), in [`Relation::ALL`] order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct VerdictSet(Vec<RelationVerdict>);

impl VerdictSet {
    /// Builds the full set from the `>=` and `<=` verdicts plus any direct
    /// evidence for the strict and fuzzy relations.
    pub(crate) fn from_parts(
        ge: RelationVerdict,
        le: RelationVerdict,
        gt: RelationVerdict,
        lt: RelationVerdict,
        fuzzy: RelationVerdict,
    ) -> Self {
        let derived = Evidence::Theorem(Theorem::Derived);
        let eq = if ge.is_proven() && le.is_proven() {
            RelationVerdict::proven(Relation::Eq, pair_evidence(&ge, &le))
        } else if ge.is_refuted() {
            RelationVerdict::refuted(Relation::Eq, ge.evidence.clone().unwrap_or(derived.clone()))
        } else if le.is_refuted() {
            RelationVerdict::refuted(Relation::Eq, le.evidence.clone().unwrap_or(derived))
        } else {
            RelationVerdict::unknown(Relation::Eq)
        };
        VerdictSet(vec![ge, le, gt, lt, eq, fuzzy])
    }

    pub fn get(&self, relation: Relation) -> &RelationVerdict {
        self.0
            .iter()
            .find(|v| v.relation == relation)
            .expect("verdict sets hold all six relations")
    }

    pub fn status(&self, relation: Relation) -> Status {
        self.get(relation).status
    }

    pub fn iter(&self) -> impl Iterator<Item = &RelationVerdict> {
        self.0.iter()
    }

    /// The proven relation among `EQ0`, `GT0`, `LT0`, `FUZZY0`, if any.
    pub fn decided(&self) -> Option<Relation> {
        [Relation::Eq, Relation::Gt, Relation::Lt, Relation::Fuzzy]
            .into_iter()
            .find(|&r| self.get(r).is_proven())
    }

    /// Verdicts with every relation mirrored (`GE0` of `g - h` becomes `LE0` of `h - g`).
    pub fn converse(&self) -> VerdictSet {
        let mut out: Vec<RelationVerdict> = Relation::ALL
            .iter()
            .map(|&r| {
                let mut v = self.get(r.converse()).clone();
                v.relation = r;
                v
            })
            .collect();
        out.sort_by_key(|v| Relation::ALL.iter().position(|&r| r == v.relation));
        VerdictSet(out)
    }
}

fn pair_evidence(ge: &RelationVerdict, le: &RelationVerdict) -> Evidence {
    match (&ge.evidence, &le.evidence) {
        (Some(Evidence::Theorem(a)), Some(Evidence::Theorem(b))) if a == b => Evidence::Theorem(*a),
        (Some(Evidence::Test(a)), Some(Evidence::Test(b))) => Evidence::Tests(vec![*a, *b]),
        _ => Evidence::Theorem(Theorem::Derived),
    }
}
