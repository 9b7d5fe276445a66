//! Machine-checkable verification suites, one record per checked instance.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{
    classify, compare, dyadic_form, integer_form, is_infinitesimal_bounded, is_number,
    zero_sandwich, DyadicValue, Relation, Status,
};
use crate::auction::{BudgetState, Player};
use crate::error::{Error, Result};
use crate::explorer::enumerate::{enumerate_forms, EnumerationSpec};
use crate::explorer::oracle::AlternatingOracle;
use crate::explorer::search::{find_distinguishing, inverse_search};
use crate::game::GameId;
use crate::notation::{parse, print, Style};
use crate::solver::{PartialOutcome, Solver};

pub const SUITES: &[&str] = &[
    "mmw",
    "determinacy",
    "tb0-oracle",
    "conjugate-duality",
    "last-move-wins",
    "additive-property",
    "number-comparison",
    "integers",
    "dyadics",
    "infinitesimals",
    "zero-sandwich",
    "no-group-structure",
    "nozero-observation",
];

/// Bounds for a suite run. Stamped into every summary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub tb_range: Vec<u32>,
    pub max_birthday: u32,
    /// Size of the seeded sample used at birthday 3 and above.
    pub sample: usize,
    pub seed: u64,
    /// Integer bound `|n| <= n_max` for the integer family.
    pub n_max: i64,
    /// Exponent bound `k <= k_max` for the dyadic, infinitesimal and sandwich families.
    pub k_max: u32,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            tb_range: (0..=3).collect(),
            max_birthday: 2,
            sample: 1000,
            seed: 0x5eed,
            n_max: 3,
            k_max: 3,
        }
    }
}

impl SuiteConfig {
    pub fn spec(&self) -> EnumerationSpec {
        let mut spec = EnumerationSpec::new(self.max_birthday, self.tb_range.iter().copied());
        spec.seed = self.seed;
        if self.max_birthday >= 3 {
            spec.sample = Some(self.sample);
        }
        spec
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Unknown,
}

impl Verdict {
    fn of(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    /// Proven passes, Refuted fails, anything else is Unknown.
    fn of_status(s: Status) -> Self {
        match s {
            Status::Proven => Verdict::Pass,
            Status::Refuted => Verdict::Fail,
            Status::Unknown => Verdict::Unknown,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Record {
    pub suite: String,
    pub instance: String,
    pub tb: Option<u32>,
    pub result: Verdict,
    pub evidence: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub kind: &'static str,
    pub suite: String,
    pub bounds: SuiteConfig,
    pub checked: usize,
    pub passed: usize,
    pub failed: usize,
    pub unknown: usize,
    pub pass: bool,
    pub elapsed_ms: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl SuiteReport {
    /// JSON lines: one record per instance, then the summary.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("records serialize"));
            out.push('\n');
        }
        out.push_str(&serde_json::to_string(&self.summary).expect("summary serializes"));
        out.push('\n');
        out
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| r.result != Verdict::Pass)
    }
}

struct Ctx<'a> {
    solver: &'a Solver,
    config: &'a SuiteConfig,
    suite: &'static str,
}

impl Ctx<'_> {
    fn record(
        &self,
        instance: impl Into<String>,
        tb: Option<u32>,
        result: Verdict,
        evidence: Value,
    ) -> Record {
        Record {
            suite: self.suite.to_string(),
            instance: instance.into(),
            tb,
            result,
            evidence,
        }
    }

    fn lit(&self, g: GameId) -> String {
        print(self.solver.games(), g, Style::Literal)
    }

    fn named(&self, g: GameId) -> String {
        print(self.solver.games(), g, Style::Named)
    }

    fn forms(&self) -> Result<Vec<GameId>> {
        enumerate_forms(self.solver.games(), &self.config.spec())
    }

    /// Runs `f` over every (form, tb) pair in parallel, keeping enumeration order.
    fn per_form_tb<F>(&self, forms: &[GameId], f: F) -> Vec<Record>
    where
        F: Fn(GameId, u32) -> Option<Record> + Sync,
    {
        let pairs: Vec<(GameId, u32)> = forms
            .iter()
            .flat_map(|&g| self.config.tb_range.iter().map(move |&tb| (g, tb)))
            .collect();
        pairs.par_iter().filter_map(|&(g, tb)| f(g, tb)).collect()
    }
}

/// Runs a registered suite.
pub fn run_suite(solver: &Solver, name: &str, config: &SuiteConfig) -> Result<SuiteReport> {
    let suite = SUITES
        .iter()
        .copied()
        .find(|s| s.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::UnknownSuite(name.to_string()))?;
    let ctx = Ctx {
        solver,
        config,
        suite,
    };
    let start = Instant::now();
    let records = match suite {
        "mmw" => mmw(&ctx)?,
        "determinacy" => determinacy(&ctx)?,
        "tb0-oracle" => tb0_oracle(&ctx)?,
        "conjugate-duality" => conjugate_duality(&ctx)?,
        "last-move-wins" => last_move_wins(&ctx)?,
        "additive-property" => additive_property(&ctx)?,
        "number-comparison" => number_comparison(&ctx)?,
        "integers" => integers(&ctx)?,
        "dyadics" => dyadics(&ctx)?,
        "infinitesimals" => infinitesimals(&ctx)?,
        "zero-sandwich" => sandwiches(&ctx)?,
        "no-group-structure" => no_group_structure(&ctx)?,
        "nozero-observation" => nozero_observation(&ctx)?,
        _ => unreachable!("suite list and dispatch agree"),
    };
    let count = |v: Verdict| records.iter().filter(|r| r.result == v).count();
    let (passed, failed, unknown) = (
        count(Verdict::Pass),
        count(Verdict::Fail),
        count(Verdict::Unknown),
    );
    let summary = Summary {
        kind: "summary",
        suite: suite.to_string(),
        bounds: config.clone(),
        checked: records.len(),
        passed,
        failed,
        unknown,
        pass: failed == 0 && unknown == 0,
        elapsed_ms: start.elapsed().as_millis(),
    };
    Ok(SuiteReport { records, summary })
}

fn states_json(states: &[BudgetState]) -> Vec<String> {
    states.iter().map(|s| s.to_string()).collect()
}

fn mmw(ctx: &Ctx) -> Result<Vec<Record>> {
    let forms = ctx.forms()?;
    Ok(ctx.per_form_tb(&forms, |g, tb| {
        let v = ctx.solver.outcome_vector(g, tb);
        let mono = v.monotonicity_violations();
        let worth = v.marker_worth_violations();
        Some(ctx.record(
            ctx.lit(g),
            Some(tb),
            Verdict::of(mono.is_empty() && worth.is_empty()),
            json!({"vector": v, "monotonicity": states_json(&mono), "marker_worth": states_json(&worth)}),
        ))
    }))
}

fn determinacy(ctx: &Ctx) -> Result<Vec<Record>> {
    let forms = ctx.forms()?;
    Ok(ctx.per_form_tb(&forms, |g, tb| {
        let mut bad = Vec::new();
        for s in BudgetState::all(tb) {
            let m = ctx.solver.bid_matrix(g, s);
            let left_row = !m.all_left_rows().is_empty();
            let right_col = !m.all_right_columns().is_empty();
            let value = ctx.solver.partial_outcome(g, s);
            if left_row == right_col || left_row != (value == PartialOutcome::L) {
                bad.push(s.to_string());
            }
        }
        Some(ctx.record(
            ctx.lit(g),
            Some(tb),
            Verdict::of(bad.is_empty()),
            json!({"states": 2 * (tb + 1), "violations": bad}),
        ))
    }))
}

fn tb0_oracle(ctx: &Ctx) -> Result<Vec<Record>> {
    let forms = ctx.forms()?;
    let games = ctx.solver.games();
    let mut oracle = AlternatingOracle::new(games);
    let expected: Vec<(bool, bool)> = forms
        .iter()
        .map(|&g| {
            (
                oracle.first_player_wins(g, Player::Left),
                !oracle.first_player_wins(g, Player::Right),
            )
        })
        .collect();
    Ok(forms
        .par_iter()
        .zip(expected.par_iter())
        .map(|(&g, &(left_first, right_first_loses))| {
            let hat = ctx.solver.partial_outcome(g, BudgetState::hatted(0, 0)) == PartialOutcome::L;
            let plain = ctx.solver.partial_outcome(g, BudgetState::plain(0, 0)) == PartialOutcome::L;
            ctx.record(
                ctx.lit(g),
                Some(0),
                Verdict::of(hat == left_first && plain == right_first_loses),
                json!({
                    "solver": {"0^": hat, "0": plain},
                    "oracle": {"left_first_wins": left_first, "right_first_loses": right_first_loses},
                }),
            )
        })
        .collect())
}

fn conjugate_duality(ctx: &Ctx) -> Result<Vec<Record>> {
    let forms = ctx.forms()?;
    let games = ctx.solver.games();
    Ok(ctx.per_form_tb(&forms, |g, tb| {
        let c = games.conjugate(g);
        let bad: Vec<String> = BudgetState::all(tb)
            .filter(|s| {
                ctx.solver.partial_outcome(c, *s)
                    != ctx.solver.partial_outcome(g, s.mirror()).flip()
            })
            .map(|s| s.to_string())
            .collect();
        Some(ctx.record(
            ctx.lit(g),
            Some(tb),
            Verdict::of(bad.is_empty()),
            json!({"violations": bad}),
        ))
    }))
}

fn dominates(s: &BudgetState, p: Player) -> bool {
    let mine = s.budget(p);
    let theirs = s.tb - mine;
    let holds = s.left_has_marker() == (p == Player::Left);
    mine > theirs || (mine == theirs && holds)
}

fn last_move_wins(ctx: &Ctx) -> Result<Vec<Record>> {
    let forms = ctx.forms()?;
    let games = ctx.solver.games();
    Ok(ctx.per_form_tb(&forms, |g, tb| {
        let mut applicable = 0;
        let mut bad = Vec::new();
        for s in BudgetState::all(tb) {
            for p in [Player::Left, Player::Right] {
                let finisher = games
                    .options(g, p)
                    .iter()
                    .any(|&o| games.options(o, p.opponent()).is_empty());
                if dominates(&s, p) && finisher {
                    applicable += 1;
                    if ctx.solver.partial_outcome(g, s) != PartialOutcome::win_for(p) {
                        bad.push(format!("{s} {p}"));
                    }
                }
            }
        }
        (applicable > 0).then(|| {
            ctx.record(
                ctx.lit(g),
                Some(tb),
                Verdict::of(bad.is_empty()),
                json!({"applicable": applicable, "violations": bad}),
            )
        })
    }))
}

fn additive_property(ctx: &Ctx) -> Result<Vec<Record>> {
    let games = ctx.solver.games();
    let forms = ctx.forms()?;
    let mut left_pool: Vec<GameId> = Vec::new();
    for n in -2..=2 {
        left_pool.push(integer_form(games, n)?);
    }
    for (n, k) in [(1, 1), (1, 2), (3, 2), (-1, 1)] {
        left_pool.push(dyadic_form(games, DyadicValue::new(n, k))?);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.config.seed);
    left_pool.extend(forms.choose_multiple(&mut rng, 40).copied());
    let right_pool: Vec<GameId> = forms.choose_multiple(&mut rng, 40).copied().collect();
    let pairs: Vec<(GameId, GameId, u32)> = left_pool
        .iter()
        .flat_map(|&g| right_pool.iter().map(move |&h| (g, h)))
        .flat_map(|(g, h)| ctx.config.tb_range.iter().map(move |&tb| (g, h, tb)))
        .collect();
    let solver = ctx.solver;
    Ok(pairs
        .par_iter()
        .filter_map(|&(g, h, tb)| {
            let gh = games.sum(g, h);
            let wins =
                |x: GameId, s: BudgetState| solver.partial_outcome(x, s) == PartialOutcome::L;
            let zero_win =
                |s: BudgetState| wins(g, s) && solver.zero_bid_optimal(g, s, Player::Left);
            let mut applicable = 0;
            let mut bad = Vec::new();
            for p in 0..=tb {
                for q in 0..=(tb - p) {
                    let cases = [
                        (
                            "i",
                            zero_win(BudgetState::plain(tb, p))
                                && wins(h, BudgetState::plain(tb, q)),
                            BudgetState::plain(tb, p + q),
                        ),
                        (
                            "ii",
                            zero_win(BudgetState::plain(tb, p))
                                && wins(h, BudgetState::hatted(tb, q)),
                            BudgetState::hatted(tb, p + q),
                        ),
                        (
                            "iii",
                            zero_win(BudgetState::hatted(tb, p))
                                && wins(h, BudgetState::plain(tb, q)),
                            BudgetState::hatted(tb, p + q),
                        ),
                    ];
                    for (case, hyp, target) in cases {
                        if hyp {
                            applicable += 1;
                            if !wins(gh, target) {
                                bad.push(format!("case {case} p={p} q={q}"));
                            }
                        }
                    }
                }
            }
            (applicable > 0).then(|| {
                ctx.record(
                    format!("G={} H={}", ctx.lit(g), ctx.lit(h)),
                    Some(tb),
                    Verdict::of(bad.is_empty()),
                    json!({"applicable": applicable, "violations": bad}),
                )
            })
        })
        .collect())
}

fn number_comparison(ctx: &Ctx) -> Result<Vec<Record>> {
    let forms = ctx.forms()?;
    Ok(ctx.per_form_tb(&forms, |g, tb| {
        let cert = is_number(ctx.solver, g, tb);
        if !cert.is_number {
            return None;
        }
        let fast = ctx.solver.partial_outcome(g, BudgetState::plain(tb, 0)) == PartialOutcome::L;
        let general = classify(ctx.solver, g, tb).status(Relation::Ge);
        let ok = (fast && general == Status::Proven) || (!fast && general == Status::Refuted);
        Some(ctx.record(
            ctx.named(g),
            Some(tb),
            Verdict::of(ok),
            json!({"o(G,0)=L": fast, "GE0": general}),
        ))
    }))
}

/// `a` compared with `b` through `conj(b)`; the verdict for `want`.
fn certified(ctx: &Ctx, a: GameId, b: GameId, tb: u32, want: Relation) -> (Verdict, Value) {
    let games = ctx.solver.games();
    match compare(ctx.solver, a, b, tb, Some(games.conjugate(b)), &[]) {
        Ok(c) => {
            let v = c.verdict(want);
            (Verdict::of_status(v.status), json!(v))
        }
        Err(e) => (Verdict::Fail, json!({"error": e.to_string()})),
    }
}

fn eq0(ctx: &Ctx, g: GameId, tb: u32) -> (Verdict, Value) {
    let c = classify(ctx.solver, g, tb);
    let v = c.verdict(Relation::Eq);
    (Verdict::of_status(v.status), json!(v))
}

fn integers(ctx: &Ctx) -> Result<Vec<Record>> {
    let games = ctx.solver.games();
    let n_max = ctx.config.n_max;
    let mut jobs: Vec<Job> = Vec::new();
    for &tb in &ctx.config.tb_range {
        for n in -n_max..=n_max {
            let gn = integer_form(games, n)?;
            let inv = games.sum(gn, games.conjugate(gn));
            jobs.push((
                format!("{n} + conj({n}) = 0"),
                tb,
                Box::new(move |tb| eq0(ctx, inv, tb)),
            ));
            let braces = games.intern([integer_form(games, n - 1)?], [integer_form(games, n + 1)?]);
            jobs.push((
                format!("{{{}|{}}} = {n}", n - 1, n + 1),
                tb,
                Box::new(move |tb| certified(ctx, braces, gn, tb, Relation::Eq)),
            ));
            for m in -n_max..=n_max {
                let gm = integer_form(games, m)?;
                let total = integer_form(games, n + m)?;
                let s = games.sum(gn, gm);
                jobs.push((
                    format!("{n} + {m} = {}", n + m),
                    tb,
                    Box::new(move |tb| certified(ctx, s, total, tb, Relation::Eq)),
                ));
                let want = match n.cmp(&m) {
                    std::cmp::Ordering::Greater => Relation::Gt,
                    std::cmp::Ordering::Less => Relation::Lt,
                    std::cmp::Ordering::Equal => continue,
                };
                jobs.push((
                    format!("{n} {} {m}", want.symbol()),
                    tb,
                    Box::new(move |tb| certified(ctx, gn, gm, tb, want)),
                ));
            }
        }
    }
    Ok(run_jobs(ctx, jobs))
}

type Job<'a> = (
    String,
    u32,
    Box<dyn Fn(u32) -> (Verdict, Value) + Send + Sync + 'a>,
);

fn run_jobs(ctx: &Ctx, jobs: Vec<Job<'_>>) -> Vec<Record> {
    jobs.par_iter()
        .map(|(name, tb, f)| {
            let (v, ev) = f(*tb);
            ctx.record(name.clone(), Some(*tb), v, ev)
        })
        .collect()
}

fn dyadics(ctx: &Ctx) -> Result<Vec<Record>> {
    let games = ctx.solver.games();
    let mut jobs: Vec<Job> = Vec::new();
    for &tb in &ctx.config.tb_range {
        for k in 1..=ctx.config.k_max {
            let u = dyadic_form(games, DyadicValue::unit(k))?;
            jobs.push((
                format!("1/{} is a number", 1u64 << k),
                tb,
                Box::new(move |tb| {
                    let c = is_number(ctx.solver, u, tb);
                    (Verdict::of(c.is_number), json!(c))
                }),
            ));
            let half = games.sum(u, u);
            let up = dyadic_form(games, DyadicValue::unit(k - 1))?;
            jobs.push((
                format!("1/{0} + 1/{0} = 1/{1}", 1u64 << k, 1u64 << (k - 1)),
                tb,
                Box::new(move |tb| certified(ctx, half, up, tb, Relation::Eq)),
            ));
            for m in (1..(1i64 << k)).step_by(2) {
                let v = DyadicValue::new(m, k);
                let d = dyadic_form(games, v)?;
                let inv = games.sum(d, games.conjugate(d));
                jobs.push((
                    format!("{v} + conj({v}) = 0"),
                    tb,
                    Box::new(move |tb| eq0(ctx, inv, tb)),
                ));
                let lo = DyadicValue::new(m - 1, k);
                let hi = DyadicValue::new(m + 1, k);
                let braces = games.intern([dyadic_form(games, lo)?], [dyadic_form(games, hi)?]);
                jobs.push((
                    format!("{{{lo}|{hi}}} = {v}"),
                    tb,
                    Box::new(move |tb| certified(ctx, braces, d, tb, Relation::Eq)),
                ));
            }
        }
    }
    Ok(run_jobs(ctx, jobs))
}

fn infinitesimals(ctx: &Ctx) -> Result<Vec<Record>> {
    let games = ctx.solver.games();
    let k_max = ctx.config.k_max;
    let mut jobs: Vec<Job> = Vec::new();
    for &tb in &ctx.config.tb_range {
        for name in ["*", "^", "v"] {
            let g = parse(games, name)?;
            jobs.push((
                format!("-1/2^k < {name} < 1/2^k, k <= {k_max}"),
                tb,
                Box::new(
                    move |tb| match is_infinitesimal_bounded(ctx.solver, g, tb, k_max) {
                        Ok(v) => (Verdict::of(v.is_proven()), json!(v)),
                        Err(e) => (Verdict::Fail, json!({"error": e.to_string()})),
                    },
                ),
            ));
        }
    }
    let mut records = run_jobs(ctx, jobs);
    let upv = parse(games, "^+v")?;
    let o = ctx.solver.partial_outcome(upv, BudgetState::hatted(1, 1));
    records.push(ctx.record(
        "o(^+v, 1^) = L",
        Some(1),
        Verdict::of(o == PartialOutcome::L),
        json!({"outcome": o}),
    ));
    Ok(records)
}

fn sandwiches(ctx: &Ctx) -> Result<Vec<Record>> {
    let games = ctx.solver.games();
    let mut jobs: Vec<Job> = Vec::new();
    for &tb in &ctx.config.tb_range {
        for k in 1..=ctx.config.k_max {
            let families = [
                (format!("{{-{k}|{k}}}"), integer_form(games, k as i64)?),
                (
                    format!("{{-1/{0}|1/{0}}}", 1u64 << k),
                    dyadic_form(games, DyadicValue::unit(k))?,
                ),
            ];
            for (name, pos) in families {
                let neg = games.conjugate(pos);
                let g = games.intern([neg], [pos]);
                jobs.push((
                    format!("{name} = 0"),
                    tb,
                    Box::new(move |tb| {
                        let sandwich = zero_sandwich(ctx.solver, neg, pos, tb);
                        let c = classify(ctx.solver, g, tb);
                        let v = c.verdict(Relation::Eq);
                        let verdict = if sandwich {
                            Verdict::of_status(v.status)
                        } else {
                            Verdict::Fail
                        };
                        (verdict, json!({"zero_sandwich": sandwich, "EQ0": v}))
                    }),
                ));
            }
        }
        if tb > 0 {
            let star = games.star();
            let g = games.intern([star], [star]);
            jobs.push((
                "{*|*} has no certificate".to_string(),
                tb,
                Box::new(move |tb| {
                    let sandwich = zero_sandwich(ctx.solver, star, star, tb);
                    let w =
                        find_distinguishing(ctx.solver, g, GameId::ZERO, &[tb], &[GameId::ZERO]);
                    (
                        Verdict::of(!sandwich && w.is_some()),
                        json!({"zero_sandwich": sandwich, "witness": w}),
                    )
                }),
            ));
        }
    }
    Ok(run_jobs(ctx, jobs))
}

fn no_group_structure(ctx: &Ctx) -> Result<Vec<Record>> {
    let games = ctx.solver.games();
    let star = games.star();
    let mut spec = ctx.config.spec();
    spec.max_birthday = spec.max_birthday.min(2);
    spec.sample = None;
    let mut out = Vec::new();
    for &tb in ctx.config.tb_range.iter().filter(|&&tb| tb > 0) {
        spec.tb_range = vec![tb];
        let r = inverse_search(ctx.solver, star, tb, &spec)?;
        let ok = r.certified.is_empty() && r.surviving.is_empty();
        out.push(ctx.record("no inverse of *", Some(tb), Verdict::of(ok), json!(r)));
    }
    Ok(out)
}

fn nozero_observation(ctx: &Ctx) -> Result<Vec<Record>> {
    let games = ctx.solver.games();
    let mut out = Vec::new();
    for (text, tb) in [("{0|{0|^}}", 4), ("{0|^}", 2)] {
        let g = parse(games, text)?;
        let s = BudgetState::plain(tb, 0);
        let o = ctx.solver.partial_outcome(g, s);
        let zero = ctx.solver.zero_bid_optimal(g, s, Player::Left);
        out.push(ctx.record(
            text,
            Some(tb),
            Verdict::of(o == PartialOutcome::L && !zero),
            json!({"o(G,0)": o, "zero_bid_optimal": zero}),
        ));
    }
    Ok(out)
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
    fn unknown_suite() {
        let s = solver();
        assert!(matches!(
            run_suite(&s, "nope", &SuiteConfig::default()),
            Err(Error::UnknownSuite(_))
        ));
    }

    #[test]
    fn small_suites_pass() {
        let s = solver();
        let config = SuiteConfig {
            tb_range: vec![0, 1, 2],
            max_birthday: 2,
            n_max: 2,
            k_max: 2,
            ..Default::default()
        };
        for name in SUITES {
            if *name == "no-group-structure" {
                continue;
            }
            let r = run_suite(&s, name, &config).unwrap();
            let bad: Vec<_> = r.failures().take(3).collect();
            assert!(r.summary.pass, "{name}: {bad:?}");
            assert!(r.summary.checked > 0, "{name}");
        }
    }

    #[test]
    fn jsonl_ends_with_summary() {
        let s = solver();
        let r = run_suite(&s, "nozero-observation", &SuiteConfig::default()).unwrap();
        let text = r.to_jsonl();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        let last: Value = serde_json::from_str(lines[2]).unwrap();
        assert_eq!(last["kind"], "summary");
        assert_eq!(last["pass"], true);
        let first: Value = serde_json::from_str(lines[0]).unwrap();
        for key in ["suite", "instance", "tb", "result", "evidence"] {
            assert!(first.get(key).is_some(), "{key}");
        }
    }
}
