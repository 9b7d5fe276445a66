use std::fs::File;
use std::io::{self, Write};
use std::net::{IpAddr, Ipv4Addr, SocketAddr};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use bidgame::algebra::{
    classify, compare, compare_auto, default_witness_pool, zero_sandwich, Comparison,
};
use bidgame::explorer::{
    enumerate_forms, inverse_search, run_conjecture, run_suite, witness_search, ConjectureResult,
    EnumerationSpec, SuiteConfig,
};
use bidgame::service::{analysis, serve};
use bidgame::{parse, print, BudgetState, Games, Player, Solver, Style};

#[derive(Parser)]
#[command(
    name = "bidgame",
    version,
    about = "Analyze discrete bidding combinatorial games"
)]
struct Cli {
    /// Emit JSON instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the main output to this file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Outcome vector, ordered tb^..0^ then tb..0, with MMW checks.
    Outcome {
        #[arg(allow_hyphen_values = true)]
        game: String,
        #[arg(long, value_parser = parse_tb, default_value = "1")]
        tb: TbRange,
    },
    /// Classify a game against 0 with the constructive comparison tests.
    Classify {
        #[arg(allow_hyphen_values = true)]
        game: String,
        #[arg(long, value_parser = parse_tb, default_value = "1")]
        tb: TbRange,
    },
    /// Compare two games.
    Compare {
        #[arg(allow_hyphen_values = true)]
        g: String,
        #[arg(allow_hyphen_values = true)]
        h: String,
        #[arg(long, value_parser = parse_tb, default_value = "1")]
        tb: TbRange,
        /// A certified inverse of H; without one, conj(H) is tried.
        #[arg(long, allow_hyphen_values = true)]
        inverse: Option<String>,
        /// Do not try conj(H); only witness refutations.
        #[arg(long, conflicts_with = "inverse")]
        no_inverse: bool,
    },
    /// Disjunctive sum of the given games.
    Sum {
        #[arg(required = true, allow_hyphen_values = true)]
        games: Vec<String>,
    },
    /// Bid matrix of one state.
    Matrix {
        #[arg(allow_hyphen_values = true)]
        game: String,
        #[arg(long, default_value_t = 1)]
        tb: u32,
        /// Budget state such as `1^` or `0`.
        #[arg(long)]
        state: String,
    },
    /// Prescribed bid and move for one player.
    Strategy {
        #[arg(allow_hyphen_values = true)]
        game: String,
        #[arg(long, default_value_t = 1)]
        tb: u32,
        #[arg(long)]
        state: String,
        #[arg(long)]
        player: Player,
    },
    /// Run a verification suite and write its JSON-lines report.
    Verify {
        suite: String,
        #[command(flatten)]
        bounds: Bounds,
        /// Integer bound for the integer family.
        #[arg(long, default_value_t = 3)]
        n: i64,
        /// Exponent bound for the dyadic, infinitesimal and sandwich families.
        #[arg(long, default_value_t = 3)]
        k: u32,
    },
    /// Run a bounded conjecture experiment.
    Conjecture {
        name: String,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// List enumerated forms.
    Enumerate {
        #[command(flatten)]
        bounds: Bounds,
        /// Print only the count.
        #[arg(long)]
        count: bool,
    },
    /// Search for X distinguishing G from H.
    Witness {
        #[arg(allow_hyphen_values = true)]
        g: String,
        #[arg(allow_hyphen_values = true)]
        h: String,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Search enumerated forms for an inverse of G.
    Inverse {
        #[arg(allow_hyphen_values = true)]
        game: String,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Run the HTTP JSON service.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        /// Bind to all interfaces instead of loopback.
        #[arg(long)]
        public: bool,
    },
}

#[derive(Args, Clone)]
struct Bounds {
    #[arg(long, value_parser = parse_tb, default_value = "0..2")]
    tb: TbRange,
    #[arg(long, default_value_t = 2)]
    birthday: u32,
    /// Forms sampled at birthday 3 and above.
    #[arg(long, default_value_t = 1000)]
    sample: usize,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
}

impl Bounds {
    fn spec(&self) -> EnumerationSpec {
        let mut spec = EnumerationSpec::new(self.birthday, self.tb.0.iter().copied());
        spec.seed = self.seed;
        if self.birthday >= 3 {
            spec.sample = Some(self.sample);
        }
        spec
    }
}

/// Total budgets given as `n` or an inclusive range `a..b`.
#[derive(Clone, Debug)]
struct TbRange(Vec<u32>);

fn parse_tb(s: &str) -> Result<TbRange, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<u32>()
            .map_err(|e| format!("bad total budget '{t}': {e}"))
    };
    match s.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            let (a, b) = (num(a)?, num(b)?);
            if a > b {
                return Err(format!("empty range {s}"));
            }
            Ok(TbRange((a..=b).collect()))
        }
        None => Ok(TbRange(vec![num(s)?])),
    }
}

struct Output {
    sink: Box<dyn Write>,
}

impl Output {
    fn line(&mut self, s: impl AsRef<str>) -> io::Result<()> {
        writeln!(self.sink, "{}", s.as_ref())
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e)
            if e.downcast_ref::<io::Error>()
                .is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe) =>
        {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

type AnyResult<T> = Result<T, Box<dyn std::error::Error>>;

fn run(cli: Cli) -> AnyResult<ExitCode> {
    let sink: Box<dyn Write> = match &cli.out {
        Some(path) => Box::new(io::BufWriter::new(File::create(path)?)),
        None => Box::new(io::stdout().lock()),
    };
    let mut out = Output { sink };
    let solver = Solver::new(Arc::new(Games::new()));
    let json = cli.json;
    let code = match cli.command {
        Command::Outcome { game, tb } => {
            for t in tb.0 {
                let a = analysis(&solver, &game, t)?;
                if json {
                    out.line(serde_json::to_string(&a)?)?;
                } else {
                    out.line(a.outcomes.to_string())?;
                    let mono = a.mmw["monotonicity_violations"]
                        .as_array()
                        .map_or(0, Vec::len);
                    let worth = a.mmw["marker_worth_violations"]
                        .as_array()
                        .map_or(0, Vec::len);
                    let states: Vec<String> = a
                        .states
                        .iter()
                        .map(|s| format!("{}={}", s.state, s.outcome))
                        .collect();
                    out.line(format!("  tb={t} {}", states.join(" ")))?;
                    out.line(format!(
                        "  monotonicity: {}  marker worth: {}",
                        if mono == 0 { "ok" } else { "VIOLATED" },
                        if worth == 0 { "ok" } else { "VIOLATED" }
                    ))?;
                }
            }
            ExitCode::SUCCESS
        }
        Command::Classify { game, tb } => {
            let g = parse(solver.games(), &game)?;
            for t in tb.0 {
                let c = classify(&solver, g, t);
                let games = solver.games();
                let sandwich = match (games.left(g), games.right(g)) {
                    (&[l], &[r]) => Some(zero_sandwich(&solver, l, r, t)),
                    _ => None,
                };
                if json {
                    let mut v = serde_json::to_value(&c)?;
                    v["game"] = json!(print(games, g, Style::Named));
                    v["zero_sandwich"] = json!(sandwich);
                    out.line(serde_json::to_string(&v)?)?;
                } else {
                    out.line(format!(
                        "{} at tb={t}: outcomes {}  o(G,0)={} o(G,{t}^)={}",
                        print(games, g, Style::Named),
                        c.outcomes,
                        c.at_zero,
                        c.at_top
                    ))?;
                    for v in c.verdicts.iter() {
                        out.line(format!("  {v}"))?;
                    }
                    if let Some(s) = sandwich {
                        out.line(format!(
                            "  zero sandwich: {}",
                            if s { "certified" } else { "not applicable" }
                        ))?;
                    }
                    for conflict in &c.conflicts {
                        out.line(format!("  CONFLICT: {conflict}"))?;
                    }
                }
            }
            ExitCode::SUCCESS
        }
        Command::Compare {
            g,
            h,
            tb,
            inverse,
            no_inverse,
        } => {
            let games = solver.games();
            let (gi, hi) = (parse(games, &g)?, parse(games, &h)?);
            let inv = inverse.map(|t| parse(games, &t)).transpose()?;
            let pool = default_witness_pool(games);
            for t in tb.0 {
                let c: Comparison = match (inv, no_inverse) {
                    (Some(i), _) => compare(&solver, gi, hi, t, Some(i), &pool)?,
                    (None, true) => compare(&solver, gi, hi, t, None, &pool)?,
                    (None, false) => compare_auto(&solver, gi, hi, t, &pool),
                };
                let relation = c.decided().map(|r| r.symbol()).unwrap_or("?");
                if json {
                    out.line(serde_json::to_string(&json!({
                        "g": print(games, gi, Style::Named),
                        "h": print(games, hi, Style::Named),
                        "tb": t,
                        "inverse": c.inverse.map(|i| print(games, i, Style::Named)),
                        "relation": c.decided(),
                        "verdicts": c.verdicts,
                    }))?)?;
                } else {
                    out.line(format!(
                        "{} {relation} {} at tb={t}{}",
                        print(games, gi, Style::Named),
                        print(games, hi, Style::Named),
                        c.inverse
                            .map(|i| format!(" (via inverse {})", print(games, i, Style::Named)))
                            .unwrap_or_else(|| " (no certified inverse)".into())
                    ))?;
                    for v in c.verdicts.iter() {
                        let ev = v
                            .evidence
                            .as_ref()
                            .map(|e| format!(" ({e})"))
                            .unwrap_or_default();
                        out.line(format!("  G {} H: {}{ev}", v.relation.symbol(), v.status))?;
                    }
                }
            }
            ExitCode::SUCCESS
        }
        Command::Sum { games: texts } => {
            let games = solver.games();
            let ids = texts
                .iter()
                .map(|t| parse(games, t))
                .collect::<Result<Vec<_>, _>>()?;
            let s = games.sum_all(ids);
            if json {
                out.line(serde_json::to_string(&json!({
                    "named": print(games, s, Style::Named),
                    "literal": print(games, s, Style::Literal),
                    "birthday": games.birthday(s),
                }))?)?;
            } else {
                out.line(print(games, s, Style::Named))?;
                out.line(format!("  literal: {}", print(games, s, Style::Literal)))?;
                out.line(format!("  birthday: {}", games.birthday(s)))?;
            }
            ExitCode::SUCCESS
        }
        Command::Matrix { game, tb, state } => {
            let g = parse(solver.games(), &game)?;
            let s = BudgetState::parse(tb, &state)?;
            let m = solver.bid_matrix(g, s);
            if json {
                out.line(serde_json::to_string(&json!({
                    "state": s.to_string(),
                    "left_bids": m.left_bids.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
                    "right_bids": m.right_bids.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
                    "entries": m.entries,
                    "all_left_rows": m.all_left_rows(),
                    "all_right_columns": m.all_right_columns(),
                }))?)?;
            } else {
                let header: Vec<String> = m.right_bids.iter().map(|b| format!("{b:>9}")).collect();
                out.line(format!("{:>9} {}", "L \\ R", header.join("")))?;
                for (b, row) in m.left_bids.iter().zip(&m.entries) {
                    let cells: Vec<String> = row.iter().map(|o| format!("{o:>9}")).collect();
                    out.line(format!("{:>9} {}", b.to_string(), cells.join("")))?;
                }
                out.line(format!("value: {}", solver.partial_outcome(g, s)))?;
            }
            ExitCode::SUCCESS
        }
        Command::Strategy {
            game,
            tb,
            state,
            player,
        } => {
            let games = solver.games();
            let g = parse(games, &game)?;
            let s = BudgetState::parse(tb, &state)?;
            let e = solver.best_response(g, s, player);
            let mv = e.winning_move.map(|m| print(games, m, Style::Named));
            if json {
                let mut v = serde_json::to_value(&e)?;
                v["position"] = json!(print(games, g, Style::Named));
                v["winning_move"] = json!(mv);
                out.line(serde_json::to_string(&v)?)?;
            } else {
                out.line(format!(
                    "{player} at {s}: value {}  bid {}  move {}  0-bid optimal: {}",
                    e.value,
                    e.best_bid,
                    mv.unwrap_or_else(|| "-".into()),
                    e.zero_bid_optimal
                ))?;
            }
            ExitCode::SUCCESS
        }
        Command::Verify {
            suite,
            bounds,
            n,
            k,
        } => {
            let config = SuiteConfig {
                tb_range: bounds.tb.0.clone(),
                max_birthday: bounds.birthday,
                sample: bounds.sample,
                seed: bounds.seed,
                n_max: n,
                k_max: k,
            };
            let report = run_suite(&solver, &suite, &config)?;
            out.sink.write_all(report.to_jsonl().as_bytes())?;
            let s = &report.summary;
            eprintln!(
                "{}: {} ({} checked, {} passed, {} failed, {} unknown, {} ms)",
                s.suite,
                if s.pass { "pass" } else { "FAIL" },
                s.checked,
                s.passed,
                s.failed,
                s.unknown,
                s.elapsed_ms
            );
            if s.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Command::Conjecture { name, bounds } => {
            let r = run_conjecture(&solver, &name, &bounds.spec())?;
            out.line(r.to_json_line())?;
            eprintln!("{}: {:?} ({})", r.conjecture, r.result, r.note);
            if r.result == ConjectureResult::CounterexampleFound {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Command::Enumerate { bounds, count } => {
            let games = solver.games();
            let forms = enumerate_forms(games, &bounds.spec())?;
            if count {
                out.line(forms.len().to_string())?;
            } else {
                for f in forms {
                    if json {
                        out.line(serde_json::to_string(&json!({
                            "named": print(games, f, Style::Named),
                            "literal": print(games, f, Style::Literal),
                            "birthday": games.birthday(f),
                        }))?)?;
                    } else {
                        out.line(print(games, f, Style::Literal))?;
                    }
                }
            }
            ExitCode::SUCCESS
        }
        Command::Witness { g, h, bounds } => {
            let games = solver.games();
            let r = witness_search(
                &solver,
                parse(games, &g)?,
                parse(games, &h)?,
                &bounds.spec(),
            )?;
            out.line(serde_json::to_string(&r)?)?;
            ExitCode::SUCCESS
        }
        Command::Inverse { game, bounds } => {
            let g = parse(solver.games(), &game)?;
            for &t in &bounds.tb.0 {
                let mut spec = bounds.spec();
                spec.tb_range = vec![t];
                let r = inverse_search(&solver, g, t, &spec)?;
                if json {
                    out.line(serde_json::to_string(&r)?)?;
                } else {
                    out.line(format!(
                        "tb={t}: {} candidates, {} certified {:?}, {} refuted, {} surviving {:?}",
                        r.candidates,
                        r.certified.len(),
                        r.certified,
                        r.refuted,
                        r.surviving.len(),
                        r.surviving
                    ))?;
                }
            }
            ExitCode::SUCCESS
        }
        Command::Serve { port, public } => {
            let ip = if public {
                IpAddr::V4(Ipv4Addr::UNSPECIFIED)
            } else {
                IpAddr::V4(Ipv4Addr::LOCALHOST)
            };
            let rt = tokio::runtime::Runtime::new()?;
            rt.block_on(serve(SocketAddr::new(ip, port), Arc::new(solver)))?;
            ExitCode::SUCCESS
        }
    };
    out.sink.flush()?;
    Ok(code)
}
