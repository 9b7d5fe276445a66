//! JSON-over-HTTP API for interactive play and analysis.

use std::collections::HashMap;
use std::net::SocketAddr;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use parking_lot::Mutex;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{classify, Classification};
use crate::auction::{Bid, BudgetState, Player};
use crate::error::Error;
use crate::notation::{parse, print, Style};
use crate::service::session::{HistoryEntry, MoveChoice, Phase, Session, SessionError, TurnReport};
use crate::solver::{OutcomeVector, PartialOutcome, Solver};

pub const API_VERSION: u32 = 1;

/// Largest total budget the service accepts.
pub const MAX_TB: u32 = 32;

pub struct AppState {
    solver: Arc<Solver>,
    sessions: Mutex<HashMap<u64, Arc<Mutex<Session>>>>,
    next_id: AtomicU64,
}

impl AppState {
    pub fn new(solver: Arc<Solver>) -> Arc<Self> {
        Arc::new(AppState {
            solver,
            sessions: Mutex::new(HashMap::new()),
            next_id: AtomicU64::new(1),
        })
    }

    fn session(&self, id: u64) -> Result<Arc<Mutex<Session>>, ApiError> {
        self.sessions
            .lock()
            .get(&id)
            .cloned()
            .ok_or(ApiError::UnknownSession(id))
    }
}

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/session", post(create_session))
        .route("/session/{id}", get(get_session))
        .route("/session/{id}/bid", post(post_bid))
        .route("/session/{id}/move", post(post_move))
        .route("/analyze", get(analyze))
        .with_state(state)
}

/// Serves until Ctrl-C.
pub async fn serve(addr: SocketAddr, solver: Arc<Solver>) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    log::info!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(AppState::new(solver)))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}

#[derive(Debug)]
pub enum ApiError {
    BadRequest(String),
    UnknownSession(u64),
    IllegalBid { message: String, legal: Vec<Bid> },
    IllegalMove(String),
    Conflict(String),
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        ApiError::BadRequest(e.to_string())
    }
}

impl From<JsonRejection> for ApiError {
    fn from(e: JsonRejection) -> Self {
        ApiError::BadRequest(e.body_text())
    }
}

impl From<SessionError> for ApiError {
    fn from(e: SessionError) -> Self {
        match e {
            SessionError::IllegalBid { ref legal, .. } => ApiError::IllegalBid {
                message: e.to_string(),
                legal: legal.clone(),
            },
            SessionError::IllegalMove(_) => ApiError::IllegalMove(e.to_string()),
            _ => ApiError::Conflict(e.to_string()),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let (status, kind, message, extra) = match self {
            ApiError::BadRequest(m) => (StatusCode::BAD_REQUEST, "bad_request", m, None),
            ApiError::UnknownSession(id) => (
                StatusCode::NOT_FOUND,
                "unknown_session",
                format!("no session {id}"),
                None,
            ),
            ApiError::IllegalBid { message, legal } => (
                StatusCode::UNPROCESSABLE_ENTITY,
                "illegal_bid",
                message,
                Some(json!(legal)),
            ),
            ApiError::IllegalMove(m) => (StatusCode::UNPROCESSABLE_ENTITY, "illegal_move", m, None),
            ApiError::Conflict(m) => (StatusCode::CONFLICT, "conflict", m, None),
        };
        let mut error = json!({"kind": kind, "message": message});
        if let Some(legal) = extra {
            error["legal_bids"] = legal;
        }
        (
            status,
            Json(json!({"version": API_VERSION, "error": error})),
        )
            .into_response()
    }
}

#[derive(Debug, Deserialize)]
pub struct CreateSession {
    pub game: String,
    pub tb: u32,
    pub human_side: Player,
    /// Budget state such as `"1^"` (Left holds the marker) or `"0"`; defaults to
    /// half the budget (rounded down) for Left, with Left holding the marker.
    pub initial_budget: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct SessionView {
    pub version: u32,
    pub id: u64,
    pub game: String,
    pub game_literal: String,
    pub position: String,
    pub position_literal: String,
    pub tb: u32,
    pub state: String,
    pub budget: BudgetState,
    pub right_budget: u32,
    pub human_side: Player,
    pub engine_side: Player,
    #[serde(flatten)]
    pub phase: Phase,
    pub legal_bids: Vec<Bid>,
    pub move_choices: Vec<MoveChoice>,
    pub history: Vec<HistoryEntry>,
}

fn view(solver: &Solver, s: &Session) -> SessionView {
    let games = solver.games();
    SessionView {
        version: API_VERSION,
        id: s.id,
        game: print(games, s.game, Style::Named),
        game_literal: print(games, s.game, Style::Literal),
        position: print(games, s.position, Style::Named),
        position_literal: print(games, s.position, Style::Literal),
        tb: s.state.tb,
        state: s.state.to_string(),
        budget: s.state,
        right_budget: s.state.right_budget(),
        human_side: s.human_side,
        engine_side: s.engine_side(),
        phase: s.phase,
        legal_bids: if s.phase == Phase::Bidding {
            s.legal_bids()
        } else {
            Vec::new()
        },
        move_choices: if s.phase == Phase::AwaitingMove {
            s.move_choices(solver)
        } else {
            Vec::new()
        },
        history: s.history.clone(),
    }
}

fn check_tb(tb: u32) -> Result<(), ApiError> {
    if tb > MAX_TB {
        return Err(ApiError::BadRequest(format!(
            "tb {tb} exceeds the service limit {MAX_TB}"
        )));
    }
    Ok(())
}

async fn create_session(
    State(app): State<Arc<AppState>>,
    body: Result<Json<CreateSession>, JsonRejection>,
) -> Result<(StatusCode, Json<SessionView>), ApiError> {
    let Json(req) = body?;
    check_tb(req.tb)?;
    let games = app.solver.games();
    let game = parse(games, &req.game)?;
    let state = match &req.initial_budget {
        Some(text) => BudgetState::parse(req.tb, text)?,
        None => BudgetState::hatted(req.tb, req.tb / 2),
    };
    let id = app.next_id.fetch_add(1, Ordering::Relaxed);
    let session = Session::new(id, game, state, req.human_side);
    let v = view(&app.solver, &session);
    app.sessions
        .lock()
        .insert(id, Arc::new(Mutex::new(session)));
    Ok((StatusCode::CREATED, Json(v)))
}

async fn get_session(
    State(app): State<Arc<AppState>>,
    Path(id): Path<u64>,
) -> Result<Json<SessionView>, ApiError> {
    let s = app.session(id)?;
    let s = s.lock();
    Ok(Json(view(&app.solver, &s)))
}

#[derive(Debug, Deserialize)]
pub struct BidRequest {
    pub amount: u32,
    #[serde(default)]
    pub include_marker: bool,
}

#[derive(Debug, Serialize)]
pub struct TurnResponse {
    pub version: u32,
    #[serde(flatten)]
    pub turn: TurnReport,
    pub session: SessionView,
}

async fn post_bid(
    State(app): State<Arc<AppState>>,
    Path(id): Path<u64>,
    body: Result<Json<BidRequest>, JsonRejection>,
) -> Result<Json<TurnResponse>, ApiError> {
    let Json(req) = body?;
    let s = app.session(id)?;
    let mut s = s.lock();
    let turn = s.bid(&app.solver, Bid::new(req.amount, req.include_marker))?;
    Ok(Json(TurnResponse {
        version: API_VERSION,
        turn,
        session: view(&app.solver, &s),
    }))
}

/// Either an option index into `move_choices` or the option's notation.
#[derive(Debug, Deserialize)]
pub struct MoveRequest {
    pub index: Option<usize>,
    pub option: Option<String>,
}

async fn post_move(
    State(app): State<Arc<AppState>>,
    Path(id): Path<u64>,
    body: Result<Json<MoveRequest>, JsonRejection>,
) -> Result<Json<TurnResponse>, ApiError> {
    let Json(req) = body?;
    let s = app.session(id)?;
    let mut s = s.lock();
    let index = match (req.index, &req.option) {
        (Some(i), _) => i,
        (None, Some(text)) => {
            let target = parse(app.solver.games(), text)?;
            s.choice_index(&app.solver, target)
                .ok_or_else(|| ApiError::IllegalMove(format!("{text} is not an option here")))?
        }
        (None, None) => return Err(ApiError::BadRequest("expected `index` or `option`".into())),
    };
    let turn = s.choose(&app.solver, index)?;
    Ok(Json(TurnResponse {
        version: API_VERSION,
        turn,
        session: view(&app.solver, &s),
    }))
}

#[derive(Debug, Deserialize)]
pub struct AnalyzeQuery {
    pub game: String,
    pub tb: u32,
}

#[derive(Debug, Serialize)]
pub struct Analysis {
    pub version: u32,
    pub game: String,
    pub game_literal: String,
    pub tb: u32,
    pub outcomes: OutcomeVector,
    pub states: Vec<StateOutcome>,
    pub mmw: Value,
    pub classification: Classification,
}

#[derive(Debug, Serialize)]
pub struct StateOutcome {
    pub state: String,
    pub outcome: PartialOutcome,
}

/// The analysis payload shared by the HTTP endpoint and `outcome --json`.
pub fn analysis(solver: &Solver, text: &str, tb: u32) -> Result<Analysis, Error> {
    let games = solver.games();
    let g = parse(games, text)?;
    let outcomes = solver.outcome_vector(g, tb);
    let states = BudgetState::all(tb)
        .map(|s| StateOutcome {
            state: s.to_string(),
            outcome: outcomes.get(&s),
        })
        .collect();
    let names = |v: Vec<BudgetState>| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let mmw = json!({
        "monotonicity_violations": names(outcomes.monotonicity_violations()),
        "marker_worth_violations": names(outcomes.marker_worth_violations()),
    });
    Ok(Analysis {
        version: API_VERSION,
        game: print(games, g, Style::Named),
        game_literal: print(games, g, Style::Literal),
        tb,
        classification: classify(solver, g, tb),
        outcomes,
        states,
        mmw,
    })
}

async fn analyze(
    State(app): State<Arc<AppState>>,
    query: Result<Query<AnalyzeQuery>, axum::extract::rejection::QueryRejection>,
) -> Result<Json<Analysis>, ApiError> {
    let Query(q) = query.map_err(|e| ApiError::BadRequest(e.body_text()))?;
    check_tb(q.tb)?;
    let solver = app.solver.clone();
    let result = tokio::task::spawn_blocking(move || analysis(&solver, &q.game, q.tb))
        .await
        .map_err(|e| ApiError::BadRequest(format!("analysis failed: {e}")))??;
    Ok(Json(result))
}
