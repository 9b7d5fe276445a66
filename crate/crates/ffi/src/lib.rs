//! C ABI over the bidgame engine.
//!
//! An engine handle owns one game arena and one solver. Games are referred to by
//! `uint32_t` ids that are only meaningful for the engine that produced them.
//! Strings returned through `out` parameters are owned by the caller and must be
//! released with `bg_string_free`. On any status other than `BG_STATUS_OK`,
//! `bg_last_error` describes the failure for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use bidgame::algebra::classify;
use bidgame::{
    parse, print, BudgetState, Error, GameId, Games, PartialOutcome, Player, Solver, Style,
};

/// Opaque engine handle.
pub struct BgEngine {
    solver: Solver,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BgStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Syntax = 3,
    BoundExceeded = 4,
    InvalidState = 5,
    UnknownGame = 6,
    Internal = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BgPlayer {
    Left = 0,
    Right = 1,
}

impl From<BgPlayer> for Player {
    fn from(p: BgPlayer) -> Self {
        match p {
            BgPlayer::Left => Player::Left,
            BgPlayer::Right => Player::Right,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

struct Failure(BgStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Syntax { .. } => BgStatus::Syntax,
            Error::BoundExceeded { .. } | Error::SearchTooLarge { .. } => BgStatus::BoundExceeded,
            Error::InvalidState { .. } | Error::TbMismatch { .. } | Error::IllegalBid { .. } => {
                BgStatus::InvalidState
            }
            _ => BgStatus::Internal,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(BgStatus::NullArgument, format!("{what} is null"))
}

/// Runs `f`, converting errors and panics into a status plus a thread-local message.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> BgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            BgStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            BgStatus::Panic
        }
    }
}

unsafe fn engine_at<'a>(e: *const BgEngine) -> Result<&'a BgEngine, Failure> {
    e.as_ref().ok_or_else(|| null("engine"))
}

unsafe fn str_at<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null("text"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| Failure(BgStatus::InvalidUtf8, e.to_string()))
}

fn game(e: &BgEngine, id: u32) -> Result<GameId, Failure> {
    e.solver
        .games()
        .id(id)
        .ok_or_else(|| Failure(BgStatus::UnknownGame, format!("no game with id {id}")))
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(v);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|e| Failure(BgStatus::Internal, e.to_string()))?;
    write(out, c.into_raw())
}

fn state(tb: u32, left_budget: u32, marker: BgPlayer) -> Result<BudgetState, Failure> {
    Ok(BudgetState::new(tb, left_budget, marker.into())?)
}

/// Creates an engine. Never returns null.
#[no_mangle]
pub extern "C" fn bg_engine_new() -> *mut BgEngine {
    Box::into_raw(Box::new(BgEngine {
        solver: Solver::new(Arc::new(Games::new())),
    }))
}

/// Releases an engine. Null is ignored.
///
/// # Safety
/// `engine` must come from `bg_engine_new` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn bg_engine_free(engine: *mut BgEngine) {
    if !engine.is_null() {
        drop(Box::from_raw(engine));
    }
}

/// Parses game notation and interns it.
///
/// # Safety
/// `engine` must be live, `text` a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bg_parse(
    engine: *const BgEngine,
    text: *const c_char,
    out: *mut u32,
) -> BgStatus {
    guard(|| {
        let e = engine_at(engine)?;
        let g = parse(e.solver.games(), str_at(text)?)?;
        write(out, g.raw())
    })
}

/// Prints a game, with named shorthands or as a fully literal form.
///
/// # Safety
/// `engine` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bg_print(
    engine: *const BgEngine,
    id: u32,
    literal: bool,
    out: *mut *mut c_char,
) -> BgStatus {
    guard(|| {
        let e = engine_at(engine)?;
        let g = game(e, id)?;
        let style = if literal {
            Style::Literal
        } else {
            Style::Named
        };
        write_string(out, print(e.solver.games(), g, style))
    })
}

/// Disjunctive sum.
///
/// # Safety
/// `engine` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bg_sum(
    engine: *const BgEngine,
    a: u32,
    b: u32,
    out: *mut u32,
) -> BgStatus {
    guard(|| {
        let e = engine_at(engine)?;
        let (a, b) = (game(e, a)?, game(e, b)?);
        write(out, e.solver.games().sum(a, b).raw())
    })
}

/// Conjugate (negative) form.
///
/// # Safety
/// `engine` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bg_conjugate(engine: *const BgEngine, id: u32, out: *mut u32) -> BgStatus {
    guard(|| {
        let e = engine_at(engine)?;
        let g = game(e, id)?;
        write(out, e.solver.games().conjugate(g).raw())
    })
}

/// Winner of `(id, state)` under optimal play.
///
/// # Safety
/// `engine` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bg_partial_outcome(
    engine: *const BgEngine,
    id: u32,
    tb: u32,
    left_budget: u32,
    marker: BgPlayer,
    out: *mut BgPlayer,
) -> BgStatus {
    guard(|| {
        let e = engine_at(engine)?;
        let g = game(e, id)?;
        let s = state(tb, left_budget, marker)?;
        let w = match e.solver.partial_outcome(g, s) {
            PartialOutcome::L => BgPlayer::Left,
            PartialOutcome::R => BgPlayer::Right,
        };
        write(out, w)
    })
}

/// Outcome vector as a string of `L`/`R`, ordered `tb^..0^` then `tb..0`.
///
/// # Safety
/// `engine` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bg_outcome_vector(
    engine: *const BgEngine,
    id: u32,
    tb: u32,
    out: *mut *mut c_char,
) -> BgStatus {
    guard(|| {
        let e = engine_at(engine)?;
        let g = game(e, id)?;
        write_string(out, e.solver.outcome_vector(g, tb).to_string())
    })
}

/// Classification against 0 as JSON (the `classification` object of the HTTP analysis).
///
/// # Safety
/// `engine` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bg_classify_json(
    engine: *const BgEngine,
    id: u32,
    tb: u32,
    out: *mut *mut c_char,
) -> BgStatus {
    guard(|| {
        let e = engine_at(engine)?;
        let g = game(e, id)?;
        let c = classify(&e.solver, g, tb);
        let json = serde_json::to_string(&c)
            .map_err(|err| Failure(BgStatus::Internal, err.to_string()))?;
        write_string(out, json)
    })
}

/// Whether `player` keeps its optimal result while bidding 0 throughout.
///
/// # Safety
/// `engine` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bg_zero_bid_optimal(
    engine: *const BgEngine,
    id: u32,
    tb: u32,
    left_budget: u32,
    marker: BgPlayer,
    player: BgPlayer,
    out: *mut bool,
) -> BgStatus {
    guard(|| {
        let e = engine_at(engine)?;
        let g = game(e, id)?;
        let s = state(tb, left_budget, marker)?;
        write(out, e.solver.zero_bid_optimal(g, s, player.into()))
    })
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn bg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn bg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
