use std::ffi::{CStr, CString};
use std::ptr;

use bidgame_ffi::*;

struct Engine(*mut BgEngine);

impl Drop for Engine {
    fn drop(&mut self) {
        unsafe { bg_engine_free(self.0) }
    }
}

fn parse(e: &Engine, text: &str) -> u32 {
    let c = CString::new(text).unwrap();
    let mut id = 0;
    assert_eq!(unsafe { bg_parse(e.0, c.as_ptr(), &mut id) }, BgStatus::Ok);
    id
}

fn take(s: *mut std::ffi::c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { bg_string_free(s) };
    out
}

fn last_error() -> String {
    let p = bg_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn round_trip_and_arithmetic() {
    let e = Engine(bg_engine_new());
    let star = parse(&e, "*");
    let mut sum = 0;
    assert_eq!(unsafe { bg_sum(e.0, star, star, &mut sum) }, BgStatus::Ok);
    assert_eq!(sum, parse(&e, "*+*"));
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { bg_print(e.0, sum, true, &mut s) }, BgStatus::Ok);
    assert_eq!(take(s), "{{0|0}|{0|0}}");
    let up = parse(&e, "^");
    let mut down = 0;
    assert_eq!(unsafe { bg_conjugate(e.0, up, &mut down) }, BgStatus::Ok);
    assert_eq!(unsafe { bg_print(e.0, down, false, &mut s) }, BgStatus::Ok);
    assert_eq!(take(s), "v");
    assert!(bg_last_error().is_null());
}

#[test]
fn outcomes() {
    let e = Engine(bg_engine_new());
    let one = parse(&e, "1");
    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { bg_outcome_vector(e.0, one, 2, &mut s) },
        BgStatus::Ok
    );
    assert_eq!(take(s), "LLLLLL");
    let zero = parse(&e, "0");
    assert_eq!(
        unsafe { bg_outcome_vector(e.0, zero, 1, &mut s) },
        BgStatus::Ok
    );
    assert_eq!(take(s), "RRLL");

    let mut w = BgPlayer::Left;
    let st = unsafe { bg_partial_outcome(e.0, zero, 3, 2, BgPlayer::Left, &mut w) };
    assert_eq!(st, BgStatus::Ok);
    assert_eq!(w, BgPlayer::Right);

    let mut ok = false;
    let st =
        unsafe { bg_zero_bid_optimal(e.0, one, 2, 0, BgPlayer::Right, BgPlayer::Left, &mut ok) };
    assert_eq!(st, BgStatus::Ok);
    assert!(ok);

    assert_eq!(
        unsafe { bg_classify_json(e.0, one, 2, &mut s) },
        BgStatus::Ok
    );
    let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
    let gt = v["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .find(|v| v["relation"] == "GT0")
        .unwrap();
    assert_eq!(gt["status"], "Proven");
}

#[test]
fn errors_are_reported() {
    let e = Engine(bg_engine_new());
    let bad = CString::new("{0|").unwrap();
    let mut id = 0;
    assert_eq!(
        unsafe { bg_parse(e.0, bad.as_ptr(), &mut id) },
        BgStatus::Syntax
    );
    assert!(last_error().contains("syntax"));

    assert_eq!(
        unsafe { bg_parse(ptr::null(), bad.as_ptr(), &mut id) },
        BgStatus::NullArgument
    );
    assert_eq!(
        unsafe { bg_parse(e.0, ptr::null(), &mut id) },
        BgStatus::NullArgument
    );
    let ok = CString::new("1").unwrap();
    assert_eq!(
        unsafe { bg_parse(e.0, ok.as_ptr(), ptr::null_mut()) },
        BgStatus::NullArgument
    );

    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { bg_print(e.0, 123_456, false, &mut s) },
        BgStatus::UnknownGame
    );
    assert!(last_error().contains("123456"));

    let mut w = BgPlayer::Left;
    let st = unsafe { bg_partial_outcome(e.0, 0, 2, 5, BgPlayer::Left, &mut w) };
    assert_eq!(st, BgStatus::InvalidState);

    let invalid = [0xffu8, 0];
    let st = unsafe { bg_parse(e.0, invalid.as_ptr().cast(), &mut id) };
    assert_eq!(st, BgStatus::InvalidUtf8);

    unsafe {
        bg_string_free(ptr::null_mut());
        bg_engine_free(ptr::null_mut());
    }
}
