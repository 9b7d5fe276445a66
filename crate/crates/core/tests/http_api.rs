use std::sync::Arc;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

use bidgame::service::{router, AppState};
use bidgame::{Games, Solver};

fn app() -> Router {
    router(AppState::new(Arc::new(Solver::new(Arc::new(Games::new())))))
}

async fn call(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let req = Request::builder().method(method).uri(uri);
    let req = match body {
        Some(b) => req
            .header("content-type", "application/json")
            .body(Body::from(b.to_string()))
            .unwrap(),
        None => req.body(Body::empty()).unwrap(),
    };
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    let v = serde_json::from_slice(&bytes).unwrap_or(Value::Null);
    (status, v)
}

async fn create(app: &Router, body: Value) -> Value {
    let (status, v) = call(app, "POST", "/session", Some(body)).await;
    assert_eq!(status, StatusCode::CREATED, "{v}");
    v
}

#[tokio::test]
async fn star_plus_star_transcript() {
    let app = app();
    let s = create(
        &app,
        json!({"game": "*+*", "tb": 1, "human_side": "left", "initial_budget": "1^"}),
    )
    .await;
    assert_eq!(s["version"], 1);
    assert_eq!(s["phase"], "bidding");
    assert_eq!(s["state"], "1^");
    let id = s["id"].as_u64().unwrap();

    let (status, r) = call(
        &app,
        "POST",
        &format!("/session/{id}/bid"),
        Some(json!({"amount": 0, "include_marker": true})),
    )
    .await;
    assert_eq!(status, StatusCode::OK, "{r}");
    assert_eq!(
        r["engine_bid"],
        json!({"amount": 0, "include_marker": false})
    );
    assert_eq!(r["result"]["winner"], "left");
    assert_eq!(r["session"]["phase"], "awaiting_move");
    assert_eq!(r["required_move"].as_array().unwrap().len(), 1);

    let (status, r) = call(
        &app,
        "POST",
        &format!("/session/{id}/move"),
        Some(json!({"option": "*"})),
    )
    .await;
    assert_eq!(status, StatusCode::OK, "{r}");
    assert_eq!(r["session"]["position"], "*");

    let (status, r) = call(
        &app,
        "POST",
        &format!("/session/{id}/bid"),
        Some(json!({"amount": 1})),
    )
    .await;
    assert_eq!(status, StatusCode::OK, "{r}");
    assert_eq!(r["result"]["winner"], "left");
    let (_, r) = call(
        &app,
        "POST",
        &format!("/session/{id}/move"),
        Some(json!({"index": 0})),
    )
    .await;
    assert_eq!(r["session"]["position"], "0");

    // In 0 whoever wins the last round cannot move; Left now bids 0 and lets it play out.
    let mut view = r["session"].clone();
    for _ in 0..4 {
        if view["phase"] == "finished" {
            break;
        }
        let (status, r) = call(
            &app,
            "POST",
            &format!("/session/{id}/bid"),
            Some(json!({"amount": 0})),
        )
        .await;
        assert_eq!(status, StatusCode::OK, "{r}");
        view = r["session"].clone();
    }
    assert_eq!(view["phase"], "finished");
    assert_eq!(view["winner"], "left");

    let (status, got) = call(&app, "GET", &format!("/session/{id}"), None).await;
    assert_eq!(status, StatusCode::OK);
    let history = got["history"].as_array().unwrap();
    assert!(history.len() >= 3);
    assert_eq!(history[0]["moved_to"], "*");
    assert_eq!(got["winner"], "left");
}

#[tokio::test]
async fn illegal_bid_is_422_with_legal_bids() {
    let app = app();
    let s = create(
        &app,
        json!({"game": "1", "tb": 2, "human_side": "right", "initial_budget": "0"}),
    )
    .await;
    let id = s["id"].as_u64().unwrap();
    let (status, r) = call(
        &app,
        "POST",
        &format!("/session/{id}/bid"),
        Some(json!({"amount": 5})),
    )
    .await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(r["error"]["kind"], "illegal_bid");
    let amounts: Vec<u64> = r["error"]["legal_bids"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| b["amount"].as_u64().unwrap())
        .collect();
    assert_eq!(amounts, vec![0, 0, 1, 1, 2, 2]);
}

#[tokio::test]
async fn engine_wins_integer_as_left() {
    let app = app();
    for budget in ["0", "1", "2", "2^", "0^"] {
        let s = create(
            &app,
            json!({"game": "1", "tb": 2, "human_side": "right", "initial_budget": budget}),
        )
        .await;
        let id = s["id"].as_u64().unwrap();
        let mut view = s;
        let mut rounds = 0;
        while view["phase"] != "finished" {
            rounds += 1;
            assert!(rounds < 10);
            if view["phase"] == "awaiting_move" {
                let (_, r) = call(
                    &app,
                    "POST",
                    &format!("/session/{id}/move"),
                    Some(json!({"index": 0})),
                )
                .await;
                view = r["session"].clone();
                continue;
            }
            let top = view["legal_bids"]
                .as_array()
                .unwrap()
                .last()
                .unwrap()
                .clone();
            let (status, r) = call(&app, "POST", &format!("/session/{id}/bid"), Some(top)).await;
            assert_eq!(status, StatusCode::OK, "{r}");
            view = r["session"].clone();
        }
        assert_eq!(view["winner"], "left", "from {budget}");
    }
}

#[tokio::test]
async fn errors_have_stable_shapes() {
    let app = app();
    let (status, r) = call(&app, "GET", "/session/999", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert_eq!(r["version"], 1);
    assert_eq!(r["error"]["kind"], "unknown_session");

    let (status, r) = call(&app, "POST", "/session/999/bid", Some(json!({"amount": 0}))).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert_eq!(r["error"]["kind"], "unknown_session");

    let (status, r) = call(
        &app,
        "POST",
        "/session",
        Some(json!({"game": "{0|", "tb": 1, "human_side": "left"})),
    )
    .await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(r["error"]["kind"], "bad_request");

    let (status, _) = call(&app, "POST", "/session", Some(json!({"tb": 1}))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);

    let (status, _) = call(
        &app,
        "POST",
        "/session",
        Some(json!({"game": "*", "tb": 1, "human_side": "left", "initial_budget": "3^"})),
    )
    .await;
    assert_eq!(status, StatusCode::BAD_REQUEST);

    let (status, _) = call(&app, "GET", "/analyze?game=*&tb=1000", None).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);

    let s = create(&app, json!({"game": "*", "tb": 1, "human_side": "left"})).await;
    assert_eq!(s["state"], "0^");
    let id = s["id"].as_u64().unwrap();
    let (status, r) = call(
        &app,
        "POST",
        &format!("/session/{id}/move"),
        Some(json!({"index": 0})),
    )
    .await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert_eq!(r["error"]["kind"], "conflict");
}

#[tokio::test]
async fn illegal_move_is_422() {
    let app = app();
    let s = create(
        &app,
        json!({"game": "{0,*|0}", "tb": 2, "human_side": "left", "initial_budget": "2^"}),
    )
    .await;
    let id = s["id"].as_u64().unwrap();
    let (status, r) = call(
        &app,
        "POST",
        &format!("/session/{id}/bid"),
        Some(json!({"amount": 2})),
    )
    .await;
    assert_eq!(status, StatusCode::OK, "{r}");
    assert_eq!(r["session"]["phase"], "awaiting_move");
    let (status, r) = call(
        &app,
        "POST",
        &format!("/session/{id}/move"),
        Some(json!({"index": 7})),
    )
    .await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(r["error"]["kind"], "illegal_move");
    let (status, _) = call(
        &app,
        "POST",
        &format!("/session/{id}/move"),
        Some(json!({"option": "1"})),
    )
    .await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    let (status, r) = call(
        &app,
        "POST",
        &format!("/session/{id}/bid"),
        Some(json!({"amount": 0})),
    )
    .await;
    assert_eq!(status, StatusCode::CONFLICT, "{r}");
}

#[tokio::test]
async fn analyze_reports_outcomes_and_verdicts() {
    let app = app();
    let (status, r) = call(&app, "GET", "/analyze?game=1&tb=2", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(r["version"], 1);
    assert_eq!(r["outcomes"], "LLLLLL");
    assert_eq!(r["states"].as_array().unwrap().len(), 6);
    assert_eq!(r["states"][0], json!({"state": "2^", "outcome": "L"}));
    assert!(r["mmw"]["monotonicity_violations"]
        .as_array()
        .unwrap()
        .is_empty());
    let verdicts = r["classification"]["verdicts"].as_array().unwrap();
    assert_eq!(verdicts.len(), 6);
    let gt = verdicts.iter().find(|v| v["relation"] == "GT0").unwrap();
    assert_eq!(gt["status"], "Proven");
    assert_eq!(gt["evidence"], json!({"test": 3}));

    let (_, r) = call(&app, "GET", "/analyze?game=0&tb=1", None).await;
    assert_eq!(r["outcomes"], "RRLL");

    let (status, r) = call(&app, "GET", "/analyze?game=*", None).await;
    assert_eq!(status, StatusCode::BAD_REQUEST, "{r}");
}
