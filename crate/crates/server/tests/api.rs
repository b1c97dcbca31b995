use std::sync::OnceLock;

use axum::body::{to_bytes, Body};
use axum::http::{Request, StatusCode};
use serde_json::{json, Value};
use tower::ServiceExt;

use pentanetz_core::pitch::PitchSegment;
use pentanetz_core::surface::BuildMode;
use pentanetz_core::walks::{evaluate, Walk};
use pentanetz_server::{router, AppState, ServerConfig};

fn cover_state() -> AppState {
    static STATE: OnceLock<AppState> = OnceLock::new();
    STATE
        .get_or_init(|| {
            let s = PitchSegment::parse("0,4,7,t,2", 12).unwrap();
            AppState::new(ServerConfig::new(s, BuildMode::Cover)).unwrap()
        })
        .clone()
}

async fn call(
    state: &AppState,
    method: &str,
    uri: &str,
    body: Option<Value>,
) -> (StatusCode, Value) {
    let mut req = Request::builder().method(method).uri(uri);
    let body = match body {
        Some(v) => {
            req = req.header("content-type", "application/json");
            Body::from(v.to_string())
        }
        None => Body::empty(),
    };
    let resp = router(state.clone())
        .oneshot(req.body(body).unwrap())
        .await
        .unwrap();
    let status = resp.status();
    let bytes = to_bytes(resp.into_body(), usize::MAX).await.unwrap();
    (status, serde_json::from_slice(&bytes).unwrap())
}

async fn new_session(state: &AppState) -> String {
    let (status, v) = call(state, "POST", "/api/session", Some(json!({}))).await;
    assert_eq!(status, StatusCode::OK);
    v["id"].as_str().unwrap().to_string()
}

#[tokio::test]
async fn every_response_carries_schema_version() {
    let st = cover_state();
    let id = new_session(&st).await;
    for (method, uri, body) in [
        ("GET", "/api/health".to_string(), None),
        ("GET", "/api/neighbors".to_string(), None),
        ("GET", format!("/api/session/{id}"), None),
        ("GET", "/api/surface/stats".to_string(), None),
        ("GET", "/api/cayley?group=dihedral".to_string(), None),
        ("GET", "/api/group".to_string(), None),
        (
            "POST",
            "/api/walk/normalize".to_string(),
            Some(json!({"walk": "12"})),
        ),
        ("GET", "/api/session/nope".to_string(), None),
        ("GET", "/api/nothing".to_string(), None),
    ] {
        let (_, v) = call(&st, method, &uri, body).await;
        assert_eq!(v["schema_version"], 1, "{uri}");
    }
}

#[tokio::test]
async fn neighbors_of_configured_pentachord() {
    let st = cover_state();
    let (status, v) = call(&st, "GET", "/api/neighbors?segment=0,4,7,t,2", None).await;
    assert_eq!(status, StatusCode::OK);
    let n = v["neighbors"].as_array().unwrap();
    assert_eq!(n.len(), 5);
    assert_eq!(n[0]["gen"], 1);
    assert_eq!(n[0]["segment"], "4,0,9,6,2");
    let gens: Vec<i64> = n.iter().map(|e| e["gen"].as_i64().unwrap()).collect();
    assert_eq!(gens, vec![1, 2, 3, 4, 5]);
}

#[tokio::test]
async fn neighbors_reject_bad_segments() {
    let st = cover_state();
    let (status, v) = call(&st, "GET", "/api/neighbors?segment=0,4,x", None).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert!(v["error"].is_string());
    let (status, _) = call(&st, "GET", "/api/neighbors?segment=0,4,7", None).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
}

#[tokio::test]
async fn stepping_twice_returns_to_base() {
    let st = cover_state();
    let id = new_session(&st).await;
    let uri = format!("/api/session/{id}/step");
    let (_, v) = call(&st, "POST", &uri, Some(json!({"gen": 1}))).await;
    assert_eq!(v["current"], "4,0,9,6,2");
    let (status, v) = call(&st, "POST", &uri, Some(json!({"gen": 1}))).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v["current"], v["base"]);
    assert_eq!(v["walk"], json!([]));
    assert_eq!(v["history"], json!([1, 1]));
    assert_eq!(v["normal_form"], "1");
}

#[tokio::test]
async fn session_invariant_after_every_mutation() {
    let st = cover_state();
    let id = new_session(&st).await;
    let base = PitchSegment::parse("0,4,7,t,2", 12).unwrap();
    for (k, gen) in [3, 2, 4, 1, 5, 4, 1, 4, 5, 1, 3, 2, 3]
        .into_iter()
        .enumerate()
    {
        let (status, v) = if k % 4 == 3 {
            call(&st, "POST", &format!("/api/session/{id}/undo"), None).await
        } else {
            call(
                &st,
                "POST",
                &format!("/api/session/{id}/step"),
                Some(json!({"gen": gen})),
            )
            .await
        };
        assert_eq!(status, StatusCode::OK);
        let walk: Vec<u8> = serde_json::from_value(v["walk"].clone()).unwrap();
        let expected = evaluate(&Walk::new(walk).unwrap(), &base).unwrap();
        assert_eq!(v["current"], expected.to_string());
    }
}

#[tokio::test]
async fn pasted_walk_reaches_its_normal_form() {
    let st = cover_state();
    let id = new_session(&st).await;
    for gen in Walk::parse_product("3241541451323").unwrap().steps() {
        call(
            &st,
            "POST",
            &format!("/api/session/{id}/step"),
            Some(json!({"gen": gen})),
        )
        .await;
    }
    let (_, v) = call(&st, "GET", &format!("/api/session/{id}"), None).await;
    assert_eq!(v["normal_form"], "t_1^2 t_2^-3 t_3 t_4^-2 p");
    let (_, n) = call(
        &st,
        "POST",
        "/api/walk/normalize",
        Some(json!({"walk": "3241541451323"})),
    )
    .await;
    assert_eq!(n["normal_form"], v["normal_form"]);
}

#[tokio::test]
async fn unknown_session_is_404() {
    let st = cover_state();
    for (method, uri) in [
        ("GET", "/api/session/missing"),
        ("POST", "/api/session/missing/undo"),
    ] {
        let (status, v) = call(&st, method, uri, None).await;
        assert_eq!(status, StatusCode::NOT_FOUND);
        assert!(v["error"].as_str().unwrap().contains("missing"));
    }
    let (status, _) = call(
        &st,
        "POST",
        "/api/session/missing/step",
        Some(json!({"gen": 1})),
    )
    .await;
    assert_eq!(status, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn invalid_step_is_422_and_leaves_session_alone() {
    let st = cover_state();
    let id = new_session(&st).await;
    let uri = format!("/api/session/{id}/step");
    for body in [
        json!({"gen": 0}),
        json!({"gen": 6}),
        json!({"gen": -1}),
        json!({"gen": "one"}),
    ] {
        let (status, v) = call(&st, "POST", &uri, Some(body)).await;
        assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
        assert!(v["error"].is_string());
    }
    let (_, v) = call(&st, "GET", &format!("/api/session/{id}"), None).await;
    assert_eq!(v["history"], json!([]));
    let (status, _) = call(&st, "POST", &format!("/api/session/{id}/undo"), None).await;
    assert_eq!(status, StatusCode::CONFLICT);
}

#[tokio::test]
async fn degenerate_session_segment_rejected() {
    let st = cover_state();
    let (status, v) = call(
        &st,
        "POST",
        "/api/session",
        Some(json!({"segment": "5,5,5,5,5"})),
    )
    .await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert!(v["error"].as_str().unwrap().contains("degenerate"));
}

#[tokio::test]
async fn cover_stats() {
    let st = cover_state();
    let (status, v) = call(&st, "GET", "/api/surface/stats", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(
        (&v["F"], &v["V"], &v["E"], &v["chi"], &v["genus"]),
        (
            &json!(288),
            &json!(144),
            &json!(720),
            &json!(-288),
            &json!(145)
        )
    );
    assert_eq!(v["mode"], "cover");
}

#[tokio::test]
async fn cayley_graphs() {
    let st = cover_state();
    let (_, d) = call(&st, "GET", "/api/cayley?group=dihedral", None).await;
    assert_eq!(d["vertex_count"], 24);
    let (_, t) = call(&st, "GET", "/api/cayley?group=tile", None).await;
    assert_eq!(t["vertex_count"], 288);
    assert_eq!(t["edge_count"], 720);
    let (status, _) = call(&st, "GET", "/api/cayley?group=free", None).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
}

#[tokio::test]
async fn group_report() {
    let st = cover_state();
    let (_, v) = call(&st, "GET", "/api/group", None).await;
    assert_eq!(v["certificate"]["holds"], true);
    assert_eq!(v["tile_group"]["order"], 288);
}

#[tokio::test]
async fn orbit_mode_without_tile_group() {
    let s = PitchSegment::parse("0,2,4,6,8", 12).unwrap();
    let st = AppState::new(ServerConfig::new(s, BuildMode::Orbit)).unwrap();
    let (status, _) = call(&st, "GET", "/api/cayley?group=tile", None).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    let (_, v) = call(&st, "GET", "/api/health", None).await;
    assert_eq!(v["mode"], "orbit");
    let s = PitchSegment::parse("0,2,4,6,8", 12).unwrap();
    assert!(AppState::new(ServerConfig::new(s, BuildMode::Cover)).is_err());
}

#[tokio::test]
async fn sessions_survive_restart_through_log() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sessions.jsonl");
    let config = || ServerConfig {
        segment: PitchSegment::parse("0,1,3,5,7", 12).unwrap(),
        mode: BuildMode::Orbit,
        session_log: Some(path.clone()),
    };
    let st = AppState::new(config()).unwrap();
    let id = new_session(&st).await;
    for gen in [1, 2, 3] {
        call(
            &st,
            "POST",
            &format!("/api/session/{id}/step"),
            Some(json!({"gen": gen})),
        )
        .await;
    }
    call(&st, "POST", &format!("/api/session/{id}/undo"), None).await;
    let (_, before) = call(&st, "GET", &format!("/api/session/{id}"), None).await;
    drop(st);

    let lines = std::fs::read_to_string(&path).unwrap().lines().count();
    assert_eq!(lines, 5);
    let st = AppState::new(config()).unwrap();
    assert_eq!(st.session_count(), 1);
    let (_, after) = call(&st, "GET", &format!("/api/session/{id}"), None).await;
    assert_eq!(before, after);
}

#[tokio::test(flavor = "multi_thread", worker_threads = 4)]
async fn concurrent_steps_are_serialized_per_session() {
    let st = cover_state();
    let id = new_session(&st).await;
    let tasks: Vec<_> = (0..40)
        .map(|k| {
            let st = st.clone();
            let uri = format!("/api/session/{id}/step");
            tokio::spawn(
                async move { call(&st, "POST", &uri, Some(json!({"gen": k % 5 + 1}))).await },
            )
        })
        .collect();
    for t in tasks {
        assert_eq!(t.await.unwrap().0, StatusCode::OK);
    }
    let (_, v) = call(&st, "GET", &format!("/api/session/{id}"), None).await;
    assert_eq!(v["history"].as_array().unwrap().len(), 40);
    let walk: Vec<u8> = serde_json::from_value(v["walk"].clone()).unwrap();
    let base = PitchSegment::parse("0,4,7,t,2", 12).unwrap();
    assert_eq!(
        v["current"],
        evaluate(&Walk::new(walk).unwrap(), &base)
            .unwrap()
            .to_string()
    );
}
