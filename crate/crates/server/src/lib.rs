//! Pentachord navigation service.
//!
//! Surfaces, groups and Cayley graphs for the configured segment are built
//! once at startup and shared read-only. Sessions live in memory, each behind
//! its own lock, and can be mirrored to an append-only JSON-lines log.

mod error;
mod session;
mod state;

use std::net::SocketAddr;

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, Query, State};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Deserialize;

use pentanetz_core::walks::Walk;
use pentanetz_core::wire::{
    CayleyResponse, CreateSessionRequest, GroupReport, Health, NeighborsResponse, NormalizeRequest,
    NormalizeResponse, SessionView, StatsResponse, StepRequest, SCHEMA_VERSION,
};

pub use error::{ApiError, StartupError};
pub use state::{AppState, ServerConfig};

pub const DEFAULT_PORT: u16 = 7423;

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/api/health", get(health))
        .route("/api/neighbors", get(neighbors))
        .route("/api/session", post(create_session))
        .route("/api/session/{id}", get(get_session))
        .route("/api/session/{id}/step", post(step))
        .route("/api/session/{id}/undo", post(undo))
        .route("/api/surface/stats", get(stats))
        .route("/api/cayley", get(cayley))
        .route("/api/group", get(group))
        .route("/api/walk/normalize", post(normalize))
        .fallback(|| async { ApiError::not_found("no such endpoint") })
        .with_state(state)
}

/// Serves until the process is stopped.
pub async fn serve(state: AppState, addr: SocketAddr) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    serve_on(state, listener).await
}

pub async fn serve_on(state: AppState, listener: tokio::net::TcpListener) -> std::io::Result<()> {
    axum::serve(listener, router(state)).await
}

type ApiResult<T> = Result<Json<T>, ApiError>;

async fn health(State(state): State<AppState>) -> Json<Health> {
    Json(Health {
        schema_version: SCHEMA_VERSION,
        status: "ok".into(),
        segment: state.segment().to_string(),
        mode: state.mode_name().into(),
    })
}

#[derive(Debug, Deserialize)]
struct NeighborsQuery {
    segment: Option<String>,
    #[serde(rename = "mod")]
    modulus: Option<u32>,
}

async fn neighbors(
    State(state): State<AppState>,
    Query(q): Query<NeighborsQuery>,
) -> ApiResult<NeighborsResponse> {
    let s = state.resolve_segment(q.segment.as_deref(), q.modulus)?;
    Ok(Json(NeighborsResponse::compute(&s)?))
}

async fn create_session(
    State(state): State<AppState>,
    body: Option<Json<CreateSessionRequest>>,
) -> ApiResult<SessionView> {
    let req = body.map(|Json(b)| b).unwrap_or_default();
    Ok(Json(state.create_session(req.segment.as_deref())?))
}

async fn get_session(
    State(state): State<AppState>,
    Path(id): Path<String>,
) -> ApiResult<SessionView> {
    Ok(Json(state.view_session(&id)?))
}

async fn step(
    State(state): State<AppState>,
    Path(id): Path<String>,
    body: Result<Json<StepRequest>, JsonRejection>,
) -> ApiResult<SessionView> {
    let Json(req) = body?;
    Ok(Json(state.step_session(&id, req.gen)?))
}

async fn undo(State(state): State<AppState>, Path(id): Path<String>) -> ApiResult<SessionView> {
    Ok(Json(state.undo_session(&id)?))
}

async fn stats(State(state): State<AppState>) -> Json<StatsResponse> {
    Json(state.stats_response())
}

#[derive(Debug, Deserialize)]
struct CayleyQuery {
    group: Option<String>,
}

async fn cayley(
    State(state): State<AppState>,
    Query(q): Query<CayleyQuery>,
) -> ApiResult<CayleyResponse> {
    Ok(Json(
        state.cayley(q.group.as_deref().unwrap_or("dihedral"))?,
    ))
}

async fn group(State(state): State<AppState>) -> Json<GroupReport> {
    Json(state.group_report().clone())
}

async fn normalize(
    body: Result<Json<NormalizeRequest>, JsonRejection>,
) -> ApiResult<NormalizeResponse> {
    let Json(req) = body?;
    let walk = Walk::parse_product(&req.walk)?;
    Ok(Json(NormalizeResponse::compute(&walk)))
}
