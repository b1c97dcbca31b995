use axum::extract::rejection::JsonRejection;
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use thiserror::Error;

use pentanetz_core::group::GroupError;
use pentanetz_core::pitch::PitchError;
use pentanetz_core::surface::SurfaceError;
use pentanetz_core::walks::WalkError;
use pentanetz_core::wire::{ErrorBody, SCHEMA_VERSION};

#[derive(Debug, Error)]
pub enum StartupError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("session log {path}: {source}")]
    Log {
        path: String,
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApiError {
    pub status: StatusCode,
    pub message: String,
}

impl ApiError {
    pub fn new(status: StatusCode, message: impl Into<String>) -> Self {
        ApiError {
            status,
            message: message.into(),
        }
    }

    pub fn not_found(message: impl Into<String>) -> Self {
        Self::new(StatusCode::NOT_FOUND, message)
    }

    pub fn invalid(message: impl Into<String>) -> Self {
        Self::new(StatusCode::UNPROCESSABLE_ENTITY, message)
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Self::new(StatusCode::INTERNAL_SERVER_ERROR, message)
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = ErrorBody {
            schema_version: SCHEMA_VERSION,
            error: self.message,
        };
        (self.status, Json(body)).into_response()
    }
}

impl From<PitchError> for ApiError {
    fn from(e: PitchError) -> Self {
        ApiError::invalid(e.to_string())
    }
}

impl From<GroupError> for ApiError {
    fn from(e: GroupError) -> Self {
        ApiError::invalid(e.to_string())
    }
}

impl From<WalkError> for ApiError {
    fn from(e: WalkError) -> Self {
        ApiError::invalid(e.to_string())
    }
}

impl From<JsonRejection> for ApiError {
    fn from(e: JsonRejection) -> Self {
        ApiError::new(e.status(), e.body_text())
    }
}
