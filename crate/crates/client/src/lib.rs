//! Thin blocking client for the pentanetz HTTP service.

use pentanetz_core::wire::{
    CayleyResponse, CreateSessionRequest, ErrorBody, GroupReport, Health, NeighborsResponse,
    NormalizeRequest, NormalizeResponse, SessionView, StatsResponse, StepRequest,
};
use reqwest::blocking::{RequestBuilder, Response};
use serde::de::DeserializeOwned;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ClientError {
    #[error("request failed: {0}")]
    Transport(#[from] reqwest::Error),
    #[error("server answered {status}: {message}")]
    Api { status: u16, message: String },
}

impl ClientError {
    pub fn status(&self) -> Option<u16> {
        match self {
            ClientError::Api { status, .. } => Some(*status),
            ClientError::Transport(e) => e.status().map(|s| s.as_u16()),
        }
    }
}

pub type Result<T> = std::result::Result<T, ClientError>;

#[derive(Debug, Clone)]
pub struct Client {
    base: String,
    http: reqwest::blocking::Client,
}

impl Client {
    /// `base` is the server root, e.g. `http://127.0.0.1:7423`.
    pub fn new(base: impl Into<String>) -> Self {
        Client {
            base: base.into().trim_end_matches('/').to_string(),
            http: reqwest::blocking::Client::new(),
        }
    }

    pub fn base_url(&self) -> &str {
        &self.base
    }

    fn url(&self, path: &str) -> String {
        format!("{}{path}", self.base)
    }

    fn send<T: DeserializeOwned>(req: RequestBuilder) -> Result<T> {
        decode(req.send()?)
    }

    pub fn health(&self) -> Result<Health> {
        Self::send(self.http.get(self.url("/api/health")))
    }

    pub fn neighbors(
        &self,
        segment: Option<&str>,
        modulus: Option<u32>,
    ) -> Result<NeighborsResponse> {
        let mut query: Vec<(&str, String)> = Vec::new();
        if let Some(s) = segment {
            query.push(("segment", s.to_string()));
        }
        if let Some(m) = modulus {
            query.push(("mod", m.to_string()));
        }
        Self::send(self.http.get(self.url("/api/neighbors")).query(&query))
    }

    pub fn create_session(&self, segment: Option<&str>) -> Result<SessionView> {
        let body = CreateSessionRequest {
            segment: segment.map(str::to_string),
        };
        Self::send(self.http.post(self.url("/api/session")).json(&body))
    }

    pub fn session(&self, id: &str) -> Result<SessionView> {
        Self::send(self.http.get(self.url(&format!("/api/session/{id}"))))
    }

    pub fn step(&self, id: &str, gen: i64) -> Result<SessionView> {
        Self::send(
            self.http
                .post(self.url(&format!("/api/session/{id}/step")))
                .json(&StepRequest { gen }),
        )
    }

    pub fn undo(&self, id: &str) -> Result<SessionView> {
        Self::send(self.http.post(self.url(&format!("/api/session/{id}/undo"))))
    }

    pub fn surface_stats(&self) -> Result<StatsResponse> {
        Self::send(self.http.get(self.url("/api/surface/stats")))
    }

    pub fn cayley(&self, group: &str) -> Result<CayleyResponse> {
        Self::send(
            self.http
                .get(self.url("/api/cayley"))
                .query(&[("group", group)]),
        )
    }

    pub fn group(&self) -> Result<GroupReport> {
        Self::send(self.http.get(self.url("/api/group")))
    }

    pub fn normalize(&self, walk: &str) -> Result<NormalizeResponse> {
        let body = NormalizeRequest {
            walk: walk.to_string(),
        };
        Self::send(self.http.post(self.url("/api/walk/normalize")).json(&body))
    }
}

fn decode<T: DeserializeOwned>(resp: Response) -> Result<T> {
    let status = resp.status();
    if status.is_success() {
        return Ok(resp.json()?);
    }
    let text = resp.text()?;
    let message = serde_json::from_str::<ErrorBody>(&text)
        .map(|b| b.error)
        .unwrap_or(text);
    Err(ClientError::Api {
        status: status.as_u16(),
        message,
    })
}
