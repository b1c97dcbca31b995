use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::PathBuf;
use std::sync::Arc;

use parking_lot::{Mutex, RwLock};

use pentanetz_core::group::tile_group;
use pentanetz_core::pitch::PitchSegment;
use pentanetz_core::surface::{build_surface, surface_stats, BuildMode, SurfaceStats};
use pentanetz_core::walks::{normalize, CayleyGraph};
use pentanetz_core::wire::{
    CayleyResponse, GroupReport, SessionView, StatsResponse, SCHEMA_VERSION,
};

use crate::error::{ApiError, StartupError};
use crate::session::{LogRecord, Session};

#[derive(Debug, Clone)]
pub struct ServerConfig {
    pub segment: PitchSegment,
    pub mode: BuildMode,
    /// Append-only JSON-lines file; existing sessions in it are restored.
    pub session_log: Option<PathBuf>,
}

impl ServerConfig {
    pub fn new(segment: PitchSegment, mode: BuildMode) -> Self {
        ServerConfig {
            segment,
            mode,
            session_log: None,
        }
    }
}

#[derive(Clone)]
pub struct AppState {
    inner: Arc<Inner>,
}

struct Inner {
    segment: PitchSegment,
    mode: BuildMode,
    stats: SurfaceStats,
    group: GroupReport,
    tile: Option<CayleyResponse>,
    dihedral: Option<CayleyResponse>,
    sessions: RwLock<HashMap<String, Arc<Mutex<Session>>>>,
    log: Option<Mutex<File>>,
}

fn cayley_response(group: &str, graph: &CayleyGraph) -> CayleyResponse {
    CayleyResponse {
        schema_version: SCHEMA_VERSION,
        group: group.into(),
        vertex_count: graph.vertices.len(),
        edge_count: graph.edges.len(),
        graph: graph.to_json_value(),
    }
}

impl AppState {
    pub fn new(config: ServerConfig) -> Result<Self, StartupError> {
        let surface = build_surface(&config.segment, config.mode)?;
        let group = GroupReport::compute(&config.segment)?;
        let (tile, dihedral) = if group.tile_group.is_some() {
            let g = tile_group(&config.segment)?;
            (
                Some(cayley_response("tile", &CayleyGraph::of_tile_group(&g))),
                Some(cayley_response(
                    "dihedral",
                    &CayleyGraph::of_dihedral(&g.dihedral_quotient()),
                )),
            )
        } else {
            (None, None)
        };
        let mut sessions = HashMap::new();
        let log = match &config.session_log {
            Some(path) => {
                let log_err = |source| StartupError::Log {
                    path: path.display().to_string(),
                    source,
                };
                if path.exists() {
                    for s in replay_log(path).map_err(log_err)? {
                        sessions.insert(s.id.clone(), Arc::new(Mutex::new(s)));
                    }
                }
                let file = OpenOptions::new()
                    .create(true)
                    .append(true)
                    .open(path)
                    .map_err(log_err)?;
                Some(Mutex::new(file))
            }
            None => None,
        };
        Ok(AppState {
            inner: Arc::new(Inner {
                stats: surface_stats(&surface),
                segment: config.segment,
                mode: config.mode,
                group,
                tile,
                dihedral,
                sessions: RwLock::new(sessions),
                log,
            }),
        })
    }

    pub fn segment(&self) -> &PitchSegment {
        &self.inner.segment
    }

    pub fn mode_name(&self) -> &'static str {
        match self.inner.mode {
            BuildMode::Orbit => "orbit",
            BuildMode::Cover => "cover",
        }
    }

    pub fn stats(&self) -> &SurfaceStats {
        &self.inner.stats
    }

    pub fn session_count(&self) -> usize {
        self.inner.sessions.read().len()
    }

    pub(crate) fn resolve_segment(
        &self,
        text: Option<&str>,
        modulus: Option<u32>,
    ) -> Result<PitchSegment, ApiError> {
        match text {
            None => Ok(self.inner.segment.clone()),
            Some(t) => Ok(PitchSegment::parse(
                t,
                modulus.unwrap_or(self.inner.segment.modulus()),
            )?),
        }
    }

    pub(crate) fn stats_response(&self) -> StatsResponse {
        StatsResponse {
            schema_version: SCHEMA_VERSION,
            segment: self.inner.segment.to_string(),
            mode: self.mode_name().into(),
            stats: self.inner.stats.clone(),
        }
    }

    pub(crate) fn group_report(&self) -> &GroupReport {
        &self.inner.group
    }

    pub(crate) fn cayley(&self, group: &str) -> Result<CayleyResponse, ApiError> {
        let graph = match group {
            "tile" => &self.inner.tile,
            "dihedral" => &self.inner.dihedral,
            other => {
                return Err(ApiError::invalid(format!(
                    "unknown group {other:?} (expected tile|dihedral)"
                )))
            }
        };
        graph.clone().ok_or_else(|| {
            ApiError::invalid(format!("segment {} has no tile group", self.inner.segment))
        })
    }

    fn view(&self, s: &Session) -> SessionView {
        let walk = s.walk();
        let nf = normalize(&walk);
        SessionView {
            schema_version: SCHEMA_VERSION,
            id: s.id.clone(),
            base: s.base.to_string(),
            current: s.current.to_string(),
            history: s.history.clone(),
            walk: walk.steps().to_vec(),
            normal_form: nf.to_string(),
            normal_form_detail: nf,
            mode: self.mode_name().into(),
            stats: Some(self.inner.stats.clone()),
        }
    }

    fn session(&self, id: &str) -> Result<Arc<Mutex<Session>>, ApiError> {
        self.inner
            .sessions
            .read()
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::not_found(format!("unknown session {id}")))
    }

    fn append_log(&self, s: &Session) -> Result<(), ApiError> {
        let Some(log) = &self.inner.log else {
            return Ok(());
        };
        let mut line = serde_json::to_string(&s.record()).expect("log record serializes");
        line.push('\n');
        let mut file = log.lock();
        file.write_all(line.as_bytes())
            .and_then(|()| file.flush())
            .map_err(|e| ApiError::internal(format!("session log: {e}")))
    }

    pub(crate) fn create_session(&self, segment: Option<&str>) -> Result<SessionView, ApiError> {
        let base = self.resolve_segment(segment, None)?;
        let session = Session::new(uuid::Uuid::new_v4().to_string(), base)?;
        self.append_log(&session)?;
        let view = self.view(&session);
        self.inner
            .sessions
            .write()
            .insert(session.id.clone(), Arc::new(Mutex::new(session)));
        Ok(view)
    }

    pub(crate) fn view_session(&self, id: &str) -> Result<SessionView, ApiError> {
        let handle = self.session(id)?;
        let s = handle.lock();
        Ok(self.view(&s))
    }

    fn mutate(
        &self,
        id: &str,
        f: impl FnOnce(&mut Session) -> Result<(), ApiError>,
    ) -> Result<SessionView, ApiError> {
        let handle = self.session(id)?;
        let mut guard = handle.lock();
        let mut next = guard.clone();
        f(&mut next)?;
        self.append_log(&next)?;
        *guard = next;
        Ok(self.view(&guard))
    }

    pub(crate) fn step_session(&self, id: &str, gen: i64) -> Result<SessionView, ApiError> {
        self.mutate(id, |s| s.step(gen))
    }

    pub(crate) fn undo_session(&self, id: &str) -> Result<SessionView, ApiError> {
        self.mutate(id, Session::undo)
    }
}

/// Later lines for a session supersede earlier ones; unreadable lines are skipped.
fn replay_log(path: &std::path::Path) -> std::io::Result<Vec<Session>> {
    let mut latest: HashMap<String, LogRecord> = HashMap::new();
    let mut order = Vec::new();
    for line in BufReader::new(File::open(path)?).lines() {
        let Ok(record) = serde_json::from_str::<LogRecord>(&line?) else {
            continue;
        };
        if !latest.contains_key(&record.session) {
            order.push(record.session.clone());
        }
        latest.insert(record.session.clone(), record);
    }
    Ok(order
        .iter()
        .filter_map(|id| Session::replay(&latest[id]).ok())
        .collect())
}
