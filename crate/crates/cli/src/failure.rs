use std::fmt;

use pentanetz_client::ClientError;
use pentanetz_core::group::GroupError;
use pentanetz_core::pitch::PitchError;
use pentanetz_core::surface::SurfaceError;
use pentanetz_core::walks::WalkError;
use pentanetz_server::StartupError;

/// Process outcome; `code` is the exit status.
#[derive(Debug)]
pub enum Failure {
    Runtime(String),
    Usage(String),
    Condition(String),
    Construction(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Runtime(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Condition(_) => 3,
            Failure::Construction(_) => 4,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Runtime(m)
            | Failure::Usage(m)
            | Failure::Condition(m)
            | Failure::Construction(m) => f.write_str(m),
        }
    }
}

impl From<PitchError> for Failure {
    fn from(e: PitchError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<WalkError> for Failure {
    fn from(e: WalkError) -> Self {
        match e {
            WalkError::Pitch(p) => p.into(),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::ConditionFailed { .. } => Failure::Condition(e.to_string()),
            GroupError::Pitch(p) => p.into(),
            other => Failure::Construction(other.to_string()),
        }
    }
}

impl From<SurfaceError> for Failure {
    fn from(e: SurfaceError) -> Self {
        match e {
            SurfaceError::Group(g) => g.into(),
            other => Failure::Construction(other.to_string()),
        }
    }
}

impl From<StartupError> for Failure {
    fn from(e: StartupError) -> Self {
        match e {
            StartupError::Group(g) => g.into(),
            StartupError::Surface(s) => s.into(),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

impl From<ClientError> for Failure {
    fn from(e: ClientError) -> Self {
        match e.status() {
            Some(422) => Failure::Usage(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}
