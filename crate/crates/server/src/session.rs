use serde::{Deserialize, Serialize};

use pentanetz_core::pitch::PitchSegment;
use pentanetz_core::walks::{evaluate, generator_pair, reduce, Walk, GENERATOR_COUNT};

use crate::error::ApiError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Session {
    pub id: String,
    pub base: PitchSegment,
    pub history: Vec<u8>,
    pub current: PitchSegment,
}

impl Session {
    pub fn new(id: String, base: PitchSegment) -> Result<Self, ApiError> {
        if base.len() != 5 {
            return Err(ApiError::invalid(format!(
                "sessions walk on pentachords, got length {}",
                base.len()
            )));
        }
        if base.entries().windows(2).all(|w| w[0] == w[1]) {
            return Err(ApiError::invalid(format!(
                "degenerate segment {base}: every entry is equal, so every step is trivial"
            )));
        }
        Ok(Session {
            id,
            current: base.clone(),
            base,
            history: Vec::new(),
        })
    }

    pub fn walk(&self) -> Walk {
        reduce(&Walk::new(self.history.clone()).expect("history holds valid steps"))
    }

    pub fn step(&mut self, gen: i64) -> Result<(), ApiError> {
        if !(1..=GENERATOR_COUNT as i64).contains(&gen) {
            return Err(ApiError::invalid(format!(
                "generator index {gen} is outside 1..={GENERATOR_COUNT}"
            )));
        }
        let gen = gen as u8;
        self.apply(gen)?;
        self.history.push(gen);
        self.check()
    }

    pub fn undo(&mut self) -> Result<(), ApiError> {
        let gen = self
            .history
            .pop()
            .ok_or_else(|| ApiError::new(axum::http::StatusCode::CONFLICT, "nothing to undo"))?;
        self.apply(gen)?;
        self.check()
    }

    fn apply(&mut self, gen: u8) -> Result<(), ApiError> {
        let (i, j) = generator_pair(gen);
        self.current = self.current.contextual_inversion(i, j)?;
        Ok(())
    }

    /// `current` must equal the reduced walk evaluated at `base`.
    fn check(&self) -> Result<(), ApiError> {
        let expected = evaluate(&self.walk(), &self.base)?;
        if expected != self.current {
            return Err(ApiError::internal(format!(
                "session {}: current {} differs from walk image {expected}",
                self.id, self.current
            )));
        }
        Ok(())
    }

    pub fn record(&self) -> LogRecord {
        LogRecord {
            session: self.id.clone(),
            base: self.base.to_string(),
            modulus: self.base.modulus(),
            history: self.history.clone(),
        }
    }

    pub fn replay(record: &LogRecord) -> Result<Self, ApiError> {
        let base = PitchSegment::parse(&record.base, record.modulus)?;
        let mut s = Session::new(record.session.clone(), base)?;
        for &gen in &record.history {
            s.step(gen as i64)?;
        }
        Ok(s)
    }
}

/// One line of the session log: the full state after a mutation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub(crate) struct LogRecord {
    pub session: String,
    pub base: String,
    #[serde(rename = "mod")]
    pub modulus: u32,
    pub history: Vec<u8>,
}
