use std::time::{Duration, Instant};

use thiserror::Error;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("time budget exhausted")]
pub struct TimedOut;

/// Cooperative time limit checked inside long-running loops.
#[derive(Clone, Copy, Debug, Default)]
pub struct Deadline(Option<Instant>);

impl Deadline {
    pub fn none() -> Self {
        Deadline(None)
    }

    pub fn after(d: Duration) -> Self {
        Deadline(Instant::now().checked_add(d))
    }

    pub fn check(&self) -> Result<(), TimedOut> {
        match self.0 {
            Some(t) if Instant::now() >= t => Err(TimedOut),
            _ => Ok(()),
        }
    }
}
