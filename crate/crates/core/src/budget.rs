use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// Wall-clock allowance for long constructions.
#[derive(Clone, Copy, Debug, Default)]
pub struct Budget {
    deadline: Option<Instant>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { deadline: None }
    }

    pub fn millis(ms: u64) -> Self {
        Budget { deadline: Some(Instant::now() + Duration::from_millis(ms)) }
    }

    pub fn check(&self, stage: &str) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(Error::Budget { stage: stage.to_string(), partial: None }),
            _ => Ok(()),
        }
    }
}
