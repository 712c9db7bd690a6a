//! Dimension guards for computations that materialise weights or basis vectors.

use crate::error::{KrError, Result};

pub const DEFAULT_MAX_DIM: u64 = 100_000;
pub const ENV_MAX_DIM: &str = "KR_MAX_DIM";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_dim: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_dim: DEFAULT_MAX_DIM }
    }
}

impl Limits {
    pub fn new(max_dim: u64) -> Self {
        Limits { max_dim }
    }

    /// Reads `KR_MAX_DIM`, falling back to the default when unset or unparsable.
    pub fn from_env() -> Self {
        std::env::var(ENV_MAX_DIM)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .map(Limits::new)
            .unwrap_or_default()
    }

    pub fn check(&self, what: impl Into<String>, needed: u64) -> Result<()> {
        if needed > self.max_dim {
            return Err(KrError::DimensionGuard { what: what.into(), needed, limit: self.max_dim });
        }
        Ok(())
    }
}
