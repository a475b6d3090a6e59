use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// Resource budgets shared by the expensive stages.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    /// Maximum number of cosets alive during enumeration.
    pub enumeration: usize,
    /// Maximum group order accepted by the character-table stage.
    pub chartab: usize,
    /// Maximum number of subgroup nodes visited by the permutation-degree search.
    pub mu_nodes: usize,
    /// Maximum number of DFS nodes in the quasi-permutation search.
    pub c_nodes: usize,
    pub deadline: Option<Instant>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration: 200_000,
            chartab: 20_000,
            mu_nodes: 1_000_000,
            c_nodes: 50_000_000,
            deadline: None,
        }
    }
}

impl Limits {
    pub fn with_timeout(mut self, timeout: Option<Duration>) -> Self {
        self.deadline = timeout.map(|t| Instant::now() + t);
        self
    }

    pub fn check_deadline(&self, stage: &'static str) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() >= d => Err(Error::Timeout(stage)),
            _ => Ok(()),
        }
    }
}
