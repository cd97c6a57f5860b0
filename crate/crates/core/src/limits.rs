use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// Resource guards for the exponential searches.
#[derive(Clone, Debug)]
pub struct Limits {
    /// Refuse graphs with more vertices than this.
    pub max_vertices: usize,
    /// Upper bound on enumerated separations (both orientations counted).
    pub max_separations: usize,
    /// Upper bound on inverse pairs a profile search may branch over.
    pub max_pairs: usize,
    /// Upper bound on automorphisms materialized by the canonicity harness.
    pub max_automorphisms: usize,
    deadline: Option<Instant>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_vertices: 40,
            max_separations: 2_000_000,
            max_pairs: 200_000,
            max_automorphisms: 2_000_000,
            deadline: None,
        }
    }
}

impl Limits {
    pub fn unlimited() -> Self {
        Limits {
            max_vertices: crate::vertex_set::MAX_VERTICES,
            max_separations: usize::MAX,
            max_pairs: usize::MAX,
            max_automorphisms: usize::MAX,
            deadline: None,
        }
    }

    pub fn with_time_budget(mut self, budget: Duration) -> Self {
        self.deadline = Some(Instant::now() + budget);
        self
    }

    pub fn check_time(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(Error::Resource("wall-clock budget exhausted".into())),
            _ => Ok(()),
        }
    }

    pub fn check_vertices(&self, n: usize) -> Result<()> {
        if n > self.max_vertices {
            return Err(Error::Resource(format!(
                "graph has {n} vertices, limit is {}",
                self.max_vertices
            )));
        }
        Ok(())
    }
}
