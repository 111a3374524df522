use std::time::{Duration, Instant};

/// Raised when a search runs past its deadline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("search interrupted by timeout")]
pub struct Interrupted;

/// Node counter and optional deadline shared by the exponential solvers.
/// The deadline is polled cooperatively between branch expansions.
#[derive(Debug, Clone)]
pub struct SearchControl {
    deadline: Option<Instant>,
    nodes: u64,
}

impl Default for SearchControl {
    fn default() -> Self {
        Self::unlimited()
    }
}

impl SearchControl {
    pub fn unlimited() -> Self {
        SearchControl { deadline: None, nodes: 0 }
    }

    pub fn with_timeout(timeout: Option<Duration>) -> Self {
        SearchControl { deadline: timeout.map(|d| Instant::now() + d), nodes: 0 }
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    /// Counts one explored node and fails once the deadline has passed.
    pub fn tick(&mut self) -> Result<(), Interrupted> {
        self.nodes += 1;
        match self.deadline {
            Some(d) if self.nodes % 64 == 0 && Instant::now() >= d => Err(Interrupted),
            _ => Ok(()),
        }
    }

    pub fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }
}
