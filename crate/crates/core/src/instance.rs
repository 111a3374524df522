use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{self, Distance, EdgeId, Graph};

/// A decision instance: may at most `k` edge deletions push the `s`-`t`
/// distance to at least `ell`?
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub graph: Graph,
    pub s: usize,
    pub t: usize,
    pub k: usize,
    pub ell: u64,
}

impl Instance {
    pub fn new(graph: Graph, s: usize, t: usize, k: usize, ell: u64) -> Result<Self> {
        graph::check_terminals(&graph, s, t)?;
        if ell == 0 {
            return Err(Error::InvalidInput("target length must be positive".into()));
        }
        Ok(Instance { graph, s, t, k, ell })
    }

    pub fn with_budget(&self, k: usize) -> Instance {
        Instance { k, ..self.clone() }
    }

    pub fn with_target(&self, ell: u64) -> Instance {
        Instance { ell, ..self.clone() }
    }

    pub fn unit_length(&self) -> bool {
        self.graph.is_unit_length()
    }

    pub fn distance(&self) -> Distance {
        graph::st_distance(&self.graph, self.s, self.t, &vec![false; self.graph.edge_count()])
    }

    /// Required increase `ell - dist(s, t)`; `None` when `s` and `t` are
    /// already disconnected (the instance is trivially yes).
    pub fn required_increase(&self) -> Option<i64> {
        self.distance().finite().map(|d| self.ell as i64 - d as i64)
    }

    /// True when no deletion is needed.
    pub fn already_feasible(&self) -> bool {
        self.distance().at_least(self.ell)
    }

    pub fn evaluate(&self, deleted: Vec<EdgeId>) -> Solution {
        Solution::new(&self.graph, self.s, self.t, deleted)
    }
}

/// A set of deleted edges with the `s`-`t` distance it leaves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution {
    pub deleted_edges: Vec<EdgeId>,
    pub achieved_distance: Distance,
}

impl Solution {
    /// Sorts and deduplicates `deleted`, then measures the remaining distance.
    pub fn new(graph: &Graph, s: usize, t: usize, mut deleted: Vec<EdgeId>) -> Solution {
        deleted.sort_unstable();
        deleted.dedup();
        let mask = graph.edge_mask(&deleted);
        let achieved_distance = graph::st_distance(graph, s, t, &mask);
        Solution { deleted_edges: deleted, achieved_distance }
    }

    pub fn empty(instance: &Instance) -> Solution {
        instance.evaluate(Vec::new())
    }

    pub fn cardinality(&self) -> usize {
        self.deleted_edges.len()
    }

    /// Independent re-check: edges exist, budget respected, distance
    /// recomputed from scratch meets the target.
    pub fn verify(&self, instance: &Instance) -> std::result::Result<(), Violation> {
        let m = instance.graph.edge_count();
        if let Some(&e) = self.deleted_edges.iter().find(|&&e| e >= m) {
            return Err(Violation::EdgeNotInGraph(e));
        }
        if self.cardinality() > instance.k {
            return Err(Violation::OverBudget { used: self.cardinality(), budget: instance.k });
        }
        let recomputed = Solution::new(&instance.graph, instance.s, instance.t, self.deleted_edges.clone());
        if recomputed.achieved_distance != self.achieved_distance {
            return Err(Violation::DistanceMismatch {
                claimed: self.achieved_distance,
                actual: recomputed.achieved_distance,
            });
        }
        if !recomputed.achieved_distance.at_least(instance.ell) {
            return Err(Violation::DistanceTooSmall {
                distance: recomputed.achieved_distance,
                ell: instance.ell,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Violation {
    #[error("edge {0} is not in the graph")]
    EdgeNotInGraph(EdgeId),
    #[error("{used} deletions exceed the budget {budget}")]
    OverBudget { used: usize, budget: usize },
    #[error("claimed distance {claimed} but recomputed {actual}")]
    DistanceMismatch { claimed: Distance, actual: Distance },
    #[error("distance {distance} is below the target {ell}")]
    DistanceTooSmall { distance: Distance, ell: u64 },
}

impl Violation {
    pub fn code(&self) -> &'static str {
        match self {
            Violation::EdgeNotInGraph(_) => "EdgeNotInGraph",
            Violation::OverBudget { .. } => "OverBudget",
            Violation::DistanceMismatch { .. } => "DistanceMismatch",
            Violation::DistanceTooSmall { .. } => "DistanceTooSmall",
        }
    }
}
