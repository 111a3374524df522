//! Exact decision solvers and the optimization wrappers built on them.

mod brute;
mod cvd_fpt;
mod search_tree;
mod twins;

use serde::{Deserialize, Serialize};

use crate::control::SearchControl;
use crate::error::{Error, Result};
use crate::graph::{self, cluster_vertex_deletion_set, Distance, Graph};
use crate::instance::{Instance, Solution};

pub use brute::{brute_force, brute_force_with, xp_by_max_degree, xp_by_max_degree_with};
pub use cvd_fpt::{cvd_fpt, cvd_fpt_with};
pub use search_tree::{search_tree, search_tree_with, SearchTreeConfig, SearchTreeOutcome};
pub use twins::normalize_twins;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExactAlgorithm {
    BruteForce,
    SearchTree,
    XpMaxDegree,
    ClusterFpt,
}

impl ExactAlgorithm {
    pub const ALL: [ExactAlgorithm; 4] = [
        ExactAlgorithm::BruteForce,
        ExactAlgorithm::SearchTree,
        ExactAlgorithm::XpMaxDegree,
        ExactAlgorithm::ClusterFpt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExactAlgorithm::BruteForce => "bruteforce",
            ExactAlgorithm::SearchTree => "searchtree",
            ExactAlgorithm::XpMaxDegree => "xp",
            ExactAlgorithm::ClusterFpt => "cvd",
        }
    }
}

/// Answers that need no search: the target already holds (`S = ∅`), or the
/// budget reaches a minimum cut (delete it and disconnect).
pub(crate) fn trivial_answer(instance: &Instance) -> Option<Solution> {
    if instance.already_feasible() {
        return Some(Solution::empty(instance));
    }
    let cut = graph::min_st_cut(&instance.graph, instance.s, instance.t);
    (instance.k >= cut.len()).then(|| instance.evaluate(cut))
}

/// Runs one exact decision procedure. The cluster algorithm computes its own
/// minimum deletion set.
pub fn decide(
    instance: &Instance,
    algorithm: ExactAlgorithm,
    control: &mut SearchControl,
) -> Result<Option<Solution>> {
    match algorithm {
        ExactAlgorithm::BruteForce => brute_force_with(instance, control),
        ExactAlgorithm::SearchTree => {
            search_tree_with(instance, SearchTreeConfig::default(), control).map(|o| o.solution)
        }
        ExactAlgorithm::XpMaxDegree => xp_by_max_degree_with(instance, control),
        ExactAlgorithm::ClusterFpt => {
            if !instance.unit_length() {
                return Err(Error::Precondition("cluster algorithm needs unit lengths".into()));
            }
            let decomposition = cluster_vertex_deletion_set(&instance.graph);
            cvd_fpt_with(instance, &decomposition, control)
        }
    }
}

/// Smallest budget for which `algorithm` says yes, with its solution. The
/// sweep stops at the minimum cut size, which always suffices.
pub fn min_cost(
    graph: &Graph,
    s: usize,
    t: usize,
    ell: u64,
    algorithm: ExactAlgorithm,
    control: &mut SearchControl,
) -> Result<Solution> {
    let base = Instance::new(graph.clone(), s, t, 0, ell)?;
    let cut = graph::min_st_cut_size(graph, s, t);
    for k in 0..=cut {
        if let Some(sol) = decide(&base.with_budget(k), algorithm, control)? {
            return Ok(sol);
        }
    }
    unreachable!("deleting a minimum cut always disconnects s and t")
}

/// Largest distance reachable with the instance's budget (its `ell` is
/// ignored). Each yes answer lets the next query start above the distance
/// just achieved.
pub fn max_length(
    instance: &Instance,
    algorithm: ExactAlgorithm,
    control: &mut SearchControl,
) -> Result<Solution> {
    let mut best = Solution::empty(instance);
    loop {
        let Distance::Finite(d) = best.achieved_distance else {
            return Ok(best);
        };
        match decide(&instance.with_target(d + 1), algorithm, control)? {
            Some(sol) => best = sol,
            None => return Ok(best),
        }
    }
}
