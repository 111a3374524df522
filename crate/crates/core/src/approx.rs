//! Approximation algorithms for both optimization variants.

use serde::{Deserialize, Serialize};

use crate::control::SearchControl;
use crate::error::{Error, Result};
use crate::exact::{min_cost, search_tree_with, ExactAlgorithm, SearchTreeConfig};
use crate::graph::{check_terminals, shortest_path_avoiding, Distance, Graph};
use crate::instance::{Instance, Solution};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreedyResult {
    pub solution: Solution,
    /// Number of rounds; the paths removed are edge-disjoint, so any
    /// solution needs at least this many deletions.
    pub lower_bound: usize,
}

/// Deletes every edge of a shortest path while it is shorter than `ell`.
/// Each round removes fewer than `ell` edges, giving a factor-`ell` bound.
pub fn greedy_ell_approx(graph: &Graph, s: usize, t: usize, ell: u64) -> Result<GreedyResult> {
    check_terminals(graph, s, t)?;
    let mut removed = vec![false; graph.edge_count()];
    let mut deleted = Vec::new();
    let mut rounds = 0;
    while let Some(path) = shortest_path_avoiding(graph, s, t, Some(&removed)) {
        if path.length >= ell {
            break;
        }
        rounds += 1;
        for e in path.edges {
            removed[e] = true;
            deleted.push(e);
        }
    }
    Ok(GreedyResult { solution: Solution::new(graph, s, t, deleted), lower_bound: rounds })
}

/// Exact search-tree min-cost for targets up to `threshold`, the greedy
/// approximation above it.
pub fn min_cost_tradeoff(
    graph: &Graph,
    s: usize,
    t: usize,
    ell: u64,
    threshold: u64,
    control: &mut SearchControl,
) -> Result<Solution> {
    if ell <= threshold {
        min_cost(graph, s, t, ell, ExactAlgorithm::SearchTree, control)
    } else {
        Ok(greedy_ell_approx(graph, s, t, ell)?.solution)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "factor")]
pub enum Certificate {
    Optimal,
    ApproxFactor(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamApprox {
    pub solution: Solution,
    pub certificate: Certificate,
    /// The sweep limit `g(n)`.
    pub sweep_limit: u64,
}

/// `ceil(2^(c * sqrt(log2 n)))`, at least 1.
pub fn sweep_limit(n: usize, c: f64) -> u64 {
    let log = (n.max(1) as f64).log2();
    (c * log.sqrt()).exp2().ceil().max(1.0) as u64
}

/// Max-Length on unit lengths: ask the search tree for targets
/// `1, 2, ..., g(n)`. A no answer proves the previous solution optimal;
/// surviving the whole sweep leaves a distance of at least `g(n)` against an
/// optimum of at most `n - 1`.
pub fn param_approx_max_length(
    instance: &Instance,
    c: f64,
    control: &mut SearchControl,
) -> Result<ParamApprox> {
    if !instance.unit_length() {
        return Err(Error::Precondition("parameterized approximation needs unit lengths".into()));
    }
    if !(c > 0.0) {
        return Err(Error::InvalidInput("constant c must be positive".into()));
    }
    let n = instance.graph.vertex_count();
    let limit = sweep_limit(n, c);
    let mut best = Solution::empty(instance);
    loop {
        let next = match best.achieved_distance {
            Distance::Infinite => break,
            Distance::Finite(d) => d + 1,
        };
        if next > limit {
            let factor = n as f64 / limit as f64;
            return Ok(ParamApprox {
                solution: best,
                certificate: Certificate::ApproxFactor(factor),
                sweep_limit: limit,
            });
        }
        let query = instance.with_target(next);
        match search_tree_with(&query, SearchTreeConfig::default(), control)?.solution {
            Some(sol) => best = sol,
            None => break,
        }
    }
    Ok(ParamApprox { solution: best, certificate: Certificate::Optimal, sweep_limit: limit })
}
