use serde::{Deserialize, Serialize};

use crate::control::SearchControl;
use crate::error::Result;
use crate::graph::{shortest_path_avoiding, EdgeId};
use crate::instance::{Instance, Solution};

use super::trivial_answer;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchTreeConfig {
    /// Prune a node when greedily packed short paths, disjoint in their
    /// deletable edges, outnumber the remaining budget; also forbid
    /// re-deleting edges skipped by earlier sibling branches. Off by default
    /// so the plain branching tree is what runs.
    pub pruning: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchTreeOutcome {
    pub solution: Option<Solution>,
    pub nodes: u64,
    pub leaves: u64,
}

/// Bounded search tree: while a shortest path is shorter than `ell`, branch
/// on deleting each of its edges (in path order from `s`), to depth `k`.
pub fn search_tree(instance: &Instance) -> Option<Solution> {
    search_tree_with(instance, SearchTreeConfig::default(), &mut SearchControl::unlimited())
        .expect("no deadline set")
        .solution
}

pub fn search_tree_with(
    instance: &Instance,
    config: SearchTreeConfig,
    control: &mut SearchControl,
) -> Result<SearchTreeOutcome> {
    if let Some(sol) = trivial_answer(instance) {
        return Ok(SearchTreeOutcome { solution: Some(sol), nodes: 1, leaves: 1 });
    }
    let m = instance.graph.edge_count();
    let mut search = Search {
        instance,
        config,
        removed: vec![false; m],
        forbidden: vec![false; m],
        chosen: Vec::new(),
        nodes: 0,
        leaves: 0,
    };
    let found = search.branch(instance.k, control)?;
    let solution = found.then(|| instance.evaluate(search.chosen.clone()));
    Ok(SearchTreeOutcome { solution, nodes: search.nodes, leaves: search.leaves })
}

struct Search<'a> {
    instance: &'a Instance,
    config: SearchTreeConfig,
    removed: Vec<bool>,
    forbidden: Vec<bool>,
    chosen: Vec<EdgeId>,
    nodes: u64,
    leaves: u64,
}

impl Search<'_> {
    fn branch(&mut self, budget: usize, control: &mut SearchControl) -> Result<bool> {
        control.tick()?;
        self.nodes += 1;
        let inst = self.instance;
        let path = shortest_path_avoiding(&inst.graph, inst.s, inst.t, Some(&self.removed));
        let path = match path {
            Some(p) if p.length < inst.ell => p,
            _ => {
                self.leaves += 1;
                return Ok(true);
            }
        };
        if budget == 0 || (self.config.pruning && self.packing_bound(budget) > budget) {
            self.leaves += 1;
            return Ok(false);
        }
        let mut newly_forbidden = Vec::new();
        let mut found = false;
        let mut children = 0;
        for &e in &path.edges {
            if self.forbidden[e] {
                continue;
            }
            children += 1;
            self.removed[e] = true;
            self.chosen.push(e);
            if self.branch(budget - 1, control)? {
                found = true;
                break;
            }
            self.chosen.pop();
            self.removed[e] = false;
            if self.config.pruning {
                self.forbidden[e] = true;
                newly_forbidden.push(e);
            }
        }
        for e in newly_forbidden {
            self.forbidden[e] = false;
        }
        if children == 0 {
            self.leaves += 1;
        }
        Ok(found)
    }

    /// Number of short paths found greedily whose deletable edges are
    /// pairwise disjoint; each needs its own deletion. A short path with no
    /// deletable edge makes the node infeasible (reported as `usize::MAX`).
    fn packing_bound(&self, budget: usize) -> usize {
        let inst = self.instance;
        let mut blocked = self.removed.clone();
        let mut count = 0;
        while count <= budget {
            let Some(p) = shortest_path_avoiding(&inst.graph, inst.s, inst.t, Some(&blocked)) else {
                break;
            };
            if p.length >= inst.ell {
                break;
            }
            let deletable: Vec<EdgeId> =
                p.edges.iter().copied().filter(|&e| !self.forbidden[e]).collect();
            if deletable.is_empty() {
                return usize::MAX;
            }
            for e in deletable {
                blocked[e] = true;
            }
            count += 1;
        }
        count
    }
}
