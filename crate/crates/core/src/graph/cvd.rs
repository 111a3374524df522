use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

/// A vertex set `X` whose removal leaves a disjoint union of cliques, plus
/// those cliques.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterDecomposition {
    pub deletion_set: Vec<usize>,
    pub cliques: Vec<Vec<usize>>,
}

impl ClusterDecomposition {
    pub fn x(&self) -> usize {
        self.deletion_set.len()
    }

    /// Derives the clique partition of `G - X`, failing if it is not a
    /// cluster graph.
    pub fn from_deletion_set(graph: &Graph, deletion_set: &[usize]) -> Result<Self> {
        let n = graph.vertex_count();
        let mut removed = vec![false; n];
        for &v in deletion_set {
            graph.check_vertex(v)?;
            removed[v] = true;
        }
        let mut assigned = vec![false; n];
        let mut cliques = Vec::new();
        for v in 0..n {
            if removed[v] || assigned[v] {
                continue;
            }
            let mut clique: Vec<usize> = std::iter::once(v)
                .chain(graph.neighbor_ids(v).filter(|&w| !removed[w]))
                .collect();
            clique.sort_unstable();
            for &a in &clique {
                if assigned[a] {
                    return Err(Error::InvalidInput(format!(
                        "vertex {a} belongs to two clusters"
                    )));
                }
                assigned[a] = true;
            }
            cliques.push(clique);
        }
        let mut deletion_set = deletion_set.to_vec();
        deletion_set.sort_unstable();
        deletion_set.dedup();
        let decomposition = ClusterDecomposition { deletion_set, cliques };
        decomposition.validate(graph)?;
        Ok(decomposition)
    }

    /// Checks that the cliques partition `V \ X`, each is complete and no
    /// edge joins two different cliques.
    pub fn validate(&self, graph: &Graph) -> Result<()> {
        let n = graph.vertex_count();
        let mut owner = vec![usize::MAX; n];
        for &v in &self.deletion_set {
            graph.check_vertex(v)?;
            owner[v] = usize::MAX - 1;
        }
        for (i, clique) in self.cliques.iter().enumerate() {
            for &v in clique {
                graph.check_vertex(v)?;
                if owner[v] != usize::MAX {
                    return Err(Error::InvalidInput(format!("vertex {v} assigned twice")));
                }
                owner[v] = i;
            }
            for (j, &a) in clique.iter().enumerate() {
                for &b in &clique[j + 1..] {
                    if !graph.has_edge(a, b) {
                        return Err(Error::InvalidInput(format!(
                            "cluster {i} misses edge {{{a}, {b}}}"
                        )));
                    }
                }
            }
        }
        if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::InvalidInput(format!("vertex {v} not covered")));
        }
        for e in graph.edges() {
            let (a, b) = (owner[e.u], owner[e.v]);
            if a < self.cliques.len() && b < self.cliques.len() && a != b {
                return Err(Error::InvalidInput(format!(
                    "edge {{{}, {}}} joins two clusters",
                    e.u, e.v
                )));
            }
        }
        Ok(())
    }
}

/// First induced path `a - b - c` (`b` the centre) among surviving vertices.
fn find_induced_p3(graph: &Graph, removed: &[bool]) -> Option<[usize; 3]> {
    for b in 0..graph.vertex_count() {
        if removed[b] {
            continue;
        }
        let nbrs: Vec<usize> = graph.neighbor_ids(b).filter(|&w| !removed[w]).collect();
        for (i, &a) in nbrs.iter().enumerate() {
            for &c in &nbrs[i + 1..] {
                if !graph.has_edge(a, c) {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

fn branch(graph: &Graph, removed: &mut [bool], budget: usize, chosen: &mut Vec<usize>) -> bool {
    let Some(p3) = find_induced_p3(graph, removed) else {
        return true;
    };
    if budget == 0 {
        return false;
    }
    let mut order = p3;
    order.sort_unstable();
    for v in order {
        removed[v] = true;
        chosen.push(v);
        if branch(graph, removed, budget - 1, chosen) {
            return true;
        }
        chosen.pop();
        removed[v] = false;
    }
    false
}

/// Minimum cluster vertex deletion set by 3-way branching on induced paths
/// of three vertices, with iterative deepening on the set size.
pub fn cluster_vertex_deletion_set(graph: &Graph) -> ClusterDecomposition {
    let n = graph.vertex_count();
    for budget in 0..=n {
        let mut removed = vec![false; n];
        let mut chosen = Vec::new();
        if branch(graph, &mut removed, budget, &mut chosen) {
            return ClusterDecomposition::from_deletion_set(graph, &chosen)
                .expect("branching leaves a cluster graph");
        }
    }
    unreachable!("deleting every vertex leaves an empty cluster graph")
}
