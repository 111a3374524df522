use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, TwinClass};
use crate::instance::Solution;

/// Rewrites `solution` so that every member of `class` loses the same
/// outside neighbours and no edge inside the class is deleted. The pivot is
/// the member with the fewest deletions toward vertices outside the class
/// (smallest id on ties); its outside pattern is copied to the other members.
/// The result is never larger and never shortens the `s`-`t` distance.
pub fn normalize_twins(
    graph: &Graph,
    s: usize,
    t: usize,
    class: &TwinClass,
    solution: &Solution,
) -> Result<Solution> {
    if !graph.is_unit_length() {
        return Err(Error::Precondition("twin normalization needs unit lengths".into()));
    }
    if !class.is_valid_for(graph, &[s, t]) {
        return Err(Error::InvalidInput("not a twin class of this graph".into()));
    }
    let members: BTreeSet<usize> = class.members.iter().copied().collect();
    let deleted: BTreeSet<EdgeId> = solution.deleted_edges.iter().copied().collect();
    if let Some(&e) = deleted.iter().find(|&&e| e >= graph.edge_count()) {
        return Err(Error::UnknownEdge(e));
    }
    let outside_pattern = |v: usize| -> BTreeSet<usize> {
        graph
            .neighbors(v)
            .iter()
            .filter(|&&(w, e)| !members.contains(&w) && deleted.contains(&e))
            .map(|&(w, _)| w)
            .collect()
    };
    let pivot = *members
        .iter()
        .min_by_key(|&&v| (outside_pattern(v).len(), v))
        .expect("twin classes are non-empty");
    let pattern = outside_pattern(pivot);

    let mut result: Vec<EdgeId> = deleted
        .iter()
        .copied()
        .filter(|&e| {
            let edge = graph.edge(e);
            let (a, b) = (members.contains(&edge.u), members.contains(&edge.v));
            // keep edges away from the class and the pivot's outside edges
            !(a || b) || (a != b && (edge.u == pivot || edge.v == pivot))
        })
        .collect();
    for &v in members.iter().filter(|&&v| v != pivot) {
        for &w in &pattern {
            result.push(graph.edge_between(v, w).expect("twins share outside neighbours"));
        }
    }
    Ok(Solution::new(graph, s, t, result))
}
