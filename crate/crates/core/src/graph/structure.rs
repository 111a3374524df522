use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::{EdgeId, Graph};

/// Connected components, each sorted, ordered by smallest member.
pub fn connected_components(graph: &Graph) -> Vec<Vec<usize>> {
    let n = graph.vertex_count();
    let mut seen = vec![false; n];
    let mut components = Vec::new();
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut comp = vec![root];
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for w in graph.neighbor_ids(u) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        components.push(comp);
    }
    components
}

/// Edges outside a breadth-first spanning forest. Minimum by construction:
/// `|F| = m - n + #components`.
pub fn feedback_edge_set(graph: &Graph) -> Vec<EdgeId> {
    let n = graph.vertex_count();
    let mut seen = vec![false; n];
    let mut tree_edge = vec![false; graph.edge_count()];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &(w, e) in graph.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    tree_edge[e] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    (0..graph.edge_count()).filter(|&e| !tree_edge[e]).collect()
}

/// A set of interchangeable vertices: all members see the same neighbours
/// outside the set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwinClass {
    pub members: Vec<usize>,
    pub external_neighborhood: Vec<usize>,
}

impl TwinClass {
    /// Checks the defining property against `graph`.
    pub fn is_valid_for(&self, graph: &Graph, excluded: &[usize]) -> bool {
        let inside: BTreeSet<usize> = self.members.iter().copied().collect();
        if self.members.is_empty() || self.members.iter().any(|v| excluded.contains(v)) {
            return false;
        }
        self.members.iter().all(|&v| {
            let outside: Vec<usize> =
                graph.neighbor_ids(v).filter(|w| !inside.contains(w)).collect();
            outside == self.external_neighborhood
        })
    }
}

/// Partitions `V \ excluded` into maximal classes of twins (true twins share
/// closed neighbourhoods, false twins share open ones). The union of both
/// relations is an equivalence: a vertex cannot be a true twin of one vertex
/// and a false twin of another. Classes are ordered by smallest member.
pub fn twin_classes(graph: &Graph, excluded: &[usize]) -> Vec<TwinClass> {
    let n = graph.vertex_count();
    let is_excluded = |v: usize| excluded.contains(&v);
    let mut by_open: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    let mut by_closed: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for v in (0..n).filter(|&v| !is_excluded(v)) {
        let open: Vec<usize> = graph.neighbor_ids(v).collect();
        let mut closed = open.clone();
        closed.push(v);
        closed.sort_unstable();
        by_open.entry(open).or_default().push(v);
        by_closed.entry(closed).or_default().push(v);
    }
    // At most one of a vertex's two groups is non-singleton.
    let mut class_of: Vec<usize> = (0..n).collect();
    for group in by_open.values().chain(by_closed.values()) {
        if group.len() > 1 {
            for &v in group {
                class_of[v] = group[0];
            }
        }
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in (0..n).filter(|&v| !is_excluded(v)) {
        classes.entry(class_of[v]).or_default().push(v);
    }
    classes
        .into_values()
        .map(|members| {
            let external_neighborhood =
                graph.neighbor_ids(members[0]).filter(|w| !members.contains(w)).collect();
            TwinClass { members, external_neighborhood }
        })
        .collect()
}

pub fn is_bipartite(graph: &Graph) -> bool {
    let mut color: Vec<Option<bool>> = vec![None; graph.vertex_count()];
    for root in 0..graph.vertex_count() {
        if color[root].is_some() {
            continue;
        }
        color[root] = Some(false);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let cu = color[u].unwrap();
            for w in graph.neighbor_ids(u) {
                match color[w] {
                    None => {
                        color[w] = Some(!cu);
                        queue.push_back(w);
                    }
                    Some(cw) if cw == cu => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}

/// Smallest `d` such that every subgraph has a vertex of degree at most `d`
/// (repeatedly peel a minimum-degree vertex).
pub fn degeneracy(graph: &Graph) -> usize {
    let n = graph.vertex_count();
    let mut degree: Vec<usize> = (0..n).map(|v| graph.degree(v)).collect();
    let mut alive = vec![true; n];
    let mut queue: BTreeSet<(usize, usize)> = (0..n).map(|v| (degree[v], v)).collect();
    let mut best = 0;
    while let Some((d, v)) = queue.pop_first() {
        best = best.max(d);
        alive[v] = false;
        for w in graph.neighbor_ids(v) {
            if alive[w] {
                queue.remove(&(degree[w], w));
                degree[w] -= 1;
                queue.insert((degree[w], w));
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Graph {
        Graph::unit(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn feedback_edges() {
        let tree = Graph::unit(4, [(0, 1), (1, 2), (1, 3)]).unwrap();
        assert!(feedback_edge_set(&tree).is_empty());
        let c4 = Graph::unit(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(feedback_edge_set(&c4).len(), 1);
        let f = feedback_edge_set(&k4());
        assert_eq!(f.len(), 3);
        let rest: Vec<_> = (0..6).filter(|e| !f.contains(e)).map(|e| k4().edges()[e]).collect();
        let forest = Graph::new(4, rest.iter().map(|e| (e.u, e.v, e.length))).unwrap();
        assert_eq!(connected_components(&forest).len(), 1);
    }

    #[test]
    fn twins_in_small_graphs() {
        // diamond s=0, a=1, b=2, t=3
        let diamond = Graph::unit(4, [(0, 1), (1, 3), (0, 2), (2, 3)]).unwrap();
        let classes = twin_classes(&diamond, &[0, 3]);
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].members, vec![1, 2]);
        assert_eq!(classes[0].external_neighborhood, vec![0, 3]);

        let path = Graph::unit(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let classes = twin_classes(&path, &[0, 3]);
        let members: Vec<_> = classes.iter().map(|c| c.members.clone()).collect();
        assert_eq!(members, vec![vec![1], vec![2]]);

        let classes = twin_classes(&k4(), &[0, 1]);
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].members, vec![2, 3]);
        assert!(classes[0].is_valid_for(&k4(), &[0, 1]));
    }

    #[test]
    fn bipartite_and_degeneracy() {
        let c4 = Graph::unit(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(is_bipartite(&c4));
        assert!(!is_bipartite(&k4()));
        assert_eq!(degeneracy(&c4), 2);
        assert_eq!(degeneracy(&k4()), 3);
    }
}
