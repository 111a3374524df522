use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use super::{Distance, EdgeId, Graph};
use crate::error::{Error, Result};

/// A path given by its vertex sequence and the edges between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    pub vertices: Vec<usize>,
    pub edges: Vec<EdgeId>,
    pub length: u64,
}

pub(crate) struct ShortestPathTree {
    pub dist: Vec<Distance>,
    parent: Vec<Option<(usize, EdgeId)>>,
}

impl ShortestPathTree {
    pub fn path_to(&self, graph: &Graph, target: usize) -> Option<Path> {
        let length = self.dist[target].finite()?;
        let mut vertices = vec![target];
        let mut edges = Vec::new();
        let mut cur = target;
        while let Some((p, e)) = self.parent[cur] {
            vertices.push(p);
            edges.push(e);
            cur = p;
        }
        vertices.reverse();
        edges.reverse();
        debug_assert_eq!(edges.iter().map(|&e| graph.edge(e).length).sum::<u64>(), length);
        Some(Path { vertices, edges, length })
    }
}

/// Dijkstra over the edges not set in `removed`.
///
/// Ties are resolved deterministically: the queue pops the smaller vertex id
/// among equal distances, and a vertex keeps the smallest-id predecessor
/// among those realizing its distance. With `target` set, the search stops
/// once the target is settled (its distance and parent are final by then).
pub(crate) fn dijkstra(
    graph: &Graph,
    source: usize,
    removed: Option<&[bool]>,
    target: Option<usize>,
) -> ShortestPathTree {
    let n = graph.vertex_count();
    let mut dist = vec![Distance::Infinite; n];
    let mut parent: Vec<Option<(usize, EdgeId)>> = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[source] = Distance::Finite(0);
    heap.push(Reverse((0u64, source)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        if Some(u) == target {
            break;
        }
        for &(w, e) in graph.neighbors(u) {
            if done[w] || removed.is_some_and(|r| r[e]) {
                continue;
            }
            let nd = d + graph.edge(e).length;
            match dist[w] {
                Distance::Finite(old) if nd > old => {}
                Distance::Finite(old) if nd == old => {
                    if parent[w].is_some_and(|(p, _)| u < p) {
                        parent[w] = Some((u, e));
                    }
                }
                _ => {
                    dist[w] = Distance::Finite(nd);
                    parent[w] = Some((u, e));
                    heap.push(Reverse((nd, w)));
                }
            }
        }
    }
    ShortestPathTree { dist, parent }
}

/// Exact distances from `source`; unreachable vertices map to `Infinite`.
pub fn shortest_distances(graph: &Graph, source: usize) -> Result<Vec<Distance>> {
    graph.check_vertex(source)?;
    Ok(dijkstra(graph, source, None, None).dist)
}

/// Distance between `s` and `t` after removing the masked edges.
pub fn st_distance(graph: &Graph, s: usize, t: usize, removed: &[bool]) -> Distance {
    dijkstra(graph, s, Some(removed), Some(t)).dist[t]
}

/// One shortest `s`-`t` path, chosen by the smallest-predecessor tie-break.
pub fn shortest_path(graph: &Graph, s: usize, t: usize) -> Result<Option<Path>> {
    graph.check_vertex(s)?;
    graph.check_vertex(t)?;
    Ok(shortest_path_avoiding(graph, s, t, None))
}

pub(crate) fn shortest_path_avoiding(
    graph: &Graph,
    s: usize,
    t: usize,
    removed: Option<&[bool]>,
) -> Option<Path> {
    dijkstra(graph, s, removed, Some(t)).path_to(graph, t)
}

/// Largest finite-or-infinite distance over all vertex pairs.
pub fn diameter(graph: &Graph) -> Distance {
    (0..graph.vertex_count())
        .map(|v| {
            dijkstra(graph, v, None, None)
                .dist
                .into_iter()
                .max()
                .unwrap_or(Distance::ZERO)
        })
        .max()
        .unwrap_or(Distance::ZERO)
}

/// Minimum number of edges separating `s` from `t` (lengths ignored).
pub fn min_st_cut_size(graph: &Graph, s: usize, t: usize) -> usize {
    min_st_cut(graph, s, t).len()
}

/// A minimum `s`-`t` edge cut: the edges leaving the set of vertices that
/// stay reachable from `s` in the residual network of a maximum flow.
/// Augmenting paths are found by breadth-first search (unit capacities in
/// both directions of every edge).
pub fn min_st_cut(graph: &Graph, s: usize, t: usize) -> Vec<EdgeId> {
    if s == t {
        return Vec::new();
    }
    // flow[e] > 0 means one unit moves from edge.u to edge.v.
    let mut flow = vec![0i8; graph.edge_count()];
    let residual = |flow: &[i8], e: EdgeId, from: usize| -> bool {
        if graph.edge(e).u == from {
            flow[e] < 1
        } else {
            flow[e] > -1
        }
    };
    loop {
        let mut pred: Vec<Option<(usize, EdgeId)>> = vec![None; graph.vertex_count()];
        let mut seen = vec![false; graph.vertex_count()];
        let mut queue = VecDeque::from([s]);
        seen[s] = true;
        while let Some(u) = queue.pop_front() {
            if u == t {
                break;
            }
            for &(w, e) in graph.neighbors(u) {
                if !seen[w] && residual(&flow, e, u) {
                    seen[w] = true;
                    pred[w] = Some((u, e));
                    queue.push_back(w);
                }
            }
        }
        if !seen[t] {
            return graph
                .edges()
                .iter()
                .enumerate()
                .filter(|(_, e)| seen[e.u] != seen[e.v])
                .map(|(id, _)| id)
                .collect();
        }
        let mut cur = t;
        while let Some((p, e)) = pred[cur] {
            flow[e] += if graph.edge(e).u == p { 1 } else { -1 };
            cur = p;
        }
    }
}

pub(crate) fn check_terminals(graph: &Graph, s: usize, t: usize) -> Result<()> {
    graph.check_vertex(s)?;
    graph.check_vertex(t)?;
    if s == t {
        return Err(Error::SameTerminals(s));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Distance::{Finite, Infinite};

    fn c4_weighted() -> Graph {
        // s=0, a=1, t=2, b=3
        Graph::new(4, [(0, 1, 1), (1, 2, 1), (2, 3, 3), (3, 0, 3)]).unwrap()
    }

    #[test]
    fn distances_on_small_graphs() {
        let path = Graph::unit(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(shortest_distances(&path, 0).unwrap(), vec![Finite(0), Finite(1), Finite(2)]);
        let empty = Graph::unit(2, []).unwrap();
        assert_eq!(shortest_distances(&empty, 0).unwrap(), vec![Finite(0), Infinite]);
        assert_eq!(
            shortest_distances(&c4_weighted(), 0).unwrap(),
            vec![Finite(0), Finite(1), Finite(2), Finite(3)]
        );
        assert!(shortest_distances(&path, 3).is_err());
    }

    #[test]
    fn shortest_path_tie_break_prefers_small_ids() {
        // diamond s=0, a=1, b=2, t=3
        let diamond = Graph::unit(4, [(0, 2), (2, 3), (0, 1), (1, 3)]).unwrap();
        let p = shortest_path(&diamond, 0, 3).unwrap().unwrap();
        assert_eq!(p.vertices, vec![0, 1, 3]);
        assert_eq!(p.edges, vec![2, 3]);
        let single = Graph::new(2, [(0, 1, 5)]).unwrap();
        let p = shortest_path(&single, 0, 1).unwrap().unwrap();
        assert_eq!((p.vertices, p.length), (vec![0, 1], 5));
        assert_eq!(shortest_path(&Graph::unit(2, []).unwrap(), 0, 1).unwrap(), None);
    }

    #[test]
    fn cut_sizes() {
        let c4 = Graph::unit(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(min_st_cut_size(&c4, 0, 2), 2);
        let k4 = Graph::unit(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        for s in 0..4 {
            for t in 0..4 {
                if s != t {
                    assert_eq!(min_st_cut_size(&k4, s, t), 3);
                }
            }
        }
        assert_eq!(min_st_cut(&k4, 0, 3), vec![0, 1, 2]);
        assert_eq!(min_st_cut_size(&Graph::unit(2, []).unwrap(), 0, 1), 0);
    }

    #[test]
    fn diameters() {
        let k4 = Graph::unit(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(diameter(&k4), Finite(1));
        let p4 = Graph::unit(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(diameter(&p4), Finite(3));
        assert_eq!(diameter(&Graph::unit(3, [(0, 1)]).unwrap()), Infinite);
    }
}
