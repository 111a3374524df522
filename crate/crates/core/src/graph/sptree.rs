use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{EdgeId, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpNodeKind {
    Leaf(EdgeId),
    /// Children meet in one middle vertex: the first spans `{a, mid}`, the
    /// second `{mid, b}` (child terminal pairs are unordered).
    Series(usize, usize),
    Parallel(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpNode {
    pub kind: SpNodeKind,
    pub terminals: (usize, usize),
}

/// Binary decomposition tree of a two-terminal series-parallel graph.
///
/// Children always precede their parent in `nodes`, so a forward scan is a
/// valid post-order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpTree {
    pub nodes: Vec<SpNode>,
    pub root: usize,
}

impl SpTree {
    pub fn terminals(&self) -> (usize, usize) {
        self.nodes[self.root].terminals
    }

    pub fn leaf_edges(&self) -> Vec<EdgeId> {
        let mut edges: Vec<EdgeId> = self
            .nodes
            .iter()
            .filter_map(|n| match n.kind {
                SpNodeKind::Leaf(e) => Some(e),
                _ => None,
            })
            .collect();
        edges.sort_unstable();
        edges
    }

    /// Recomposes the tree and checks it against `graph`: leaves carry the
    /// graph's edges exactly once, leaf terminals match edge endpoints,
    /// series children meet in exactly one terminal and parallel children
    /// share both.
    pub fn is_consistent_with(&self, graph: &Graph) -> bool {
        let same_pair = |a: (usize, usize), b: (usize, usize)| {
            (a.0 == b.0 && a.1 == b.1) || (a.0 == b.1 && a.1 == b.0)
        };
        for node in &self.nodes {
            let (a, b) = node.terminals;
            let ok = match node.kind {
                SpNodeKind::Leaf(e) => {
                    e < graph.edge_count() && {
                        let edge = graph.edge(e);
                        same_pair((edge.u, edge.v), (a, b))
                    }
                }
                SpNodeKind::Series(l, r) => {
                    let (la, lb) = self.nodes[l].terminals;
                    let mid = if la == a { lb } else { la };
                    mid != a
                        && mid != b
                        && same_pair(self.nodes[l].terminals, (a, mid))
                        && same_pair(self.nodes[r].terminals, (mid, b))
                }
                SpNodeKind::Parallel(l, r) => {
                    same_pair(self.nodes[l].terminals, (a, b))
                        && same_pair(self.nodes[r].terminals, (a, b))
                }
            };
            if !ok {
                return false;
            }
        }
        self.leaf_edges() == (0..graph.edge_count()).collect::<Vec<_>>()
    }
}

/// Recognizes a two-terminal series-parallel graph with terminals `(s, t)`
/// by reduction: merge parallel edges, contract degree-two non-terminals,
/// recording every merge as a tree node. Returns `None` when the reduction
/// stalls before a single `s`-`t` edge remains.
pub fn build_sp_tree(graph: &Graph, s: usize, t: usize) -> Option<SpTree> {
    if s == t || s >= graph.vertex_count() || t >= graph.vertex_count() {
        return None;
    }
    let mut nodes: Vec<SpNode> = Vec::with_capacity(2 * graph.edge_count());
    // Multigraph adjacency: neighbour -> tree node of the (merged) edge bundle.
    let mut adj: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new(); graph.vertex_count()];
    for (id, e) in graph.edges().iter().enumerate() {
        nodes.push(SpNode { kind: SpNodeKind::Leaf(id), terminals: (e.u, e.v) });
        adj[e.u].insert(e.v, id);
        adj[e.v].insert(e.u, id);
    }
    let mut work: BTreeSet<usize> = (0..graph.vertex_count())
        .filter(|&v| v != s && v != t && adj[v].len() == 2)
        .collect();
    while let Some(v) = work.pop_first() {
        if adj[v].len() != 2 {
            continue;
        }
        let mut it = adj[v].iter();
        let (&u, &left) = it.next().unwrap();
        let (&w, &right) = it.next().unwrap();
        adj[v].clear();
        adj[u].remove(&v);
        adj[w].remove(&v);
        nodes.push(SpNode { kind: SpNodeKind::Series(left, right), terminals: (u, w) });
        let mut merged = nodes.len() - 1;
        if let Some(&existing) = adj[u].get(&w) {
            nodes.push(SpNode { kind: SpNodeKind::Parallel(existing, merged), terminals: (u, w) });
            merged = nodes.len() - 1;
        }
        adj[u].insert(w, merged);
        adj[w].insert(u, merged);
        for x in [u, w] {
            if x != s && x != t && adj[x].len() == 2 {
                work.insert(x);
            }
        }
    }
    let remaining: usize = adj.iter().map(BTreeMap::len).sum();
    if remaining != 2 || adj[s].len() != 1 {
        return None;
    }
    let root = *adj[s].get(&t)?;
    let node = &mut nodes[root];
    if node.terminals.0 != s {
        node.terminals = (s, t);
        if let SpNodeKind::Series(l, r) = node.kind {
            node.kind = SpNodeKind::Series(r, l);
        }
    }
    Some(SpTree { nodes, root })
}
