//! Simple undirected graphs with positive integer edge lengths.
//!
//! Vertices are dense ids `0..n`. Edges are identified by their position in
//! insertion order ([`EdgeId`]); every solver reports deletions in terms of
//! these ids so that solutions can be checked against the input file.

mod cvd;
mod paths;
mod sptree;
mod structure;

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use cvd::{cluster_vertex_deletion_set, ClusterDecomposition};
pub use paths::{
    diameter, min_st_cut, min_st_cut_size, shortest_distances, shortest_path, st_distance,
    Path,
};
pub(crate) use paths::{check_terminals, shortest_path_avoiding};
pub use sptree::{build_sp_tree, SpNode, SpNodeKind, SpTree};
pub use structure::{
    connected_components, feedback_edge_set, is_bipartite, degeneracy, twin_classes, TwinClass,
};

/// Position of an edge in the graph's insertion order.
pub type EdgeId = usize;

/// A shortest-path length, or `Infinite` when no path exists.
///
/// `Infinite` compares greater than every finite value, so a disconnected
/// pair satisfies every length target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Distance {
    Finite(u64),
    Infinite,
}

impl Distance {
    pub const ZERO: Distance = Distance::Finite(0);

    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }

    /// True when this distance meets the target `ell`.
    pub fn at_least(self, ell: u64) -> bool {
        match self {
            Distance::Finite(d) => d >= ell,
            Distance::Infinite => true,
        }
    }

    /// Saturating addition; anything plus `Infinite` is `Infinite`.
    pub fn plus(self, other: Distance) -> Distance {
        match (self, other) {
            (Distance::Finite(a), Distance::Finite(b)) => Distance::Finite(a.saturating_add(b)),
            _ => Distance::Infinite,
        }
    }
}

impl From<u64> for Distance {
    fn from(d: u64) -> Self {
        Distance::Finite(d)
    }
}

impl PartialEq<u64> for Distance {
    fn eq(&self, other: &u64) -> bool {
        *self == Distance::Finite(*other)
    }
}

impl PartialOrd<u64> for Distance {
    fn partial_cmp(&self, other: &u64) -> Option<Ordering> {
        Some(self.cmp(&Distance::Finite(*other)))
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("infinite"),
        }
    }
}

// Serialized as a JSON number, or the string "infinite".
impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(d) => serializer.serialize_u64(*d),
            Distance::Infinite => serializer.serialize_str("infinite"),
        }
    }
}

impl<'de> Deserialize<'de> for Distance {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Num(d) => Ok(Distance::Finite(d)),
            Raw::Text(s) if s == "infinite" => Ok(Distance::Infinite),
            Raw::Text(s) => Err(serde::de::Error::custom(format!("bad distance {s:?}"))),
        }
    }
}

/// An undirected edge; endpoints are stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub length: u64,
}

impl Edge {
    /// The endpoint opposite to `w`.
    pub fn other(&self, w: usize) -> usize {
        if self.u == w {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(&self, w: usize) -> bool {
        self.u == w || self.v == w
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGraph", into = "RawGraph")]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<Edge>,
    // Sorted by neighbour id.
    adjacency: Vec<Vec<(usize, EdgeId)>>,
}

#[derive(Serialize, Deserialize)]
struct RawGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize, u64)>,
}

impl TryFrom<RawGraph> for Graph {
    type Error = Error;

    fn try_from(raw: RawGraph) -> Result<Self> {
        Graph::new(raw.vertex_count, raw.edges)
    }
}

impl From<Graph> for RawGraph {
    fn from(g: Graph) -> Self {
        RawGraph {
            vertex_count: g.vertex_count,
            edges: g.edges.iter().map(|e| (e.u, e.v, e.length)).collect(),
        }
    }
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate pairs and zero lengths.
    pub fn new<I>(vertex_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, u64)>,
    {
        let mut adjacency = vec![Vec::new(); vertex_count];
        let mut stored = Vec::new();
        for (a, b, length) in edges {
            for w in [a, b] {
                if w >= vertex_count {
                    return Err(Error::InvalidVertex { vertex: w, vertex_count });
                }
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            if length == 0 {
                return Err(Error::NonPositiveLength(a, b));
            }
            let (u, v) = (a.min(b), a.max(b));
            let id = stored.len();
            stored.push(Edge { u, v, length });
            adjacency[u].push((v, id));
            adjacency[v].push((u, id));
        }
        for list in adjacency.iter_mut() {
            list.sort_unstable();
        }
        for (w, list) in adjacency.iter().enumerate() {
            if let Some(pair) = list.windows(2).find(|p| p[0].0 == p[1].0) {
                return Err(Error::DuplicateEdge(w.min(pair[0].0), w.max(pair[0].0)));
            }
        }
        Ok(Graph { vertex_count, edges: stored, adjacency })
    }

    /// Graph with every edge of length one.
    pub fn unit<I>(vertex_count: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Graph::new(vertex_count, pairs.into_iter().map(|(u, v)| (u, v, 1)))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id]
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, EdgeId)] {
        &self.adjacency[v]
    }

    pub fn neighbor_ids(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[v].iter().map(|&(w, _)| w)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<EdgeId> {
        let list = self.adjacency.get(u)?;
        list.binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|i| list[i].1)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_between(u, v).is_some()
    }

    pub fn is_unit_length(&self) -> bool {
        self.edges.iter().all(|e| e.length == 1)
    }

    pub fn is_complete(&self) -> bool {
        let n = self.vertex_count;
        self.edges.len() == n * n.saturating_sub(1) / 2
    }

    pub fn max_length(&self) -> u64 {
        self.edges.iter().map(|e| e.length).max().unwrap_or(0)
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertex_count {
            Ok(())
        } else {
            Err(Error::InvalidVertex { vertex: v, vertex_count: self.vertex_count })
        }
    }

    /// Removal mask with the given edges set.
    pub fn edge_mask(&self, removed: &[EdgeId]) -> Vec<bool> {
        let mut mask = vec![false; self.edges.len()];
        for &e in removed {
            mask[e] = true;
        }
        mask
    }

    /// Rebuilds the adjacency index from the edge list and compares.
    pub fn adjacency_consistent(&self) -> bool {
        match Graph::new(self.vertex_count, self.edges.iter().map(|e| (e.u, e.v, e.length))) {
            Ok(rebuilt) => rebuilt.adjacency == self.adjacency,
            Err(_) => false,
        }
    }
}
