use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::Instance;

/// A graph with a 3-colouring: `part[v]` is 0, 1 or 2 and no edge joins two
/// vertices of the same part.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripartiteGraph {
    graph: Graph,
    part: Vec<u8>,
}

impl TripartiteGraph {
    pub fn new(graph: Graph, part: Vec<u8>) -> Result<Self> {
        if part.len() != graph.vertex_count() {
            return Err(Error::InvalidInput("one part label per vertex expected".into()));
        }
        if let Some(v) = part.iter().position(|&p| p > 2) {
            return Err(Error::InvalidInput(format!("vertex {v} has part {} (expected 0..=2)", part[v])));
        }
        if let Some(e) = graph.edges().iter().find(|e| part[e.u] == part[e.v]) {
            return Err(Error::InvalidInput(format!(
                "edge {{{}, {}}} lies inside part {}",
                e.u, e.v, part[e.u]
            )));
        }
        Ok(TripartiteGraph { graph, part })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn part(&self, v: usize) -> u8 {
        self.part[v]
    }

    pub fn members(&self, p: u8) -> Vec<usize> {
        (0..self.part.len()).filter(|&v| self.part[v] == p).collect()
    }

    /// Size of a minimum vertex cover, by enumerating subsets in order of
    /// size. Exponential; meant for the small graphs the reductions are
    /// checked on.
    pub fn min_vertex_cover(&self) -> usize {
        let n = self.graph.vertex_count();
        assert!(n < 32, "vertex cover enumeration is limited to 31 vertices");
        let covers = |mask: u32| self.graph.edges().iter().all(|e| mask >> e.u & 1 == 1 || mask >> e.v & 1 == 1);
        (0..=n)
            .find(|&size| (0u32..1 << n).any(|m| m.count_ones() as usize == size && covers(m)))
            .unwrap_or(n)
    }
}

/// Builder that lays vertices out in creation order.
struct Layout {
    n: usize,
    edges: Vec<(usize, usize, u64)>,
}

impl Layout {
    fn vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    fn edge(&mut self, u: usize, v: usize) {
        self.edges.push((u, v, 1));
    }

    /// `copies` vertex-disjoint `u`-`v` paths of `alpha` unit edges each
    /// (`alpha - 1` inner vertices, a single shared-free vertex when 2).
    fn gadget(&mut self, u: usize, v: usize, alpha: u64, copies: usize) {
        debug_assert!(alpha >= 2);
        for _ in 0..copies {
            let mut prev = u;
            for _ in 0..alpha - 1 {
                let w = self.vertex();
                self.edge(prev, w);
                prev = w;
            }
            self.edge(prev, v);
        }
    }
}

/// Gadget lengths `[V1-V2, V2'-V3, V1-V3, s-V2 and V2'-t]`.
fn vc_layout(g: &TripartiteGraph, h: usize, lengths: [u64; 4], ell: u64) -> Result<Instance> {
    let n = g.graph.vertex_count();
    if h >= n {
        return Err(Error::InvalidInput(format!(
            "budget h = {h} must be below the vertex count {n}"
        )));
    }
    let v2 = g.members(1);
    let mut lay = Layout { n, edges: Vec::new() };
    let mut copy = vec![usize::MAX; n];
    for &v in &v2 {
        copy[v] = lay.vertex();
    }
    let s = lay.vertex();
    let t = lay.vertex();
    for &v in &v2 {
        lay.edge(v, copy[v]);
    }
    for v in g.members(0) {
        lay.edge(s, v);
    }
    for v in g.members(2) {
        lay.edge(v, t);
    }
    for e in g.graph.edges() {
        let (a, b) = if g.part(e.u) < g.part(e.v) { (e.u, e.v) } else { (e.v, e.u) };
        match (g.part(a), g.part(b)) {
            (0, 1) => lay.gadget(a, b, lengths[0], n),
            (1, 2) => lay.gadget(copy[a], b, lengths[1], n),
            (0, 2) => lay.gadget(a, b, lengths[2], n),
            _ => unreachable!("validated tripartite"),
        }
    }
    for &v in &v2 {
        lay.gadget(s, v, lengths[3], n);
    }
    for &v in &v2 {
        lay.gadget(copy[v], t, lengths[3], n);
    }
    let graph = Graph::new(lay.n, lay.edges)?;
    Instance::new(graph, s, t, h, ell)
}

/// Vertex cover on tripartite graphs to SP-MVE with unit lengths, `k = h`
/// and `ell = 9`. Layout: the input vertices, the copies of part 1, `s`,
/// `t`, then gadget vertices in construction order.
pub fn gen_vc_reduction(g: &TripartiteGraph, h: usize) -> Result<Instance> {
    vc_layout(g, h, [2, 2, 5, 4], 9)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapInstance {
    /// Max-Length instance with budget `h`; its `ell` is set to the upper
    /// threshold.
    pub instance: Instance,
    /// Optimum reaches this when the graph has a vertex cover of size `h`.
    pub yes_threshold: u64,
    /// Optimum stays at or below this otherwise.
    pub no_threshold: u64,
}

/// Same layout as [`gen_vc_reduction`] with gadget lengths `x, x, 3x, 2x`.
pub fn gen_gap_reduction(g: &TripartiteGraph, h: usize, x: u64) -> Result<GapInstance> {
    if x < 2 {
        return Err(Error::InvalidInput("gadget scale x must be at least 2".into()));
    }
    let instance = vc_layout(g, h, [x, x, 3 * x, 2 * x], 4 * x + 1)?;
    Ok(GapInstance { instance, yes_threshold: 4 * x + 1, no_threshold: 3 * x + 2 })
}

/// Replaces every edge `{u, v}` by `u - w - v` (new vertices after the old
/// ones, in edge order) and doubles `ell`.
pub fn gen_subdivision(instance: &Instance) -> Result<Instance> {
    if !instance.unit_length() {
        return Err(Error::InvalidInput("subdivision expects unit lengths".into()));
    }
    let g = &instance.graph;
    let n = g.vertex_count();
    let edges = g.edges().iter().enumerate().flat_map(|(i, e)| [(e.u, n + i, 1), (n + i, e.v, 1)]);
    let graph = Graph::new(n + g.edge_count(), edges)?;
    Instance::new(graph, instance.s, instance.t, instance.k, 2 * instance.ell)
}

/// Clique on the original vertices plus `multiplicity` common neighbours
/// per original edge (default `n^2`), `k' = C(n,2) + k * M`, `ell' = 2 ell`.
/// Needs `M > C(n,2)` so that paying for the clique cannot buy an extra
/// original edge.
pub fn gen_split_reduction(instance: &Instance, multiplicity: Option<usize>) -> Result<Instance> {
    if !instance.unit_length() {
        return Err(Error::InvalidInput("split reduction expects unit lengths".into()));
    }
    let g = &instance.graph;
    let n = g.vertex_count();
    let pairs = n * (n - 1) / 2;
    let m = multiplicity.unwrap_or(n * n);
    if m <= pairs {
        return Err(Error::InvalidInput(format!(
            "multiplicity {m} must exceed C(n,2) = {pairs}"
        )));
    }
    let mut edges: Vec<(usize, usize, u64)> =
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b, 1))).collect();
    let mut next = n;
    for e in g.edges() {
        for _ in 0..m {
            edges.push((e.u, next, 1));
            edges.push((e.v, next, 1));
            next += 1;
        }
    }
    let graph = Graph::new(next, edges)?;
    Instance::new(graph, instance.s, instance.t, pairs + instance.k * m, 2 * instance.ell)
}

/// Adds every missing edge with length `ell + 1`, after the existing edges
/// in lexicographic order.
pub fn gen_complete_reduction(instance: &Instance) -> Result<Instance> {
    let g = &instance.graph;
    let n = g.vertex_count();
    let heavy = instance.ell + 1;
    let extra = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|&(a, b)| !g.has_edge(a, b))
        .map(|(a, b)| (a, b, heavy));
    let graph = Graph::new(n, g.edges().iter().map(|e| (e.u, e.v, e.length)).chain(extra))?;
    Instance::new(graph, instance.s, instance.t, instance.k, instance.ell)
}
