//! Data reduction for the feedback edge number: delete pendant vertices,
//! contract induced paths, and lift kernel solutions back.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{connected_components, feedback_edge_set, EdgeId, Graph};
use crate::instance::{Instance, Solution};

/// One reduction step. Edge ids here are working ids: the original edges keep
/// their ids `0..m`, each contraction creates the next id `m, m + 1, ...`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule")]
pub enum KernelEvent {
    DeleteDegreeOne { vertex: usize, edge: usize },
    ContractDegreeTwo {
        vertex: usize,
        neighbors: (usize, usize),
        created: usize,
        constituents: (usize, usize),
    },
}

/// Everything needed to map a kernel back onto the instance it came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelTrace {
    pub original_vertex_count: usize,
    pub original_edge_count: usize,
    /// Vertices dropped because they share no component with `s` and `t`.
    pub discarded: Vec<usize>,
    pub events: Vec<KernelEvent>,
    /// Kernel vertex id -> original vertex id.
    pub vertex_map: Vec<usize>,
    /// Kernel edge id -> original edges of the path it stands for, listed
    /// from the endpoint with the smaller original id.
    pub edge_origin: Vec<Vec<EdgeId>>,
}

impl KernelTrace {
    pub fn rule1_count(&self) -> usize {
        self.events.iter().filter(|e| matches!(e, KernelEvent::DeleteDegreeOne { .. })).count()
    }

    pub fn rule2_count(&self) -> usize {
        self.events.len() - self.rule1_count()
    }

    /// Re-applies the recorded events to `original`, checking each rule's
    /// precondition, and returns the resulting kernel.
    pub fn replay(&self, original: &Instance) -> Result<Instance> {
        if original.graph.vertex_count() != self.original_vertex_count
            || original.graph.edge_count() != self.original_edge_count
        {
            return Err(Error::InvalidInput("trace belongs to a different graph".into()));
        }
        let mut work = Work::new(original);
        work.discard(&self.discarded);
        for event in &self.events {
            match *event {
                KernelEvent::DeleteDegreeOne { vertex, edge } => {
                    if !work.rule1_applies(vertex) || work.incident(vertex)[0] != edge {
                        return Err(Error::InvalidInput(format!(
                            "rule 1 does not apply to vertex {vertex}"
                        )));
                    }
                    work.delete_pendant(vertex);
                }
                KernelEvent::ContractDegreeTwo { vertex, created, .. } => {
                    if !work.rule2_applies(vertex) {
                        return Err(Error::InvalidInput(format!(
                            "rule 2 does not apply to vertex {vertex}"
                        )));
                    }
                    let KernelEvent::ContractDegreeTwo { created: got, .. } = work.contract(vertex)
                    else {
                        unreachable!()
                    };
                    if got != created {
                        return Err(Error::InvalidInput("trace edge ids out of order".into()));
                    }
                }
            }
        }
        Ok(work.finish().0)
    }
}

#[derive(Debug, Clone)]
struct WorkEdge {
    u: usize,
    v: usize,
    length: u64,
    /// Original edges from `min(u, v)` to `max(u, v)`.
    path: Vec<EdgeId>,
}

/// Mutable multigraph-free working copy used while reducing.
struct Work<'a> {
    instance: &'a Instance,
    alive: Vec<bool>,
    adj: Vec<BTreeMap<usize, usize>>,
    edges: Vec<Option<WorkEdge>>,
}

impl<'a> Work<'a> {
    fn new(instance: &'a Instance) -> Self {
        let g = &instance.graph;
        let mut adj = vec![BTreeMap::new(); g.vertex_count()];
        let edges = g
            .edges()
            .iter()
            .enumerate()
            .map(|(id, e)| {
                adj[e.u].insert(e.v, id);
                adj[e.v].insert(e.u, id);
                Some(WorkEdge { u: e.u, v: e.v, length: e.length, path: vec![id] })
            })
            .collect();
        Work { instance, alive: vec![true; g.vertex_count()], adj, edges }
    }

    fn is_terminal(&self, v: usize) -> bool {
        v == self.instance.s || v == self.instance.t
    }

    fn incident(&self, v: usize) -> Vec<usize> {
        self.adj[v].values().copied().collect()
    }

    fn remove_edge(&mut self, id: usize) -> WorkEdge {
        let e = self.edges[id].take().expect("edge is alive");
        self.adj[e.u].remove(&e.v);
        self.adj[e.v].remove(&e.u);
        e
    }

    fn discard(&mut self, vertices: &[usize]) {
        for &v in vertices {
            for id in self.incident(v) {
                if self.edges[id].is_some() {
                    self.remove_edge(id);
                }
            }
            self.alive[v] = false;
        }
    }

    fn rule1_applies(&self, v: usize) -> bool {
        self.alive[v] && !self.is_terminal(v) && self.adj[v].len() == 1
    }

    fn rule2_applies(&self, v: usize) -> bool {
        if !self.alive[v] || self.is_terminal(v) || self.adj[v].len() != 2 {
            return false;
        }
        let mut it = self.adj[v].keys();
        let (&u, &w) = (it.next().unwrap(), it.next().unwrap());
        !self.adj[u].contains_key(&w)
    }

    /// Removes a pendant vertex; returns its former neighbour.
    fn delete_pendant(&mut self, v: usize) -> (usize, usize) {
        let (&nb, &id) = self.adj[v].iter().next().unwrap();
        self.remove_edge(id);
        self.alive[v] = false;
        (nb, id)
    }

    fn contract(&mut self, v: usize) -> KernelEvent {
        let mut it = self.adj[v].iter();
        let ((&u, &left), (&w, &right)) = (it.next().unwrap(), it.next().unwrap());
        let a = self.remove_edge(left);
        let b = self.remove_edge(right);
        // u < w by map order; walk u -> v -> w.
        let mut path = a.path;
        if a.u.min(a.v) != u {
            path.reverse();
        }
        let mut tail = b.path;
        if b.u.min(b.v) != v {
            tail.reverse();
        }
        path.extend(tail);
        let created = self.edges.len();
        self.edges.push(Some(WorkEdge { u, v: w, length: a.length + b.length, path }));
        self.adj[u].insert(w, created);
        self.adj[w].insert(u, created);
        self.alive[v] = false;
        KernelEvent::ContractDegreeTwo {
            vertex: v,
            neighbors: (u, w),
            created,
            constituents: (left, right),
        }
    }

    fn finish(self) -> (Instance, Vec<usize>, Vec<Vec<EdgeId>>) {
        let vertex_map: Vec<usize> = (0..self.alive.len()).filter(|&v| self.alive[v]).collect();
        let mut new_id = vec![usize::MAX; self.alive.len()];
        for (i, &v) in vertex_map.iter().enumerate() {
            new_id[v] = i;
        }
        let survivors: Vec<WorkEdge> = self.edges.into_iter().flatten().collect();
        let graph = Graph::new(
            vertex_map.len(),
            survivors.iter().map(|e| (new_id[e.u], new_id[e.v], e.length)),
        )
        .expect("reduction keeps the graph simple");
        let edge_origin = survivors.into_iter().map(|e| e.path).collect();
        let inst = self.instance;
        let kernel = Instance {
            graph,
            s: new_id[inst.s],
            t: new_id[inst.t],
            k: inst.k,
            ell: inst.ell,
        };
        (kernel, vertex_map, edge_origin)
    }
}

fn run(instance: &Instance, discard: bool, rule1: bool, rule2: bool) -> (Instance, KernelTrace) {
    let mut work = Work::new(instance);
    let mut discarded = Vec::new();
    if discard {
        for comp in connected_components(&instance.graph) {
            if !comp.contains(&instance.s) && !comp.contains(&instance.t) {
                discarded.extend(comp);
            }
        }
        discarded.sort_unstable();
        work.discard(&discarded);
    }
    let mut events = Vec::new();
    let n = instance.graph.vertex_count();
    if rule1 {
        let mut queue: BTreeSet<usize> = (0..n).filter(|&v| work.rule1_applies(v)).collect();
        while let Some(v) = queue.pop_first() {
            let (nb, edge) = work.delete_pendant(v);
            events.push(KernelEvent::DeleteDegreeOne { vertex: v, edge });
            if work.rule1_applies(nb) {
                queue.insert(nb);
            }
        }
    }
    // Contraction keeps every surviving degree and only adds adjacencies, so
    // it never enables Rule 1 or another contraction; one pass suffices.
    if rule2 {
        for v in 0..n {
            if work.rule2_applies(v) {
                events.push(work.contract(v));
            }
        }
    }
    let (kernel, vertex_map, edge_origin) = work.finish();
    let trace = KernelTrace {
        original_vertex_count: instance.graph.vertex_count(),
        original_edge_count: instance.graph.edge_count(),
        discarded,
        events,
        vertex_map,
        edge_origin,
    };
    (kernel, trace)
}

/// Deletes degree-one non-terminals until none is left.
pub fn apply_rule1(instance: &Instance) -> (Instance, KernelTrace) {
    run(instance, false, true, false)
}

/// Contracts every degree-two non-terminal whose neighbours are not adjacent
/// into one edge of summed length, until none is left.
pub fn apply_rule2(instance: &Instance) -> (Instance, KernelTrace) {
    run(instance, false, false, true)
}

/// Drops components without a terminal, then applies both rules to a
/// fixpoint. For a connected input with feedback edge number `f` the kernel
/// has at most `5f + 2` vertices and `6f + 2` edges.
pub fn kernelize(instance: &Instance) -> (Instance, KernelTrace) {
    let (kernel, trace) = run(instance, true, true, true);
    debug_assert!(
        connected_components(&instance.graph).len() != 1 || {
            let f = feedback_edge_set(&instance.graph).len();
            kernel.graph.vertex_count() <= 5 * f + 2 && kernel.graph.edge_count() <= 6 * f + 2
        },
        "kernel exceeds the feedback edge bound"
    );
    (kernel, trace)
}

/// Maps a kernel solution to the original graph, replacing each contracted
/// edge by the first original edge of its path.
pub fn lift_solution(trace: &KernelTrace, original: &Instance, kernel_solution: &Solution) -> Result<Solution> {
    let mut deleted = Vec::with_capacity(kernel_solution.cardinality());
    for &e in &kernel_solution.deleted_edges {
        let origin = trace.edge_origin.get(e).ok_or(Error::UnknownEdge(e))?;
        deleted.push(origin[0]);
    }
    Ok(original.evaluate(deleted))
}

/// Kernel size numbers as reported by `bench`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelStats {
    pub vertices_before: usize,
    pub edges_before: usize,
    pub vertices_after: usize,
    pub edges_after: usize,
    pub feedback_edges: usize,
}

impl KernelStats {
    pub fn of(original: &Instance, kernel: &Instance) -> Self {
        KernelStats {
            vertices_before: original.graph.vertex_count(),
            edges_before: original.graph.edge_count(),
            vertices_after: kernel.graph.vertex_count(),
            edges_after: kernel.graph.edge_count(),
            feedback_edges: feedback_edge_set(&original.graph).len(),
        }
    }

    pub fn within_bound(&self) -> bool {
        let f = self.feedback_edges;
        self.vertices_after <= 5 * f + 2 && self.edges_after <= 6 * f + 2
    }
}
