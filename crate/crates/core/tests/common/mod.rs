//! Shared test fixtures: an exhaustive deletion-set oracle written
//! independently of the library's shortest path code, and small-graph
//! enumerators.
#![allow(dead_code)]

use mve_core::{Graph, Instance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const INF: u64 = u64::MAX;

/// O(n^2) Dijkstra over an edge list, skipping edges whose bit is set.
pub fn dist_avoiding(n: usize, edges: &[(usize, usize, u64)], s: usize, t: usize, removed: u64) -> u64 {
    let mut adj = vec![Vec::new(); n];
    for (i, &(u, v, len)) in edges.iter().enumerate() {
        if removed >> i & 1 == 0 {
            adj[u].push((v, len));
            adj[v].push((u, len));
        }
    }
    let mut dist = vec![INF; n];
    let mut done = vec![false; n];
    dist[s] = 0;
    loop {
        let Some(u) = (0..n).filter(|&v| !done[v] && dist[v] < INF).min_by_key(|&v| dist[v]) else {
            return INF;
        };
        if u == t {
            return dist[t];
        }
        done[u] = true;
        for &(v, len) in &adj[u] {
            dist[v] = dist[v].min(dist[u] + len);
        }
    }
}

/// `best[c]`: largest `s`-`t` distance after deleting at most `c` edges, for
/// `c = 0..=cap`, found by trying every deletion set of each size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Oracle {
    pub best: Vec<u64>,
    pub witness: Vec<u64>,
}

impl Oracle {
    pub fn new(inst: &Instance, cap: usize) -> Oracle {
        Oracle::of(&inst.graph, inst.s, inst.t, cap)
    }

    pub fn of(graph: &Graph, s: usize, t: usize, cap: usize) -> Oracle {
        let edges: Vec<(usize, usize, u64)> = graph.edges().iter().map(|e| (e.u, e.v, e.length)).collect();
        let m = edges.len();
        assert!(m < 64);
        let n = graph.vertex_count();
        let cap = cap.min(m);
        let mut best = vec![0u64; cap + 1];
        let mut witness = vec![0u64; cap + 1];
        for c in 0..=cap {
            if c > 0 && best[c - 1] == INF {
                best[c] = INF;
                witness[c] = witness[c - 1];
                continue;
            }
            for mask in subsets(m, c) {
                let d = dist_avoiding(n, &edges, s, t, mask);
                if d > best[c] || c == 0 {
                    best[c] = d;
                    witness[c] = mask;
                    if d == INF {
                        break;
                    }
                }
            }
            if c > 0 && best[c - 1] > best[c] {
                best[c] = best[c - 1];
                witness[c] = witness[c - 1];
            }
        }
        Oracle { best, witness }
    }

    /// Budget used beyond the table is treated as the table's last entry,
    /// so build with a cap of at least the minimum cut.
    pub fn max_length(&self, k: usize) -> u64 {
        self.best[k.min(self.best.len() - 1)]
    }

    pub fn yes(&self, k: usize, ell: u64) -> bool {
        self.max_length(k) >= ell
    }

    pub fn min_cost(&self, ell: u64) -> Option<usize> {
        self.best.iter().position(|&d| d >= ell)
    }
}

/// All `m`-bit masks with exactly `c` bits set, in increasing order.
pub fn subsets(m: usize, c: usize) -> impl Iterator<Item = u64> {
    let limit = 1u64 << m;
    let mut next = if c > m { None } else { Some((1u64 << c) - 1) };
    std::iter::from_fn(move || {
        let cur = next?;
        if cur >= limit {
            return None;
        }
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack
            let low = cur & cur.wrapping_neg();
            let ripple = cur + low;
            Some((((ripple ^ cur) >> 2) / low) | ripple)
        };
        Some(cur)
    })
}

pub fn to_distance(d: u64) -> mve_core::Distance {
    if d == INF {
        mve_core::Distance::Infinite
    } else {
        mve_core::Distance::Finite(d)
    }
}

pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
}

fn connected_mask(n: usize, adj: &[u32]) -> bool {
    let mut seen = 1u32;
    let mut frontier = 1u32;
    while frontier != 0 {
        let mut next = 0;
        for v in 0..n {
            if frontier >> v & 1 == 1 {
                next |= adj[v];
            }
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen == (1u32 << n) - 1
}

fn adjacency(n: usize, mask: u64, pairs: &[(usize, usize)]) -> Vec<u32> {
    let mut adj = vec![0u32; n];
    for (i, &(a, b)) in pairs.iter().enumerate() {
        if mask >> i & 1 == 1 {
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
    }
    adj
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn rec(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(k + 1, p, out);
            p.swap(k, i);
        }
    }
    rec(0, &mut p, &mut out);
    out
}

/// Canonical form: the smallest relabelled edge mask over `perms`.
fn canonical(mask: u64, pairs: &[(usize, usize)], index: &[Vec<usize>], perms: &[Vec<usize>]) -> u64 {
    let mut best = u64::MAX;
    for p in perms {
        let mut image = 0u64;
        for (i, &(a, b)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                image |= 1 << index[p[a]][p[b]];
            }
        }
        best = best.min(image);
    }
    best
}

fn pair_index(n: usize) -> (Vec<(usize, usize)>, Vec<Vec<usize>>) {
    let pairs = pairs(n);
    let mut index = vec![vec![usize::MAX; n]; n];
    for (i, &(a, b)) in pairs.iter().enumerate() {
        index[a][b] = i;
        index[b][a] = i;
    }
    (pairs, index)
}

/// One representative per isomorphism class of graphs on `n` vertices,
/// as unit-length graphs. `n <= 6` enumerates directly; `n = 7` extends every
/// 6-vertex class by a new vertex and deduplicates.
pub fn graphs_up_to_iso(n: usize, connected_only: bool) -> Vec<Graph> {
    let (pairs, index) = pair_index(n);
    let perms = permutations(n);
    let mut reps = std::collections::BTreeSet::new();
    if n <= 6 {
        for mask in 0..1u64 << pairs.len() {
            if canonical(mask, &pairs, &index, &perms) == mask {
                reps.insert(mask);
            }
        }
    } else {
        let smaller = graphs_up_to_iso(n - 1, false);
        for g in smaller {
            let base: u64 = g.edges().iter().fold(0, |acc, e| acc | 1 << index[e.u][e.v]);
            for nb in 0..1u64 << (n - 1) {
                let mut mask = base;
                for v in 0..n - 1 {
                    if nb >> v & 1 == 1 {
                        mask |= 1 << index[v][n - 1];
                    }
                }
                reps.insert(canonical(mask, &pairs, &index, &perms));
            }
        }
    }
    reps.into_iter()
        .filter(|&mask| !connected_only || connected_mask(n, &adjacency(n, mask, &pairs)))
        .map(|mask| {
            let chosen = pairs.iter().enumerate().filter(|&(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p);
            Graph::unit(n, chosen).unwrap()
        })
        .collect()
}

/// Random connected graph: a random spanning tree plus extra edges up to
/// `m`, lengths uniform in `1..=max_len`.
pub fn random_connected(rng: &mut ChaCha8Rng, n: usize, m: usize, max_len: u64) -> Graph {
    let all = pairs(n);
    let m = m.clamp(n - 1, all.len());
    let mut chosen = std::collections::BTreeSet::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        chosen.insert((u, v));
    }
    while chosen.len() < m {
        chosen.insert(all[rng.gen_range(0..all.len())]);
    }
    let edges: Vec<(usize, usize, u64)> =
        chosen.into_iter().map(|(u, v)| (u, v, rng.gen_range(1..=max_len))).collect();
    Graph::new(n, edges).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Brute-force minimum vertex cover of a graph given by its edges.
pub fn vertex_cover(n: usize, edges: &[(usize, usize)]) -> usize {
    (0..=n)
        .find(|&c| subsets(n, c).any(|m| edges.iter().all(|&(u, v)| m >> u & 1 == 1 || m >> v & 1 == 1)))
        .unwrap()
}

/// Tripartite graphs with vertices `0..a` in part 0, the next `b` in part 1
/// and the last `c` in part 2; one representative per class under
/// part-preserving relabelling.
pub fn tripartite_up_to_iso(a: usize, b: usize, c: usize) -> Vec<(Vec<u8>, Vec<(usize, usize)>)> {
    let n = a + b + c;
    let part: Vec<u8> = (0..n).map(|v| if v < a { 0 } else if v < a + b { 1 } else { 2 }).collect();
    let cross: Vec<(usize, usize)> = pairs(n).into_iter().filter(|&(u, v)| part[u] != part[v]).collect();
    let mut index = vec![vec![usize::MAX; n]; n];
    for (i, &(u, v)) in cross.iter().enumerate() {
        index[u][v] = i;
        index[v][u] = i;
    }
    let (pa, pb, pc) = (permutations(a), permutations(b), permutations(c));
    let mut perms = Vec::new();
    for x in &pa {
        for y in &pb {
            for z in &pc {
                let p: Vec<usize> = x
                    .iter()
                    .copied()
                    .chain(y.iter().map(|&v| v + a))
                    .chain(z.iter().map(|&v| v + a + b))
                    .collect();
                perms.push(p);
            }
        }
    }
    let mut out = Vec::new();
    for mask in 0..1u64 << cross.len() {
        if canonical(mask, &cross, &index, &perms) == mask {
            let edges = cross.iter().enumerate().filter(|&(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            out.push((part.clone(), edges));
        }
    }
    out
}
