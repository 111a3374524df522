use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{connected_components, Distance, Graph};
use crate::instance::Instance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    ErdosRenyi,
    SeriesParallel,
    ClusterPlusX,
    TreePlusFEdges,
}

impl Family {
    pub const ALL: [Family; 4] =
        [Family::ErdosRenyi, Family::SeriesParallel, Family::ClusterPlusX, Family::TreePlusFEdges];

    pub fn name(self) -> &'static str {
        match self {
            Family::ErdosRenyi => "erdos-renyi",
            Family::SeriesParallel => "series-parallel",
            Family::ClusterPlusX => "cluster-plus-x",
            Family::TreePlusFEdges => "tree-plus-f-edges",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown family {s:?}")))
    }
}

/// Parameters for [`gen_random`]. Fields a family does not use are ignored:
///
/// * erdos-renyi: `n` vertices, edge probability `p`;
/// * series-parallel: at least `m` edges;
/// * cluster-plus-x: `n` clique vertices split into `cliques` cliques, plus
///   `x` extra vertices joined to the rest with probability `p`;
/// * tree-plus-f-edges: random tree on `n` vertices plus `f` extra edges.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomSpec {
    pub family: Family,
    pub n: usize,
    pub m: usize,
    pub p: f64,
    pub x: usize,
    pub cliques: usize,
    pub f: usize,
    /// Edge lengths drawn uniformly from `1..=max_length`; unit by default.
    pub max_length: Option<u64>,
    /// Defaults to 2.
    pub k: Option<usize>,
    /// Defaults to `dist(s, t) + 2`.
    pub ell: Option<u64>,
    pub seed: u64,
}

impl RandomSpec {
    pub fn new(family: Family, seed: u64) -> Self {
        RandomSpec {
            family,
            n: 10,
            m: 12,
            p: 0.3,
            x: 2,
            cliques: 3,
            f: 3,
            max_length: None,
            k: None,
            ell: None,
            seed,
        }
    }
}

/// Draws a seeded random instance. The same spec always yields the same
/// instance.
pub fn gen_random(spec: &RandomSpec) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let (n, pairs, terminals) = match spec.family {
        Family::ErdosRenyi => erdos_renyi(spec, &mut rng)?,
        Family::SeriesParallel => series_parallel(spec, &mut rng)?,
        Family::ClusterPlusX => cluster_plus_x(spec, &mut rng)?,
        Family::TreePlusFEdges => tree_plus_f(spec, &mut rng)?,
    };
    let (s, t) = match terminals {
        Some(st) => st,
        None => pick_terminals(n, &pairs, &mut rng)?,
    };
    let edges: Vec<(usize, usize, u64)> = match spec.max_length {
        None => pairs.into_iter().map(|(u, v)| (u, v, 1)).collect(),
        Some(0) => return Err(Error::InvalidInput("max_length must be positive".into())),
        Some(top) => pairs.into_iter().map(|(u, v)| (u, v, rng.gen_range(1..=top))).collect(),
    };
    let graph = Graph::new(n, edges)?;
    let mut instance = Instance::new(graph, s, t, spec.k.unwrap_or(2), 1)?;
    instance.ell = match (spec.ell, instance.distance()) {
        (Some(ell), _) => ell,
        (None, Distance::Finite(d)) => d + 2,
        (None, Distance::Infinite) => unreachable!("terminals share a component"),
    };
    if instance.ell == 0 {
        return Err(Error::InvalidInput("ell must be positive".into()));
    }
    Ok(instance)
}

type Drawn = (usize, Vec<(usize, usize)>, Option<(usize, usize)>);

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("probability {p} outside [0, 1]")))
    }
}

fn erdos_renyi(spec: &RandomSpec, rng: &mut ChaCha8Rng) -> Result<Drawn> {
    check_probability(spec.p)?;
    if spec.n < 2 {
        return Err(Error::InvalidInput("erdos-renyi needs n >= 2".into()));
    }
    let mut pairs = Vec::new();
    for a in 0..spec.n {
        for b in a + 1..spec.n {
            if rng.gen_bool(spec.p) {
                pairs.push((a, b));
            }
        }
    }
    if pairs.is_empty() {
        let a = rng.gen_range(0..spec.n - 1);
        pairs.push((a, rng.gen_range(a + 1..spec.n)));
    }
    Ok((spec.n, pairs, None))
}

/// Grows from a single `s`-`t` edge by subdividing an edge or adding a
/// parallel two-edge path, so the result stays two-terminal series-parallel.
fn series_parallel(spec: &RandomSpec, rng: &mut ChaCha8Rng) -> Result<Drawn> {
    if spec.m == 0 {
        return Err(Error::InvalidInput("series-parallel needs m >= 1".into()));
    }
    let mut n = 2;
    let mut pairs = vec![(0, 1)];
    while pairs.len() < spec.m {
        let i = rng.gen_range(0..pairs.len());
        let (u, v) = pairs[i];
        let w = n;
        n += 1;
        if rng.gen_bool(0.5) {
            pairs[i] = (u, w);
            pairs.push((w, v));
        } else {
            pairs.push((u, w));
            pairs.push((w, v));
        }
    }
    Ok((n, pairs, Some((0, 1))))
}

fn cluster_plus_x(spec: &RandomSpec, rng: &mut ChaCha8Rng) -> Result<Drawn> {
    check_probability(spec.p)?;
    if spec.cliques == 0 || spec.n < spec.cliques {
        return Err(Error::InvalidInput("need at least one vertex per clique".into()));
    }
    let mut label: Vec<usize> = (0..spec.n).map(|v| v % spec.cliques).collect();
    label.shuffle(rng);
    let mut pairs = Vec::new();
    for a in 0..spec.n {
        for b in a + 1..spec.n {
            if label[a] == label[b] {
                pairs.push((a, b));
            }
        }
    }
    let total = spec.n + spec.x;
    for a in spec.n..total {
        for b in 0..a {
            if rng.gen_bool(spec.p) {
                pairs.push((b, a));
            }
        }
    }
    if total < 2 || pairs.is_empty() {
        return Err(Error::InvalidInput("cluster instance has no edge".into()));
    }
    Ok((total, pairs, None))
}

fn tree_plus_f(spec: &RandomSpec, rng: &mut ChaCha8Rng) -> Result<Drawn> {
    let n = spec.n;
    if n < 2 {
        return Err(Error::InvalidInput("tree needs n >= 2".into()));
    }
    let free = n * (n - 1) / 2 - (n - 1);
    if spec.f > free {
        return Err(Error::InvalidInput(format!("only {free} non-tree pairs available, f = {}", spec.f)));
    }
    let mut present = BTreeSet::new();
    let mut pairs = Vec::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        present.insert((j, i));
        pairs.push((j, i));
    }
    while pairs.len() < n - 1 + spec.f {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        let pair = (a.min(b), a.max(b));
        if a != b && present.insert(pair) {
            pairs.push(pair);
        }
    }
    Ok((n, pairs, None))
}

/// Uniform pair from a uniformly chosen component with at least two vertices.
fn pick_terminals(n: usize, pairs: &[(usize, usize)], rng: &mut ChaCha8Rng) -> Result<(usize, usize)> {
    let probe = Graph::unit(n, pairs.iter().copied())?;
    let comps: Vec<Vec<usize>> =
        connected_components(&probe).into_iter().filter(|c| c.len() >= 2).collect();
    let comp = comps.choose(rng).ok_or_else(|| Error::InvalidInput("graph has no edge".into()))?;
    let picked: Vec<usize> = comp.choose_multiple(rng, 2).copied().collect();
    Ok((picked[0], picked[1]))
}
