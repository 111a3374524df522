//! Unit-length solver parameterized by a cluster vertex deletion set `X`.
//!
//! Inside one clique, vertices with the same neighbours in `X` are twins, so
//! deletions are chosen per *unit*: all edges between two twin classes, or
//! all edges between one class and one vertex of `X`. The search
//!
//! 1. fixes the deletions inside `G[X]`,
//! 2. guesses for every pair of `X` not adjacent afterwards the shortest
//!    length of a connection through one clique (`2..=2^x + 1`, or "at least
//!    `ell`", which covers no connection at all),
//! 3. buys, per clique without a terminal, the cheapest unit set whose
//!    through-clique distances respect the guesses,
//! 4. forgets those cliques, replacing them by undeletable guess edges,
//! 5. finishes exhaustively on `X` plus the terminal cliques.

use std::collections::VecDeque;

use crate::control::SearchControl;
use crate::error::{Error, Result};
use crate::graph::{shortest_path_avoiding, ClusterDecomposition, Distance, EdgeId, Graph};
use crate::instance::{Instance, Solution};

use super::trivial_answer;

pub fn cvd_fpt(instance: &Instance, decomposition: &ClusterDecomposition) -> Result<Option<Solution>> {
    cvd_fpt_with(instance, decomposition, &mut SearchControl::unlimited())
}

pub fn cvd_fpt_with(
    instance: &Instance,
    decomposition: &ClusterDecomposition,
    control: &mut SearchControl,
) -> Result<Option<Solution>> {
    if !instance.unit_length() {
        return Err(Error::Precondition("cluster algorithm needs unit lengths".into()));
    }
    decomposition.validate(&instance.graph)?;
    if let Some(sol) = trivial_answer(instance) {
        return Ok(Some(sol));
    }
    Solver::new(instance, decomposition).run(control)
}

/// Edges deleted together.
#[derive(Debug, Clone)]
struct Unit {
    edges: Vec<EdgeId>,
}

#[derive(Debug)]
struct CliqueUnits {
    /// Twin classes; a terminal is always a class of its own.
    classes: Vec<Vec<usize>>,
    units: Vec<Unit>,
    /// Per unit: `(class, class)` or `(class, index into X)`.
    kinds: Vec<UnitKind>,
}

#[derive(Debug, Clone, Copy)]
enum UnitKind {
    Classes(usize, usize),
    ToX(usize, usize),
}

/// One affordable deletion pattern of a non-terminal clique with the
/// distances it leaves between the pairs of `X` (through the clique only).
#[derive(Debug)]
struct Pattern {
    cost: usize,
    units: Vec<usize>,
    through: Vec<Distance>,
}

struct Solver<'a> {
    inst: &'a Instance,
    x: Vec<usize>,
    x_index: Vec<Option<usize>>,
    pairs: Vec<(usize, usize)>,
    x_edges: Vec<EdgeId>,
    terminal_cliques: Vec<CliqueUnits>,
    nonterminal_cliques: Vec<CliqueUnits>,
    /// Per non-terminal clique, patterns sorted by cost.
    patterns: Vec<Vec<Pattern>>,
    guess_cap: u64,
}

impl<'a> Solver<'a> {
    fn new(inst: &'a Instance, dec: &ClusterDecomposition) -> Self {
        let g = &inst.graph;
        let x = dec.deletion_set.clone();
        let mut x_index = vec![None; g.vertex_count()];
        for (i, &v) in x.iter().enumerate() {
            x_index[v] = Some(i);
        }
        let pairs: Vec<(usize, usize)> =
            (0..x.len()).flat_map(|a| (a + 1..x.len()).map(move |b| (a, b))).collect();
        let x_edges: Vec<EdgeId> = (0..g.edge_count())
            .filter(|&e| x_index[g.edge(e).u].is_some() && x_index[g.edge(e).v].is_some())
            .collect();
        // Paths through one clique visit each class at most once.
        let guess_cap = if x.len() >= 62 { u64::MAX } else { (1u64 << x.len()) + 1 };
        let mut solver = Solver {
            inst,
            x,
            x_index,
            pairs,
            x_edges,
            terminal_cliques: Vec::new(),
            nonterminal_cliques: Vec::new(),
            patterns: Vec::new(),
            guess_cap,
        };
        for clique in &dec.cliques {
            let units = solver.clique_units(clique);
            if clique.contains(&inst.s) || clique.contains(&inst.t) {
                solver.terminal_cliques.push(units);
            } else {
                let pats = solver.enumerate_patterns(&units);
                solver.patterns.push(pats);
                solver.nonterminal_cliques.push(units);
            }
        }
        solver
    }

    fn clique_units(&self, clique: &[usize]) -> CliqueUnits {
        let g = &self.inst.graph;
        let x_nbrs = |v: usize| -> Vec<usize> {
            g.neighbor_ids(v).filter_map(|w| self.x_index[w]).collect()
        };
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut keys: Vec<Option<Vec<usize>>> = Vec::new();
        for &v in clique {
            let key = (v != self.inst.s && v != self.inst.t).then(|| x_nbrs(v));
            match keys.iter().position(|k| k.is_some() && *k == key) {
                Some(i) => classes[i].push(v),
                None => {
                    classes.push(vec![v]);
                    keys.push(key);
                }
            }
        }
        let mut units = Vec::new();
        let mut kinds = Vec::new();
        for i in 0..classes.len() {
            for j in i + 1..classes.len() {
                let edges = classes[i]
                    .iter()
                    .flat_map(|&a| classes[j].iter().map(move |&b| (a, b)))
                    .map(|(a, b)| g.edge_between(a, b).expect("clique edge"))
                    .collect();
                units.push(Unit { edges });
                kinds.push(UnitKind::Classes(i, j));
            }
        }
        for (i, class) in classes.iter().enumerate() {
            for xi in x_nbrs(class[0]) {
                let xv = self.x[xi];
                let edges = class.iter().map(|&a| g.edge_between(a, xv).expect("twin edge")).collect();
                units.push(Unit { edges });
                kinds.push(UnitKind::ToX(i, xi));
            }
        }
        CliqueUnits { classes, units, kinds }
    }

    /// Distances between pairs of `X` through the clique only, with the
    /// given units deleted. Twin classes stay intact, so one representative
    /// per class suffices.
    fn through_distances(&self, cu: &CliqueUnits, deleted: &[bool]) -> Vec<Distance> {
        let nx = self.x.len();
        let p = cu.classes.len();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nx + p];
        for (u, kind) in cu.kinds.iter().enumerate() {
            if deleted[u] {
                continue;
            }
            let (a, b) = match *kind {
                UnitKind::Classes(i, j) => (nx + i, nx + j),
                UnitKind::ToX(i, xi) => (nx + i, xi),
            };
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut from = vec![vec![Distance::Infinite; nx]; nx];
        for (src, row) in from.iter_mut().enumerate() {
            let mut dist = vec![u64::MAX; nx + p];
            dist[src] = 0;
            let mut queue = VecDeque::from([src]);
            while let Some(v) = queue.pop_front() {
                // X vertices other than the source end a through-path.
                if v < nx && v != src {
                    continue;
                }
                for &w in &adj[v] {
                    if dist[w] == u64::MAX {
                        dist[w] = dist[v] + 1;
                        queue.push_back(w);
                    }
                }
            }
            for (dst, slot) in row.iter_mut().enumerate() {
                if dst != src && dist[dst] != u64::MAX {
                    *slot = Distance::Finite(dist[dst]);
                }
            }
        }
        self.pairs.iter().map(|&(a, b)| from[a][b]).collect()
    }

    fn enumerate_patterns(&self, cu: &CliqueUnits) -> Vec<Pattern> {
        let mut out = Vec::new();
        let mut deleted = vec![false; cu.units.len()];
        let mut chosen = Vec::new();
        self.patterns_rec(cu, 0, 0, &mut deleted, &mut chosen, &mut out);
        out.sort_by_key(|p| p.cost);
        out
    }

    fn patterns_rec(
        &self,
        cu: &CliqueUnits,
        next: usize,
        cost: usize,
        deleted: &mut Vec<bool>,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Pattern>,
    ) {
        if next == cu.units.len() {
            out.push(Pattern {
                cost,
                units: chosen.clone(),
                through: self.through_distances(cu, deleted),
            });
            return;
        }
        self.patterns_rec(cu, next + 1, cost, deleted, chosen, out);
        let c = cost + cu.units[next].edges.len();
        if c <= self.inst.k {
            deleted[next] = true;
            chosen.push(next);
            self.patterns_rec(cu, next + 1, c, deleted, chosen, out);
            chosen.pop();
            deleted[next] = false;
        }
    }

    fn run(&self, control: &mut SearchControl) -> Result<Option<Solution>> {
        let k = self.inst.k;
        for size in 0..=k.min(self.x_edges.len()) {
            let mut combo: Vec<usize> = (0..size).collect();
            loop {
                let s_x: Vec<EdgeId> = combo.iter().map(|&i| self.x_edges[i]).collect();
                if let Some(sol) = self.with_x_deletions(&s_x, k - size, control)? {
                    return Ok(Some(sol));
                }
                if !advance(&mut combo, self.x_edges.len()) {
                    break;
                }
            }
        }
        Ok(None)
    }

    fn with_x_deletions(
        &self,
        s_x: &[EdgeId],
        budget: usize,
        control: &mut SearchControl,
    ) -> Result<Option<Solution>> {
        let g = &self.inst.graph;
        let ell = self.inst.ell;
        // Pairs of X that are not adjacent once S_X is gone get a guess.
        let guessed: Vec<usize> = (0..self.pairs.len())
            .filter(|&p| {
                let (a, b) = self.pairs[p];
                match g.edge_between(self.x[a], self.x[b]) {
                    Some(e) => s_x.contains(&e),
                    None => true,
                }
            })
            .collect();
        // Deletions only lengthen through-clique paths, so values below the
        // undeleted distance are impossible.
        let candidates: Vec<Vec<u64>> = guessed
            .iter()
            .map(|&p| {
                let base = self
                    .patterns
                    .iter()
                    .map(|pats| pats[0].through[p])
                    .min()
                    .unwrap_or(Distance::Infinite);
                let mut vals: Vec<u64> = match base {
                    Distance::Finite(lo) => {
                        (lo.max(2)..=self.guess_cap.min(ell.saturating_sub(1))).collect()
                    }
                    Distance::Infinite => Vec::new(),
                };
                vals.push(ell);
                vals
            })
            .collect();
        let mut choice = vec![0usize; guessed.len()];
        loop {
            control.tick()?;
            let guess: Vec<u64> = choice.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
            if let Some(sol) = self.with_guess(s_x, &guessed, &guess, budget, control)? {
                return Ok(Some(sol));
            }
            // odometer over the candidate lists
            let mut pos = 0;
            loop {
                if pos == choice.len() {
                    return Ok(None);
                }
                choice[pos] += 1;
                if choice[pos] < candidates[pos].len() {
                    break;
                }
                choice[pos] = 0;
                pos += 1;
            }
        }
    }

    fn with_guess(
        &self,
        s_x: &[EdgeId],
        guessed: &[usize],
        guess: &[u64],
        budget: usize,
        control: &mut SearchControl,
    ) -> Result<Option<Solution>> {
        let mut spent = 0;
        let mut chosen: Vec<&Pattern> = Vec::with_capacity(self.patterns.len());
        for pats in &self.patterns {
            let ok = pats.iter().find(|pat| {
                guessed.iter().zip(guess).all(|(&p, &gv)| pat.through[p].at_least(gv))
            });
            let Some(pat) = ok else {
                return Ok(None);
            };
            spent += pat.cost;
            if spent > budget {
                return Ok(None);
            }
            chosen.push(pat);
        }
        let Some(terminal_units) = self.finish(s_x, guessed, guess, budget - spent, control)? else {
            return Ok(None);
        };
        let mut deleted: Vec<EdgeId> = s_x.to_vec();
        for (ci, pat) in chosen.iter().enumerate() {
            for &u in &pat.units {
                deleted.extend(&self.nonterminal_cliques[ci].units[u].edges);
            }
        }
        deleted.extend(terminal_units);
        let sol = self.inst.evaluate(deleted);
        debug_assert!(sol.achieved_distance.at_least(self.inst.ell));
        debug_assert!(sol.cardinality() <= self.inst.k);
        Ok(Some(sol))
    }

    /// Step 5: search over units of the terminal cliques on the graph made of
    /// `G[X] - S_X`, the guess edges and the terminal cliques. Returns the
    /// original edges to delete.
    fn finish(
        &self,
        s_x: &[EdgeId],
        guessed: &[usize],
        guess: &[u64],
        budget: usize,
        control: &mut SearchControl,
    ) -> Result<Option<Vec<EdgeId>>> {
        let g = &self.inst.graph;
        let ell = self.inst.ell;
        let mut local = vec![usize::MAX; g.vertex_count()];
        let mut count = 0;
        let mut touch = |v: usize, local: &mut Vec<usize>| {
            if local[v] == usize::MAX {
                local[v] = count;
                count += 1;
            }
            local[v]
        };
        for &v in &self.x {
            touch(v, &mut local);
        }
        for cu in &self.terminal_cliques {
            for class in &cu.classes {
                for &v in class {
                    touch(v, &mut local);
                }
            }
        }
        let mut edges: Vec<(usize, usize, u64)> = Vec::new();
        // Model edge -> (terminal clique, unit), None for undeletable edges.
        let mut owner: Vec<Option<(usize, usize)>> = Vec::new();
        for &e in &self.x_edges {
            if !s_x.contains(&e) {
                let edge = g.edge(e);
                edges.push((local[edge.u], local[edge.v], 1));
                owner.push(None);
            }
        }
        for (&p, &gv) in guessed.iter().zip(guess) {
            if gv < ell {
                let (a, b) = self.pairs[p];
                edges.push((local[self.x[a]], local[self.x[b]], gv));
                owner.push(None);
            }
        }
        for (ci, cu) in self.terminal_cliques.iter().enumerate() {
            for (ui, unit) in cu.units.iter().enumerate() {
                for &e in &unit.edges {
                    let edge = g.edge(e);
                    edges.push((local[edge.u], local[edge.v], 1));
                    owner.push(Some((ci, ui)));
                }
            }
            // edges inside a twin class are never deleted
            for class in &cu.classes {
                for (i, &a) in class.iter().enumerate() {
                    for &b in &class[i + 1..] {
                        edges.push((local[a], local[b], 1));
                        owner.push(None);
                    }
                }
            }
        }
        let model = Graph::new(count, edges).expect("model graph is simple");
        let mut search = Finish {
            model: &model,
            owner: &owner,
            cliques: &self.terminal_cliques,
            s: local[self.inst.s],
            t: local[self.inst.t],
            ell,
            removed: vec![false; model.edge_count()],
            chosen: Vec::new(),
        };
        if !search.branch(budget, control)? {
            return Ok(None);
        }
        Ok(Some(
            search
                .chosen
                .iter()
                .flat_map(|&(ci, ui)| self.terminal_cliques[ci].units[ui].edges.iter().copied())
                .collect(),
        ))
    }
}

struct Finish<'m> {
    model: &'m Graph,
    owner: &'m [Option<(usize, usize)>],
    cliques: &'m [CliqueUnits],
    s: usize,
    t: usize,
    ell: u64,
    removed: Vec<bool>,
    chosen: Vec<(usize, usize)>,
}

impl Finish<'_> {
    fn set(&mut self, unit: (usize, usize), value: bool) {
        for (e, o) in self.owner.iter().enumerate() {
            if *o == Some(unit) {
                self.removed[e] = value;
            }
        }
    }

    /// Every solution deletes a unit on each short path, so branching over
    /// the units met by one shortest path is exhaustive.
    fn branch(&mut self, budget: usize, control: &mut SearchControl) -> Result<bool> {
        control.tick()?;
        let path = match shortest_path_avoiding(self.model, self.s, self.t, Some(&self.removed)) {
            Some(p) if p.length < self.ell => p,
            _ => return Ok(true),
        };
        let mut units: Vec<(usize, usize)> = Vec::new();
        for &e in &path.edges {
            if let Some(u) = self.owner[e] {
                if !units.contains(&u) {
                    units.push(u);
                }
            }
        }
        for u in units {
            let cost = self.cliques[u.0].units[u.1].edges.len();
            if cost > budget {
                continue;
            }
            self.set(u, true);
            self.chosen.push(u);
            if self.branch(budget - cost, control)? {
                return Ok(true);
            }
            self.chosen.pop();
            self.set(u, false);
        }
        Ok(false)
    }
}

fn advance(combo: &mut [usize], m: usize) -> bool {
    let r = combo.len();
    let Some(i) = (0..r).rev().find(|&i| combo[i] < m - r + i) else {
        return false;
    };
    combo[i] += 1;
    for j in i + 1..r {
        combo[j] = combo[j - 1] + 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::brute_force;
    use crate::graph::cluster_vertex_deletion_set;

    fn check_all(g: &Graph) {
        let dec = cluster_vertex_deletion_set(g);
        for s in 0..g.vertex_count() {
            for t in s + 1..g.vertex_count() {
                for k in 0..3 {
                    for ell in 1..=g.vertex_count() as u64 {
                        let inst = Instance::new(g.clone(), s, t, k, ell).unwrap();
                        let want = brute_force(&inst).is_some();
                        let got = cvd_fpt(&inst, &dec).unwrap();
                        assert_eq!(got.is_some(), want, "s={s} t={t} k={k} ell={ell}");
                        if let Some(sol) = got {
                            sol.verify(&inst).unwrap();
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cluster_graph_with_separated_terminals() {
        let g = Graph::unit(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let inst = Instance::new(g.clone(), 0, 3, 0, 100).unwrap();
        let sol = cvd_fpt(&inst, &cluster_vertex_deletion_set(&g)).unwrap().unwrap();
        assert!(sol.deleted_edges.is_empty());
    }

    #[test]
    fn two_triangles_through_a_hub() {
        // X = {0}; triangles {1,2,3} and {4,5,6} both touch vertex 0
        let g = Graph::unit(
            7,
            [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6), (0, 1), (0, 2), (0, 4), (0, 5)],
        )
        .unwrap();
        let dec = ClusterDecomposition::from_deletion_set(&g, &[0]).unwrap();
        let inst = Instance::new(g.clone(), 3, 6, 2, 5).unwrap();
        assert_eq!(cvd_fpt(&inst, &dec).unwrap().is_some(), brute_force(&inst).is_some());
        check_all(&g);
    }

    #[test]
    fn matches_brute_force_on_small_graphs() {
        let c5 = Graph::unit(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        check_all(&c5);
        // two K3 sharing nothing, linked by a path through X
        let g = Graph::unit(7, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 6), (1, 3)])
            .unwrap();
        check_all(&g);
        // K2,3 (x = 2)
        let k23 = Graph::unit(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        check_all(&k23);
    }

    #[test]
    fn weighted_input_is_rejected() {
        let g = Graph::new(2, [(0, 1, 2)]).unwrap();
        let inst = Instance::new(g.clone(), 0, 1, 0, 5).unwrap();
        let dec = cluster_vertex_deletion_set(&g);
        assert!(matches!(cvd_fpt(&inst, &dec), Err(Error::Precondition(_))));
    }
}
