use crate::control::SearchControl;
use crate::error::Result;
use crate::graph::{st_distance, EdgeId};
use crate::instance::{Instance, Solution};

use super::trivial_answer;

/// Tries every edge set of size at most `k`, smallest size first and
/// lexicographically within a size; returns the first that reaches `ell`.
pub fn brute_force(instance: &Instance) -> Option<Solution> {
    brute_force_with(instance, &mut SearchControl::unlimited()).expect("no deadline set")
}

pub fn brute_force_with(instance: &Instance, control: &mut SearchControl) -> Result<Option<Solution>> {
    if let Some(sol) = trivial_answer(instance) {
        return Ok(Some(sol));
    }
    enumerate(instance, control)
}

fn enumerate(instance: &Instance, control: &mut SearchControl) -> Result<Option<Solution>> {
    let m = instance.graph.edge_count();
    let mut removed = vec![false; m];
    for size in 1..=instance.k.min(m) {
        let mut combo: Vec<EdgeId> = (0..size).collect();
        loop {
            control.tick()?;
            for &e in &combo {
                removed[e] = true;
            }
            let d = st_distance(&instance.graph, instance.s, instance.t, &removed);
            for &e in &combo {
                removed[e] = false;
            }
            if d.at_least(instance.ell) {
                return Ok(Some(instance.evaluate(combo)));
            }
            if !next_combination(&mut combo, m) {
                break;
            }
        }
    }
    Ok(None)
}

/// Advances to the lexicographically next `combo.len()`-subset of `0..m`.
fn next_combination(combo: &mut [usize], m: usize) -> bool {
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

/// If the budget covers every edge at `s`, deletes all of them; otherwise
/// `k < deg(s) <= Δ` and the subset enumeration runs in `O(m^(Δ-1))` rounds.
pub fn xp_by_max_degree(instance: &Instance) -> Option<Solution> {
    xp_by_max_degree_with(instance, &mut SearchControl::unlimited()).expect("no deadline set")
}

pub fn xp_by_max_degree_with(
    instance: &Instance,
    control: &mut SearchControl,
) -> Result<Option<Solution>> {
    if instance.already_feasible() {
        return Ok(Some(Solution::empty(instance)));
    }
    let g = &instance.graph;
    if instance.k >= g.degree(instance.s) {
        let star: Vec<EdgeId> = g.neighbors(instance.s).iter().map(|&(_, e)| e).collect();
        return Ok(Some(instance.evaluate(star)));
    }
    brute_force_with(instance, control)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Distance, Graph};

    fn inst(n: usize, pairs: &[(usize, usize)], s: usize, t: usize, k: usize, ell: u64) -> Instance {
        Instance::new(Graph::unit(n, pairs.iter().copied()).unwrap(), s, t, k, ell).unwrap()
    }

    #[test]
    fn combinations_in_lex_order() {
        let mut c = vec![0, 1];
        let mut all = vec![c.clone()];
        while next_combination(&mut c, 4) {
            all.push(c.clone());
        }
        assert_eq!(all, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
    }

    #[test]
    fn brute_force_examples() {
        let single = inst(2, &[(0, 1)], 0, 1, 1, 2);
        let sol = brute_force(&single).unwrap();
        assert_eq!((sol.deleted_edges, sol.achieved_distance), (vec![0], Distance::Infinite));

        let c4 = inst(4, &[(0, 1), (1, 2), (2, 3), (3, 0)], 0, 2, 1, 3);
        assert_eq!(brute_force(&c4), None);

        let diamond = inst(4, &[(0, 1), (1, 3), (0, 2), (2, 3)], 0, 3, 1, 3);
        assert_eq!(brute_force(&diamond), None);
        let easy = diamond.with_target(2);
        assert_eq!(brute_force(&easy).unwrap().cardinality(), 0);
    }

    #[test]
    fn xp_deletes_the_star_at_s() {
        // star with centre s=0 and t=1 among the leaves
        let star = inst(5, &[(0, 1), (0, 2), (0, 3), (0, 4)], 0, 1, 4, 9);
        let sol = xp_by_max_degree(&star).unwrap();
        assert_eq!(sol.deleted_edges, vec![0, 1, 2, 3]);

        let k4 = inst(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], 0, 3, 3, 4);
        assert_eq!(xp_by_max_degree(&k4).unwrap().deleted_edges, vec![0, 1, 2]);

        let k4_small = k4.with_budget(2).with_target(3);
        assert_eq!(xp_by_max_degree(&k4_small), brute_force(&k4_small));
    }
}
