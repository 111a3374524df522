mod common;

use common::Oracle;
use mve_core::cli::{emit_instance, parse_instance, solve, Algorithm, SolveOptions, Variant};
use mve_core::exact::{min_cost, normalize_twins, search_tree_with, ExactAlgorithm, SearchTreeConfig};
use mve_core::generators::{gen_random, Family, RandomSpec};
use mve_core::graph::{build_sp_tree, twin_classes, Distance};
use mve_core::kernel::{kernelize, lift_solution, KernelStats};
use mve_core::poly::{sp_max_length, sp_min_cost};
use mve_core::{Instance, SearchControl, Solution};
use proptest::prelude::*;
use rand::Rng;

/// A random connected instance with at most `max_m` edges.
fn instance(max_m: usize, weighted: bool) -> impl Strategy<Value = Instance> {
    (any::<u64>(), 3usize..=8, 0usize..4, 1u64..10).prop_map(move |(seed, n, k, ell)| {
        let mut rng = common::rng(seed);
        let m = rng.gen_range(n - 1..=max_m.min(n * (n - 1) / 2));
        let g = common::random_connected(&mut rng, n, m, if weighted { 3 } else { 1 });
        let s = rng.gen_range(0..n);
        let t = (s + rng.gen_range(1..n)) % n;
        Instance::new(g, s, t, k, ell).unwrap()
    })
}

fn family_instance() -> impl Strategy<Value = Instance> {
    (any::<u64>(), 0usize..4, 6usize..30, 0usize..5, prop::option::of(2u64..5)).prop_map(
        |(seed, fam, n, f, max_length)| {
            let spec = RandomSpec { n, m: n, f, max_length, ..RandomSpec::new(Family::ALL[fam], seed) };
            gen_random(&spec).unwrap()
        },
    )
}

fn unlimited() -> SearchControl {
    SearchControl::unlimited()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn kernel_is_idempotent_and_bounded(inst in family_instance()) {
        let (kernel, _) = kernelize(&inst);
        prop_assert!(KernelStats::of(&inst, &kernel).within_bound());
        let (again, trace) = kernelize(&kernel);
        prop_assert_eq!(trace.events.len(), 0);
        prop_assert_eq!(again.graph.edges(), kernel.graph.edges());
    }

    #[test]
    fn kernel_preserves_every_budget(inst in instance(12, true)) {
        let (kernel, _) = kernelize(&inst);
        let m = inst.graph.edge_count();
        let (before, after) = (Oracle::new(&inst, m), Oracle::new(&kernel, m));
        for k in 0..=m {
            prop_assert_eq!(before.max_length(k), after.max_length(k), "k={}", k);
        }
    }

    #[test]
    fn lifting_keeps_cardinality_and_feasibility(inst in family_instance()) {
        let (kernel, trace) = kernelize(&inst);
        let out = search_tree_with(&kernel, SearchTreeConfig { pruning: true }, &mut unlimited()).unwrap();
        if let Some(sol) = out.solution {
            let lifted = lift_solution(&trace, &inst, &sol).unwrap();
            prop_assert_eq!(lifted.cardinality(), sol.cardinality());
            prop_assert!(lifted.verify(&inst).is_ok());
        }
    }

    #[test]
    fn search_tree_leaves_are_bounded(inst in instance(12, true)) {
        let out = search_tree_with(&inst, SearchTreeConfig::default(), &mut unlimited()).unwrap();
        let bound = inst.ell.saturating_sub(1).max(1).pow(inst.k as u32);
        prop_assert!(out.leaves <= bound, "{} leaves, bound {}", out.leaves, bound);
    }

    #[test]
    fn min_cost_is_minimal(inst in instance(11, true)) {
        let oracle = Oracle::new(&inst, inst.graph.edge_count());
        let sol = min_cost(&inst.graph, inst.s, inst.t, inst.ell, ExactAlgorithm::SearchTree, &mut unlimited()).unwrap();
        prop_assert_eq!(Some(sol.cardinality()), oracle.min_cost(inst.ell));
        prop_assert!(sol.achieved_distance.at_least(inst.ell));
    }

    #[test]
    fn twin_normalization(inst in instance(12, false), pick in any::<prop::sample::Index>()) {
        let g = &inst.graph;
        let oracle = Oracle::new(&inst, g.edge_count());
        let budget = inst.k.min(oracle.best.len() - 1);
        let deleted: Vec<usize> = (0..g.edge_count()).filter(|&e| oracle.witness[budget] >> e & 1 == 1).collect();
        let sol = Solution::new(g, inst.s, inst.t, deleted);
        let classes = twin_classes(g, &[inst.s, inst.t]);
        if !classes.is_empty() {
            let class = &classes[pick.index(classes.len())];
            let norm = normalize_twins(g, inst.s, inst.t, class, &sol).unwrap();
            prop_assert!(norm.cardinality() <= sol.cardinality());
            prop_assert!(norm.achieved_distance >= sol.achieved_distance);
            let members = &class.members;
            let removed = g.edge_mask(&norm.deleted_edges);
            for &u in members {
                for &v in members {
                    if let Some(e) = g.edge_between(u, v) {
                        prop_assert!(!removed[e], "edge inside the class deleted");
                    }
                }
                for &x in &class.external_neighborhood {
                    let lost = |w: usize| removed[g.edge_between(w, x).unwrap()];
                    prop_assert_eq!(lost(u), lost(members[0]));
                }
            }
        }
    }

    #[test]
    fn sp_tables_are_dual(seed in any::<u64>(), n in 4usize..20, max_length in prop::option::of(2u64..5)) {
        let inst = gen_random(&RandomSpec { n, max_length, ..RandomSpec::new(Family::SeriesParallel, seed) }).unwrap();
        let g = &inst.graph;
        let tree = build_sp_tree(g, inst.s, inst.t).unwrap();
        let cut = mve_core::graph::min_st_cut_size(g, inst.s, inst.t);
        let lengths: Vec<Distance> = (0..=cut).map(|k| sp_max_length(g, &tree, k).unwrap().achieved_distance).collect();
        prop_assert_eq!(lengths[cut], Distance::Infinite);
        for ell in 1..=g.edges().iter().map(|e| e.length).sum::<u64>() + 1 {
            let k_star = sp_min_cost(g, &tree, ell).unwrap().k_star;
            let smallest = lengths.iter().position(|d| d.at_least(ell));
            prop_assert_eq!(Some(k_star), smallest, "ell={}", ell);
        }
    }

    #[test]
    fn emit_then_parse_round_trips(inst in instance(20, true)) {
        let text = emit_instance(&inst);
        prop_assert_eq!(parse_instance(&text).unwrap(), inst);
    }

    #[test]
    fn kernelizing_does_not_change_answers(inst in family_instance(), v in 0usize..3) {
        let variant = [Variant::Decision, Variant::MinCost, Variant::MaxLength][v];
        let opts = |kernelize| SolveOptions { variant, kernelize, record_timing: false, ..SolveOptions::default() };
        let on = solve(&inst, &opts(true)).unwrap();
        let off = solve(&inst, &opts(false)).unwrap();
        prop_assert_eq!(&on.answer, &off.answer, "{:?}\n{:?}", on, off);
        // max-length solutions only promise the distance, not a smallest set
        if variant != Variant::MaxLength {
            prop_assert_eq!(on.solution_edges.len(), off.solution_edges.len(), "{:?}\n{:?}", on, off);
        }
    }

    #[test]
    fn reported_solutions_verify(inst in family_instance(), alg in 0usize..4) {
        let algorithm = [Algorithm::Auto, Algorithm::SearchTree, Algorithm::Xp, Algorithm::Greedy][alg];
        let variant = if algorithm == Algorithm::Greedy { Variant::MinCost } else { Variant::Decision };
        let opts = SolveOptions { algorithm, variant, record_timing: false, ..SolveOptions::default() };
        let report = solve(&inst, &opts).unwrap();
        if let Some(claimed) = report.distance_after {
            let edges: Vec<usize> = report.solution_edges.iter().map(|&e| e - 1).collect();
            let sol = Solution::new(&inst.graph, inst.s, inst.t, edges);
            prop_assert_eq!(sol.achieved_distance, claimed);
            let checked = Instance::new(inst.graph.clone(), inst.s, inst.t, report.k.unwrap(), report.ell.unwrap()).unwrap();
            prop_assert!(sol.verify(&checked).is_ok());
        }
    }
}
