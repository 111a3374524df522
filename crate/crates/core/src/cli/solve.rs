use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::approx::{greedy_ell_approx, param_approx_max_length, Certificate};
use crate::control::SearchControl;
use crate::error::{Error, Result};
use crate::exact::{decide, ExactAlgorithm};
use crate::graph::{build_sp_tree, diameter, min_st_cut_size, Distance};
use crate::instance::{Instance, Solution};
use crate::kernel::{kernelize, lift_solution, KernelStats};
use crate::poly::{solve_complete_unit, solve_diameter2, sp_max_length, sp_min_cost};

use super::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Auto,
    BruteForce,
    SearchTree,
    Xp,
    SpDp,
    Cvd,
    Diam2,
    Complete,
    Greedy,
    ParamApprox,
}

impl Algorithm {
    pub const ALL: [Algorithm; 10] = [
        Algorithm::Auto,
        Algorithm::BruteForce,
        Algorithm::SearchTree,
        Algorithm::Xp,
        Algorithm::SpDp,
        Algorithm::Cvd,
        Algorithm::Diam2,
        Algorithm::Complete,
        Algorithm::Greedy,
        Algorithm::ParamApprox,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Auto => "auto",
            Algorithm::BruteForce => "bruteforce",
            Algorithm::SearchTree => "searchtree",
            Algorithm::Xp => "xp",
            Algorithm::SpDp => "spdp",
            Algorithm::Cvd => "cvd",
            Algorithm::Diam2 => "diam2",
            Algorithm::Complete => "complete",
            Algorithm::Greedy => "greedy",
            Algorithm::ParamApprox => "paramapprox",
        }
    }

    fn needs_unit_lengths(self) -> bool {
        matches!(self, Algorithm::Cvd | Algorithm::Diam2 | Algorithm::Complete | Algorithm::ParamApprox)
    }

    fn exact(self) -> Option<ExactAlgorithm> {
        match self {
            Algorithm::BruteForce => Some(ExactAlgorithm::BruteForce),
            Algorithm::SearchTree => Some(ExactAlgorithm::SearchTree),
            Algorithm::Xp => Some(ExactAlgorithm::XpMaxDegree),
            Algorithm::Cvd => Some(ExactAlgorithm::ClusterFpt),
            _ => None,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Algorithm::ALL.into_iter().find(|a| a.name() == s).ok_or_else(|| format!("unknown algorithm {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Decision,
    MinCost,
    MaxLength,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Decision => "decision",
            Variant::MinCost => "mincost",
            Variant::MaxLength => "maxlength",
        }
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        [Variant::Decision, Variant::MinCost, Variant::MaxLength]
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| format!("unknown variant {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveOptions {
    pub algorithm: Algorithm,
    pub variant: Variant,
    pub kernelize: bool,
    pub timeout: Option<Duration>,
    /// Constant `c` of the parameterized approximation.
    pub c: f64,
    pub record_timing: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            algorithm: Algorithm::Auto,
            variant: Variant::Decision,
            kernelize: true,
            timeout: None,
            c: 1.0,
            record_timing: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Answer {
    Verdict(Verdict),
    Cost(usize),
    Length(Distance),
}

/// JSON result of `solve`. `k` and `ell` are the constraints the reported
/// solution claims to meet, so `verify` can check it on its own.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub schema: u32,
    pub answer: Answer,
    /// 1-indexed edge ids of the input graph.
    pub solution_edges: Vec<usize>,
    pub distance_after: Option<Distance>,
    pub algorithm: String,
    pub nodes_explored: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
    pub k: Option<usize>,
    pub ell: Option<u64>,
    pub variant: Variant,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower_bound: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernel: Option<KernelStats>,
}

/// What a single solver run produced on the (possibly kernelized) instance.
struct Outcome {
    solution: Option<Solution>,
    resolved: &'static str,
    certificate: Option<Certificate>,
    lower_bound: Option<usize>,
}

impl Outcome {
    fn plain(resolved: Algorithm, solution: Option<Solution>) -> Self {
        Outcome { solution, resolved: resolved.name(), certificate: None, lower_bound: None }
    }
}

fn check_pairing(algorithm: Algorithm, variant: Variant) -> std::result::Result<(), CliError> {
    let ok = match algorithm {
        Algorithm::Greedy => variant == Variant::MinCost,
        Algorithm::ParamApprox => variant == Variant::MaxLength,
        _ => true,
    };
    if ok {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "--alg {} does not support --variant {}",
            algorithm.name(),
            variant.name()
        )))
    }
}

/// Runs the requested algorithm and variant. Decision answers come with a
/// minimum-cardinality solution, found by raising the budget from zero.
pub fn solve(instance: &Instance, options: &SolveOptions) -> std::result::Result<SolveReport, CliError> {
    check_pairing(options.algorithm, options.variant)?;
    let start = Instant::now();
    let mut control = SearchControl::with_timeout(options.timeout);

    let kernel = options.kernelize.then(|| kernelize(instance)).filter(|(kernel, _)| {
        !options.algorithm.needs_unit_lengths() || kernel.unit_length() || !instance.unit_length()
    });
    let working = kernel.as_ref().map_or(instance, |(k, _)| k);

    let run = run_algorithm(working, options, &mut control);
    let wall_ms = options.record_timing.then(|| start.elapsed().as_secs_f64() * 1e3);
    let kernel_stats = kernel.as_ref().map(|(k, _)| KernelStats::of(instance, k));

    let outcome = match run {
        Ok(o) => o,
        Err(Error::Timeout) => {
            return Ok(SolveReport {
                schema: 1,
                answer: Answer::Verdict(Verdict::Unknown),
                solution_edges: Vec::new(),
                distance_after: None,
                algorithm: options.algorithm.name().to_string(),
                nodes_explored: control.nodes(),
                wall_ms,
                k: (options.variant != Variant::MinCost).then_some(instance.k),
                ell: (options.variant != Variant::MaxLength).then_some(instance.ell),
                variant: options.variant,
                certificate: None,
                lower_bound: None,
                kernel: kernel_stats,
            })
        }
        Err(e) => return Err(CliError::Solver(e)),
    };

    let solution = match (&outcome.solution, &kernel) {
        (Some(sol), Some((_, trace))) => Some(lift_solution(trace, instance, sol).map_err(CliError::Solver)?),
        (sol, _) => sol.clone(),
    };
    let (answer, k, ell) = match (options.variant, &solution) {
        (Variant::Decision, Some(_)) => (Answer::Verdict(Verdict::Yes), instance.k, Some(instance.ell)),
        (Variant::Decision, None) => (Answer::Verdict(Verdict::No), instance.k, Some(instance.ell)),
        (Variant::MinCost, Some(s)) => (Answer::Cost(s.cardinality()), s.cardinality(), Some(instance.ell)),
        (Variant::MaxLength, Some(s)) => {
            (Answer::Length(s.achieved_distance), instance.k, s.achieved_distance.finite())
        }
        (_, None) => unreachable!("optimization variants always produce a solution"),
    };
    Ok(SolveReport {
        schema: 1,
        answer,
        solution_edges: solution.as_ref().map_or_else(Vec::new, |s| s.deleted_edges.iter().map(|e| e + 1).collect()),
        distance_after: solution.as_ref().map(|s| s.achieved_distance),
        algorithm: outcome.resolved.to_string(),
        nodes_explored: control.nodes(),
        wall_ms,
        k: Some(k),
        ell,
        variant: options.variant,
        certificate: outcome.certificate,
        lower_bound: outcome.lower_bound,
        kernel: kernel_stats,
    })
}

/// Picks a concrete algorithm for `auto`: closed forms where they apply,
/// the series-parallel DP when the graph is recognised, else the search tree.
fn resolve_auto(instance: &Instance, variant: Variant) -> Algorithm {
    let unit = instance.unit_length();
    if unit && instance.graph.is_complete() {
        return Algorithm::Complete;
    }
    if unit
        && variant != Variant::MaxLength
        && !(2..=4).contains(&instance.ell)
        && diameter(&instance.graph) <= Distance::Finite(2)
    {
        return Algorithm::Diam2;
    }
    if build_sp_tree(&instance.graph, instance.s, instance.t).is_some() {
        return Algorithm::SpDp;
    }
    Algorithm::SearchTree
}

fn run_algorithm(instance: &Instance, options: &SolveOptions, control: &mut SearchControl) -> Result<Outcome> {
    let variant = options.variant;
    let mut algorithm = options.algorithm;
    if algorithm == Algorithm::Auto {
        if variant != Variant::MaxLength && instance.already_feasible() {
            let solution = Some(Solution::empty(instance));
            return Ok(Outcome { resolved: "trivial", ..Outcome::plain(Algorithm::Auto, solution) });
        }
        algorithm = resolve_auto(instance, variant);
    }
    if algorithm.needs_unit_lengths() && !instance.unit_length() {
        return Err(Error::Precondition(format!("{} needs unit lengths", algorithm.name())));
    }
    match algorithm {
        Algorithm::SpDp => return run_sp_dp(instance, variant).map(|s| Outcome::plain(algorithm, s)),
        Algorithm::Greedy => {
            let r = greedy_ell_approx(&instance.graph, instance.s, instance.t, instance.ell)?;
            return Ok(Outcome {
                solution: Some(r.solution),
                resolved: algorithm.name(),
                certificate: Some(Certificate::ApproxFactor(instance.ell as f64)),
                lower_bound: Some(r.lower_bound),
            });
        }
        Algorithm::ParamApprox => {
            let r = param_approx_max_length(instance, options.c, control)?;
            return Ok(Outcome {
                solution: Some(r.solution),
                resolved: algorithm.name(),
                certificate: Some(r.certificate),
                lower_bound: None,
            });
        }
        _ => {}
    }
    let mut oracle = |inst: &Instance, ctl: &mut SearchControl| -> Result<Option<Solution>> {
        match algorithm {
            Algorithm::Diam2 => solve_diameter2(inst, ctl),
            Algorithm::Complete => solve_complete_unit(inst),
            other => decide(inst, other.exact().expect("exact algorithm"), ctl),
        }
    };
    let solution = match variant {
        Variant::Decision => cheapest(instance, Some(instance.k), &mut oracle, control)?,
        Variant::MinCost => cheapest(instance, None, &mut oracle, control)?,
        Variant::MaxLength => Some(longest(instance, &mut oracle, control)?),
    };
    Ok(Outcome::plain(algorithm, solution))
}

/// Smallest budget up to `cap` (the minimum cut when `None`) accepted by
/// `oracle`.
fn cheapest<F>(instance: &Instance, cap: Option<usize>, oracle: &mut F, control: &mut SearchControl) -> Result<Option<Solution>>
where
    F: FnMut(&Instance, &mut SearchControl) -> Result<Option<Solution>>,
{
    let cut = min_st_cut_size(&instance.graph, instance.s, instance.t);
    let top = cap.map_or(cut, |c| c.min(cut));
    for k in 0..=top {
        if let Some(sol) = oracle(&instance.with_budget(k), control)? {
            return Ok(Some(sol));
        }
    }
    Ok(None)
}

fn longest<F>(instance: &Instance, oracle: &mut F, control: &mut SearchControl) -> Result<Solution>
where
    F: FnMut(&Instance, &mut SearchControl) -> Result<Option<Solution>>,
{
    let mut best = Solution::empty(instance);
    while let Distance::Finite(d) = best.achieved_distance {
        match oracle(&instance.with_target(d + 1), control)? {
            Some(sol) => best = sol,
            None => break,
        }
    }
    Ok(best)
}

fn run_sp_dp(instance: &Instance, variant: Variant) -> Result<Option<Solution>> {
    let g = &instance.graph;
    let tree = build_sp_tree(g, instance.s, instance.t)
        .ok_or_else(|| Error::Precondition("graph is not two-terminal series-parallel".into()))?;
    // any target above the total length means disconnecting s and t
    let total: u64 = g.edges().iter().map(|e| e.length).sum();
    let ell = instance.ell.min(total + 1);
    Ok(match variant {
        Variant::Decision => {
            let r = sp_min_cost(g, &tree, ell)?;
            (r.k_star <= instance.k).then_some(r.solution)
        }
        Variant::MinCost => Some(sp_min_cost(g, &tree, ell)?.solution),
        Variant::MaxLength => Some(sp_max_length(g, &tree, instance.k)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn diamond(k: usize, ell: u64) -> Instance {
        Instance::new(Graph::unit(4, [(0, 1), (1, 3), (0, 2), (2, 3)]).unwrap(), 0, 3, k, ell).unwrap()
    }

    fn opts(algorithm: Algorithm, variant: Variant) -> SolveOptions {
        SolveOptions { algorithm, variant, record_timing: false, ..SolveOptions::default() }
    }

    #[test]
    fn diamond_min_cost_is_two() {
        for alg in [Algorithm::Auto, Algorithm::BruteForce, Algorithm::SearchTree, Algorithm::SpDp, Algorithm::Cvd] {
            let r = solve(&diamond(0, 3), &opts(alg, Variant::MinCost)).unwrap();
            assert_eq!(r.answer, Answer::Cost(2), "{alg}");
            assert_eq!(r.solution_edges.len(), 2);
        }
    }

    #[test]
    fn k5_needs_four() {
        let n = 5;
        let k5 = Graph::unit(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)))).unwrap();
        let inst = Instance::new(k5, 0, 4, 3, 3).unwrap();
        let r = solve(&inst, &opts(Algorithm::Auto, Variant::Decision)).unwrap();
        assert_eq!((r.answer, r.algorithm.as_str()), (Answer::Verdict(Verdict::No), "complete"));
        let r = solve(&inst.with_budget(4), &opts(Algorithm::Auto, Variant::Decision)).unwrap();
        assert_eq!(r.answer, Answer::Verdict(Verdict::Yes));
    }

    #[test]
    fn bad_pairings_are_usage_errors() {
        let err = solve(&diamond(1, 3), &opts(Algorithm::Greedy, Variant::Decision)).unwrap_err();
        assert!(matches!(err, CliError::Usage(_)));
        let err = solve(&diamond(1, 3), &opts(Algorithm::ParamApprox, Variant::MinCost)).unwrap_err();
        assert!(matches!(err, CliError::Usage(_)));
    }

    #[test]
    fn json_shape() {
        let r = solve(&diamond(1, 3), &opts(Algorithm::SearchTree, Variant::MaxLength)).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["answer"], 2);
        assert_eq!(v["variant"], "maxlength");
        assert!(v.get("wall_ms").is_none());
        let back: SolveReport = serde_json::from_value(v).unwrap();
        assert_eq!(back.solution_edges, r.solution_edges);

        let r = solve(&diamond(2, 3), &opts(Algorithm::SpDp, Variant::MaxLength)).unwrap();
        assert_eq!(serde_json::to_value(&r).unwrap()["answer"], "infinite");
    }

    #[test]
    fn timeout_reports_unknown() {
        let n = 14;
        let grid = Graph::unit(n, (0..n).flat_map(|a| (a + 1..n).filter(move |b| (a * 7 + b * 3) % 4 != 0).map(move |b| (a, b))))
            .unwrap();
        let inst = Instance::new(grid, 0, n - 1, 6, 6).unwrap();
        let o = SolveOptions { timeout: Some(Duration::ZERO), ..opts(Algorithm::BruteForce, Variant::Decision) };
        let r = solve(&inst, &o).unwrap();
        assert_eq!(r.answer, Answer::Verdict(Verdict::Unknown));
        assert!(r.solution_edges.is_empty() && r.distance_after.is_none());
    }
}
