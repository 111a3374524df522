use crate::control::SearchControl;
use crate::error::{Error, Result};
use crate::exact::{search_tree_with, SearchTreeConfig};
use crate::graph::{diameter, Distance, EdgeId};
use crate::instance::{Instance, Solution};

fn star(instance: &Instance, v: usize) -> Solution {
    let edges: Vec<EdgeId> = instance.graph.neighbors(v).iter().map(|&(_, e)| e).collect();
    instance.evaluate(edges)
}

/// Unit-length graphs of diameter at most two. Targets of 5 or more can only
/// be met by isolating a terminal, so the answer is `k >= min(deg s, deg t)`;
/// targets 2 to 4 go to the search tree, whose paths have at most 3 edges.
pub fn solve_diameter2(instance: &Instance, control: &mut SearchControl) -> Result<Option<Solution>> {
    if !instance.unit_length() {
        return Err(Error::Precondition("diameter-two solver needs unit lengths".into()));
    }
    if diameter(&instance.graph) > Distance::Finite(2) {
        return Err(Error::Precondition("graph diameter exceeds two".into()));
    }
    if instance.already_feasible() {
        return Ok(Some(Solution::empty(instance)));
    }
    if instance.ell >= 5 {
        let g = &instance.graph;
        let (s, t) = (instance.s, instance.t);
        let v = if g.degree(t) < g.degree(s) { t } else { s };
        return Ok((instance.k >= g.degree(v)).then(|| star(instance, v)));
    }
    Ok(search_tree_with(instance, SearchTreeConfig::default(), control)?.solution)
}

/// Complete unit-length graphs: target 1 is free, target 2 needs the edge
/// `{s, t}`, anything longer needs every edge at `s` (`n - 1` deletions).
pub fn solve_complete_unit(instance: &Instance) -> Result<Option<Solution>> {
    let g = &instance.graph;
    if !instance.unit_length() || !g.is_complete() {
        return Err(Error::Precondition("expected a complete unit-length graph".into()));
    }
    let n = g.vertex_count();
    Ok(match instance.ell {
        0 | 1 => Some(Solution::empty(instance)),
        2 => (instance.k >= 1).then(|| {
            let e = g.edge_between(instance.s, instance.t).expect("complete graph");
            instance.evaluate(vec![e])
        }),
        _ => (instance.k >= n - 1).then(|| star(instance, instance.s)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn complete(n: usize) -> Graph {
        Graph::unit(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)))).unwrap()
    }

    #[test]
    fn diameter_two_formula() {
        let mut ctl = SearchControl::unlimited();
        let k4 = Instance::new(complete(4), 0, 1, 3, 5).unwrap();
        assert!(solve_diameter2(&k4, &mut ctl).unwrap().is_some());
        assert!(solve_diameter2(&k4.with_budget(2), &mut ctl).unwrap().is_none());
        let sol = solve_diameter2(&k4.with_budget(1).with_target(2), &mut ctl).unwrap().unwrap();
        assert_eq!(sol.achieved_distance, Distance::Finite(2));
        assert!(solve_diameter2(&k4.with_budget(0).with_target(1), &mut ctl).unwrap().is_some());

        let p4 = Graph::unit(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let far = Instance::new(p4, 0, 3, 1, 5).unwrap();
        assert!(matches!(solve_diameter2(&far, &mut ctl), Err(Error::Precondition(_))));
    }

    #[test]
    fn complete_graph_closed_form() {
        let k5 = Instance::new(complete(5), 0, 4, 3, 3).unwrap();
        assert!(solve_complete_unit(&k5).unwrap().is_none());
        let sol = solve_complete_unit(&k5.with_budget(4)).unwrap().unwrap();
        assert_eq!(sol.achieved_distance, Distance::Infinite);
        assert!(solve_complete_unit(&k5.with_budget(1).with_target(2)).unwrap().is_some());
        assert!(solve_complete_unit(&k5.with_budget(0).with_target(1)).unwrap().is_some());
        let path = Instance::new(Graph::unit(3, [(0, 1), (1, 2)]).unwrap(), 0, 2, 0, 1).unwrap();
        assert!(solve_complete_unit(&path).is_err());
    }
}
