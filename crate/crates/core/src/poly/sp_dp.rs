//! Dynamic programs over an sp-tree. Tables are indexed by tree node; the
//! tree lists children before parents, so one forward pass fills them.

use crate::error::{Error, Result};
use crate::graph::{Distance, EdgeId, Graph, SpNodeKind, SpTree};
use crate::instance::Solution;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpMinCost {
    pub k_star: usize,
    pub solution: Solution,
}

fn check_tree(graph: &Graph, tree: &SpTree) -> Result<()> {
    if tree.is_consistent_with(graph) {
        Ok(())
    } else {
        Err(Error::InvalidInput("sp-tree does not match the graph".into()))
    }
}

/// `C[α][x]`: fewest deletions in the subgraph of node `α` so that its
/// terminals end up at distance at least `x`, for `x = 0..=ell`.
pub fn min_cost_table(graph: &Graph, tree: &SpTree, ell: u64) -> Vec<Vec<usize>> {
    let width = ell as usize + 1;
    let mut c: Vec<Vec<usize>> = Vec::with_capacity(tree.nodes.len());
    for node in &tree.nodes {
        let row = match node.kind {
            SpNodeKind::Leaf(e) => {
                let len = graph.edge(e).length;
                (0..width).map(|x| usize::from(len < x as u64)).collect()
            }
            SpNodeKind::Series(a, b) => (0..width)
                .map(|x| (0..=x).map(|x1| c[a][x1] + c[b][x - x1]).min().unwrap())
                .collect(),
            SpNodeKind::Parallel(a, b) => (0..width).map(|x| c[a][x] + c[b][x]).collect(),
        };
        c.push(row);
    }
    c
}

/// Minimum number of deletions pushing the `s`-`t` distance to `ell`, with a
/// witness recovered from the table (series splits prefer the smaller part
/// for the first child).
pub fn sp_min_cost(graph: &Graph, tree: &SpTree, ell: u64) -> Result<SpMinCost> {
    check_tree(graph, tree)?;
    let c = min_cost_table(graph, tree, ell);
    let mut deleted = Vec::new();
    let mut stack = vec![(tree.root, ell as usize)];
    while let Some((node, x)) = stack.pop() {
        match tree.nodes[node].kind {
            SpNodeKind::Leaf(e) => {
                if c[node][x] == 1 {
                    deleted.push(e);
                }
            }
            SpNodeKind::Series(a, b) => {
                let x1 = (0..=x).find(|&x1| c[a][x1] + c[b][x - x1] == c[node][x]).unwrap();
                stack.push((a, x1));
                stack.push((b, x - x1));
            }
            SpNodeKind::Parallel(a, b) => {
                stack.push((a, x));
                stack.push((b, x));
            }
        }
    }
    let (s, t) = tree.terminals();
    let solution = Solution::new(graph, s, t, deleted);
    debug_assert_eq!(solution.cardinality(), c[tree.root][ell as usize]);
    Ok(SpMinCost { k_star: c[tree.root][ell as usize], solution })
}

fn series_sum(a: Distance, b: Distance) -> Distance {
    a.plus(b)
}

/// `L[α][j]`: largest terminal distance in the subgraph of node `α` after at
/// most `j` deletions, for `j = 0..=k`.
pub fn max_length_table(graph: &Graph, tree: &SpTree, k: usize) -> Vec<Vec<Distance>> {
    let mut l: Vec<Vec<Distance>> = Vec::with_capacity(tree.nodes.len());
    for node in &tree.nodes {
        let row = match node.kind {
            SpNodeKind::Leaf(e) => (0..=k)
                .map(|j| if j == 0 { Distance::Finite(graph.edge(e).length) } else { Distance::Infinite })
                .collect(),
            SpNodeKind::Series(a, b) => (0..=k)
                .map(|j| (0..=j).map(|j1| series_sum(l[a][j1], l[b][j - j1])).max().unwrap())
                .collect(),
            SpNodeKind::Parallel(a, b) => (0..=k)
                .map(|j| (0..=j).map(|j1| l[a][j1].min(l[b][j - j1])).max().unwrap())
                .collect(),
        };
        l.push(row);
    }
    l
}

/// Largest `s`-`t` distance reachable with at most `k` deletions, with a
/// witness (budget splits prefer the smaller share for the first child).
pub fn sp_max_length(graph: &Graph, tree: &SpTree, k: usize) -> Result<Solution> {
    check_tree(graph, tree)?;
    let l = max_length_table(graph, tree, k);
    let mut deleted: Vec<EdgeId> = Vec::new();
    let mut stack = vec![(tree.root, k)];
    while let Some((node, j)) = stack.pop() {
        let target = l[node][j];
        match tree.nodes[node].kind {
            SpNodeKind::Leaf(e) => {
                if j >= 1 {
                    deleted.push(e);
                }
            }
            SpNodeKind::Series(a, b) => {
                let j1 = (0..=j).find(|&j1| series_sum(l[a][j1], l[b][j - j1]) == target).unwrap();
                stack.push((a, j1));
                stack.push((b, j - j1));
            }
            SpNodeKind::Parallel(a, b) => {
                let j1 = (0..=j).find(|&j1| l[a][j1].min(l[b][j - j1]) == target).unwrap();
                stack.push((a, j1));
                stack.push((b, j - j1));
            }
        }
    }
    let (s, t) = tree.terminals();
    let solution = Solution::new(graph, s, t, deleted);
    debug_assert_eq!(solution.achieved_distance, l[tree.root][k]);
    Ok(solution)
}
