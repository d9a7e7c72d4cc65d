//! Cycle checks on explicit graphs, used to verify every solver witness.

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

/// Strongly connected components of the subgraph induced by `keep`, each as a
/// sorted node list, restricted to components that carry a cycle.
pub(crate) fn cyclic_components(succ: &[Vec<usize>], keep: &[bool]) -> Vec<Vec<usize>> {
    let mut index = vec![usize::MAX; succ.len()];
    let mut g: DiGraph<usize, ()> = DiGraph::new();
    for v in 0..succ.len() {
        if keep[v] {
            index[v] = g.add_node(v).index();
        }
    }
    for v in 0..succ.len() {
        if !keep[v] {
            continue;
        }
        for &w in &succ[v] {
            if keep[w] {
                g.add_edge(NodeIndex::new(index[v]), NodeIndex::new(index[w]), ());
            }
        }
    }
    let mut out: Vec<Vec<usize>> = tarjan_scc(&g)
        .into_iter()
        .map(|c| {
            let mut nodes: Vec<usize> = c.into_iter().map(|i| g[i]).collect();
            nodes.sort_unstable();
            nodes
        })
        .filter(|c| c.len() > 1 || succ[c[0]].contains(&c[0]))
        .collect();
    out.sort();
    out
}

/// Smallest value `o` with `o % 2 == parity` such that some cycle has minimum
/// exactly `o`, together with a node on such a cycle carrying `o`.
pub(crate) fn cycle_with_min_parity(
    succ: &[Vec<usize>],
    value: impl Fn(usize) -> u32,
    parity: u32,
) -> Option<(u32, usize)> {
    let mut candidates: Vec<u32> = (0..succ.len()).map(&value).filter(|v| v % 2 == parity).collect();
    candidates.sort_unstable();
    candidates.dedup();
    for o in candidates {
        let keep: Vec<bool> = (0..succ.len()).map(|v| value(v) >= o).collect();
        for comp in cyclic_components(succ, &keep) {
            if let Some(&v) = comp.iter().find(|&&v| value(v) == o) {
                return Some((o, v));
            }
        }
    }
    None
}

/// Shortest path from `from` to `to` using only nodes in `allowed`, as the
/// node list without `to`. `None` if unreachable.
pub(crate) fn path(succ: &[Vec<usize>], allowed: &[bool], from: usize, to: usize) -> Option<Vec<usize>> {
    use std::collections::VecDeque;
    let mut parent = vec![usize::MAX; succ.len()];
    let mut seen = vec![false; succ.len()];
    let mut queue = VecDeque::from([from]);
    seen[from] = true;
    while let Some(v) = queue.pop_front() {
        for &w in &succ[v] {
            if w == to {
                let mut out = vec![v];
                let mut cur = v;
                while cur != from {
                    cur = parent[cur];
                    out.push(cur);
                }
                out.reverse();
                return Some(out);
            }
            if allowed[w] && !seen[w] {
                seen[w] = true;
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    None
}
