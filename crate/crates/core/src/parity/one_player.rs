//! Non-emptiness of a parity condition on a graph where one player picks every edge.

use serde::{Deserialize, Serialize};

use super::arena::Arena;
use super::verify::{cyclic_components, path};
use crate::error::SolverError;

/// An ultimately periodic path through an arena, starting at the initial node.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NodeLasso {
    pub prefix: Vec<usize>,
    pub cycle: Vec<usize>,
}

impl NodeLasso {
    /// Checks that the path starts at the initial node and follows arena edges.
    pub fn is_path_of(&self, arena: &Arena) -> bool {
        let seq: Vec<usize> = self.prefix.iter().chain(&self.cycle).copied().collect();
        if self.cycle.is_empty() || seq[0] != arena.initial() {
            return false;
        }
        let closes = arena.successors(*self.cycle.last().unwrap()).contains(&self.cycle[0]);
        closes && seq.windows(2).all(|w| arena.successors(w[0]).contains(&w[1]))
    }

    pub fn min_on_cycle(&self, arena: &Arena, coordinate: usize) -> u32 {
        self.cycle
            .iter()
            .map(|&v| arena.priority(v, coordinate))
            .min()
            .expect("nonempty cycle")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OnePlayerResult {
    pub wins: bool,
    pub witness: Option<NodeLasso>,
}

/// Whether some path from the initial node has even minimum priority in
/// `coordinate` among the nodes it visits infinitely often.
///
/// Ownership is ignored: every edge is treated as available to the Seeker.
/// For each even value `e` in ascending order, the graph is restricted to
/// nodes with priority at least `e`, and a reachable cyclic component holding
/// an `e` node yields the witness.
pub fn solve_one_player(arena: &Arena, coordinate: usize) -> Result<OnePlayerResult, SolverError> {
    arena.check_coordinate(coordinate)?;
    let n = arena.len();
    let reach = arena.reachable();
    let succ: Vec<Vec<usize>> = (0..n).map(|v| arena.successors(v).to_vec()).collect();
    let value = |v: usize| arena.priority(v, coordinate);
    let mut evens: Vec<u32> = (0..n).filter(|&v| reach[v]).map(value).filter(|p| p % 2 == 0).collect();
    evens.sort_unstable();
    evens.dedup();
    for e in evens {
        let keep: Vec<bool> = (0..n).map(|v| reach[v] && value(v) >= e).collect();
        for comp in cyclic_components(&succ, &keep) {
            let Some(&anchor) = comp.iter().find(|&&v| value(v) == e) else {
                continue;
            };
            let mut inside = vec![false; n];
            comp.iter().for_each(|&v| inside[v] = true);
            let cycle = path(&succ, &inside, anchor, anchor).expect("component is strongly connected");
            let prefix = if anchor == arena.initial() {
                Vec::new()
            } else {
                path(&succ, &reach, arena.initial(), anchor).expect("anchor is reachable")
            };
            let lasso = NodeLasso { prefix, cycle };
            if !lasso.is_path_of(arena) || !lasso.min_on_cycle(arena, coordinate).is_multiple_of(2) {
                return Err(SolverError::UnverifiedWitness(format!(
                    "one-player lasso {lasso:?} does not realize an even minimum"
                )));
            }
            return Ok(OnePlayerResult {
                wins: true,
                witness: Some(lasso),
            });
        }
    }
    Ok(OnePlayerResult {
        wins: false,
        witness: None,
    })
}
