//! Two-player min-parity games solved by Zielonka's recursive algorithm.

use super::arena::{attractor, is_empty, minus, opponent, Arena, Owner};
use super::verify::cycle_with_min_parity;
use crate::error::SolverError;

/// Winning regions and positional winning strategies for both players.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParitySolution {
    pub seeker_region: Vec<bool>,
    /// For each node, the successor its owner picks when the owner wins there.
    pub strategy: Vec<Option<usize>>,
}

impl ParitySolution {
    pub fn seeker_wins(&self, v: usize) -> bool {
        self.seeker_region[v]
    }
}

struct Regions {
    seeker: Vec<bool>,
    spoiler: Vec<bool>,
}

fn region_of(r: &Regions, o: Owner) -> &Vec<bool> {
    match o {
        Owner::Seeker => &r.seeker,
        Owner::Spoiler => &r.spoiler,
    }
}

fn solve(arena: &Arena, c: usize, alive: &[bool], strategy: &mut [Option<usize>]) -> Regions {
    let n = arena.len();
    if is_empty(alive) {
        return Regions {
            seeker: vec![false; n],
            spoiler: vec![false; n],
        };
    }
    let m = (0..n)
        .filter(|&v| alive[v])
        .map(|v| arena.priority(v, c))
        .min()
        .unwrap();
    let alpha = if m % 2 == 0 { Owner::Seeker } else { Owner::Spoiler };
    let top: Vec<bool> = (0..n).map(|v| alive[v] && arena.priority(v, c) == m).collect();
    let (attr, moves) = attractor(arena, alive, &top, alpha);
    let sub = solve(arena, c, &minus(alive, &attr), strategy);
    let lost = region_of(&sub, opponent(alpha)).clone();
    if is_empty(&lost) {
        for (v, w) in moves {
            strategy[v] = Some(w);
        }
        for v in 0..n {
            if top[v] && arena.owner(v) == alpha {
                strategy[v] = arena.successors(v).iter().copied().find(|&w| alive[w]);
            }
        }
        let won = alive.to_vec();
        return match alpha {
            Owner::Seeker => Regions {
                seeker: won,
                spoiler: vec![false; n],
            },
            Owner::Spoiler => Regions {
                seeker: vec![false; n],
                spoiler: won,
            },
        };
    }
    let (back, back_moves) = attractor(arena, alive, &lost, opponent(alpha));
    for (v, w) in back_moves {
        strategy[v] = Some(w);
    }
    let rest = solve(arena, c, &minus(alive, &back), strategy);
    let grow = |r: &Vec<bool>| -> Vec<bool> { r.iter().zip(&back).map(|(&x, &y)| x || y).collect() };
    match alpha {
        Owner::Seeker => Regions {
            seeker: rest.seeker,
            spoiler: grow(&rest.spoiler),
        },
        Owner::Spoiler => Regions {
            seeker: grow(&rest.seeker),
            spoiler: rest.spoiler,
        },
    }
}

/// Solves the parity condition of `coordinate` for the Seeker from every node.
///
/// Both regions come with positional strategies, and both are re-checked on
/// the graph the strategy induces before the result is returned.
pub fn solve_parity(arena: &Arena, coordinate: usize) -> Result<ParitySolution, SolverError> {
    arena.check_coordinate(coordinate)?;
    let n = arena.len();
    let mut strategy = vec![None; n];
    let regions = solve(arena, coordinate, &vec![true; n], &mut strategy);
    // Entries for nodes won by the other player are leftovers of subgames.
    for v in 0..n {
        let winner = if regions.seeker[v] { Owner::Seeker } else { Owner::Spoiler };
        if arena.owner(v) != winner {
            strategy[v] = None;
        }
    }
    let solution = ParitySolution {
        seeker_region: regions.seeker,
        strategy,
    };
    verify_region(arena, coordinate, &solution, Owner::Seeker)?;
    verify_region(arena, coordinate, &solution, Owner::Spoiler)?;
    Ok(solution)
}

fn verify_region(
    arena: &Arena,
    c: usize,
    sol: &ParitySolution,
    player: Owner,
) -> Result<(), SolverError> {
    let n = arena.len();
    let inside = |v: usize| sol.seeker_region[v] == (player == Owner::Seeker);
    let mut succ = vec![Vec::new(); n];
    for v in (0..n).filter(|&v| inside(v)) {
        if arena.owner(v) == player {
            let w = sol.strategy[v].ok_or_else(|| {
                SolverError::UnverifiedWitness(format!("no move at winning node {v}"))
            })?;
            if !arena.successors(v).contains(&w) || !inside(w) {
                return Err(SolverError::UnverifiedWitness(format!(
                    "move {v} -> {w} leaves the winning region"
                )));
            }
            succ[v] = vec![w];
        } else {
            if let Some(&w) = arena.successors(v).iter().find(|&&w| !inside(w)) {
                return Err(SolverError::UnverifiedWitness(format!(
                    "opponent escapes the region along {v} -> {w}"
                )));
            }
            succ[v] = arena.successors(v).to_vec();
        }
    }
    let bad_parity = if player == Owner::Seeker { 1 } else { 0 };
    let value = |v: usize| if inside(v) { arena.priority(v, c) } else { u32::MAX };
    if let Some((o, v)) = cycle_with_min_parity(&succ, value, bad_parity) {
        if inside(v) {
            return Err(SolverError::UnverifiedWitness(format!(
                "{player:?} region admits a cycle through {v} with minimum {o}"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parity::arena::ArenaBuilder;

    fn uniform(p: u32) -> Arena {
        let mut b = ArenaBuilder::new(1);
        b.add_node(Owner::Seeker, &[p], "");
        b.add_node(Owner::Spoiler, &[p + 2], "");
        b.add_edge(0, 1, Some(0));
        b.add_edge(0, 0, Some(1));
        b.add_edge(1, 0, None);
        b.add_edge(1, 1, None);
        b.finish(0).unwrap()
    }

    #[test]
    fn uniform_parities() {
        assert_eq!(solve_parity(&uniform(0), 0).unwrap().seeker_region, vec![true, true]);
        assert_eq!(solve_parity(&uniform(1), 0).unwrap().seeker_region, vec![false, false]);
    }

    #[test]
    fn seeker_escapes_to_even_sink() {
        // 0 (spoiler, 1) -> 0 | 1 ; 1 (seeker, 1) -> 0 | 2 ; 2 (sink, 0)
        let mut b = ArenaBuilder::new(1);
        b.add_node(Owner::Spoiler, &[1], "");
        b.add_node(Owner::Seeker, &[1], "");
        b.add_node(Owner::Seeker, &[0], "");
        b.add_edge(0, 0, None);
        b.add_edge(0, 1, None);
        b.add_edge(1, 0, None);
        b.add_edge(1, 2, None);
        b.add_edge(2, 2, None);
        let sol = solve_parity(&b.finish(0).unwrap(), 0).unwrap();
        assert_eq!(sol.seeker_region, vec![false, true, true]);
        assert_eq!(sol.strategy[1], Some(2));
        assert_eq!(sol.strategy[0], Some(0));
    }
}
