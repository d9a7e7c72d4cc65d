//! Conjunctions of parity conditions (generalized parity) for the Seeker.
//!
//! The Seeker must satisfy every coordinate at once; the Spoiler wins if one
//! coordinate fails. The recursion follows the classic generalized-parity
//! scheme: an odd global minimum in some coordinate hands the Spoiler an
//! attractor to peel off, and when every minimum is even the Seeker wins
//! wherever the Spoiler cannot win after removing any one coordinate's
//! minimum-priority attractor. The Seeker's strategy then cycles through the
//! coordinates, visiting each minimum in turn, and needs memory.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::arena::{attractor, is_empty, minus, Arena, Owner};
use super::verify::cycle_with_min_parity;
use crate::error::SolverError;

/// Largest product of arena and plan memory explored during verification.
const MAX_PRODUCT: usize = 2_000_000;

/// A finite-memory Seeker strategy on (part of) an arena.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Plan {
    /// Fixed successor per Seeker node.
    Positional(BTreeMap<usize, usize>),
    /// The region is split into pieces, each with its own plan. Memory
    /// restarts whenever the play moves to a different piece.
    Pieces {
        owner: BTreeMap<usize, usize>,
        pieces: Vec<Plan>,
    },
    /// Visit each phase's target in turn, forever.
    Cycle { phases: Vec<Phase> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Phase {
    /// Nodes of minimal priority in this phase's coordinate.
    pub target: BTreeSet<usize>,
    /// Seeker attractor to `target`, including `target`.
    pub region: BTreeSet<usize>,
    pub attract: BTreeMap<usize, usize>,
    /// Move taken by a Seeker node inside `target`.
    pub anchor: BTreeMap<usize, usize>,
    /// Strategy outside `region`.
    pub rest: Box<Plan>,
}

/// Memory of a [`Plan`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mem {
    Unit,
    Piece(usize, Box<Mem>),
    Anchor(usize),
    Attract(usize),
    Rest(usize, Box<Mem>),
}

impl Plan {
    /// Memory on entering the plan at node `v`.
    pub fn start(&self, v: usize) -> Mem {
        match self {
            Plan::Positional(_) => Mem::Unit,
            Plan::Pieces { owner, pieces } => match owner.get(&v) {
                Some(&i) => Mem::Piece(i, Box::new(pieces[i].start(v))),
                None => Mem::Unit,
            },
            Plan::Cycle { phases } => arrive(phases, 0, v),
        }
    }

    /// Memory after moving into `w`.
    pub fn step(&self, mem: &Mem, w: usize) -> Mem {
        match (self, mem) {
            (Plan::Positional(_), _) => Mem::Unit,
            (Plan::Pieces { owner, pieces }, Mem::Piece(i, inner)) => match owner.get(&w) {
                Some(&j) if j == *i => Mem::Piece(j, Box::new(pieces[j].step(inner, w))),
                Some(&j) => Mem::Piece(j, Box::new(pieces[j].start(w))),
                None => Mem::Unit,
            },
            (Plan::Cycle { phases }, Mem::Anchor(j)) => arrive(phases, (j + 1) % phases.len(), w),
            (Plan::Cycle { phases }, Mem::Rest(j, inner)) if !phases[*j].region.contains(&w) => {
                Mem::Rest(*j, Box::new(phases[*j].rest.step(inner, w)))
            }
            (Plan::Cycle { phases }, Mem::Rest(j, _) | Mem::Attract(j)) => arrive(phases, *j, w),
            _ => self.start(w),
        }
    }

    /// The Seeker's move at `v`, or `None` outside the plan's domain.
    pub fn choose(&self, mem: &Mem, v: usize) -> Option<usize> {
        match (self, mem) {
            (Plan::Positional(moves), _) => moves.get(&v).copied(),
            (Plan::Pieces { pieces, .. }, Mem::Piece(i, inner)) => pieces[*i].choose(inner, v),
            (Plan::Cycle { phases }, Mem::Anchor(j)) => phases[*j].anchor.get(&v).copied(),
            (Plan::Cycle { phases }, Mem::Attract(j)) => phases[*j].attract.get(&v).copied(),
            (Plan::Cycle { phases }, Mem::Rest(j, inner)) => phases[*j].rest.choose(inner, v),
            _ => None,
        }
    }
}

fn arrive(phases: &[Phase], j: usize, v: usize) -> Mem {
    let phase = &phases[j];
    if phase.target.contains(&v) {
        Mem::Anchor(j)
    } else if phase.region.contains(&v) {
        Mem::Attract(j)
    } else {
        Mem::Rest(j, Box::new(phase.rest.start(v)))
    }
}

/// A verified Seeker strategy from the initial node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjunctionWitness {
    pub plan: Plan,
    /// Number of distinct memory values reached against all Spoiler behaviours.
    pub memory: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjunctionResult {
    pub wins: bool,
    pub seeker_region: Vec<bool>,
    pub witness: Option<ConjunctionWitness>,
}

struct Solver<'a> {
    arena: &'a Arena,
    width: usize,
    /// Effective priorities `[v * width + i]`.
    prio: Vec<u32>,
}

fn set_of(mask: &[bool]) -> BTreeSet<usize> {
    (0..mask.len()).filter(|&v| mask[v]).collect()
}

impl Solver<'_> {
    fn p(&self, v: usize, i: usize) -> u32 {
        self.prio[v * self.width + i]
    }

    /// Returns the Spoiler's winning region inside `alive` and a Seeker plan
    /// winning from the rest of `alive`.
    fn solve(&self, alive: &[bool]) -> (Vec<bool>, Plan) {
        let n = self.arena.len();
        if is_empty(alive) {
            return (vec![false; n], Plan::Positional(BTreeMap::new()));
        }
        let minima: Vec<u32> = (0..self.width)
            .map(|i| (0..n).filter(|&v| alive[v]).map(|v| self.p(v, i)).min().unwrap())
            .collect();
        let level = |i: usize| -> Vec<bool> {
            (0..n).map(|v| alive[v] && self.p(v, i) == minima[i]).collect()
        };

        if let Some(i) = (0..self.width).find(|&i| minima[i] % 2 == 1) {
            let (attr, _) = attractor(self.arena, alive, &level(i), Owner::Spoiler);
            let sub_alive = minus(alive, &attr);
            let (sub_lost, sub_plan) = self.solve(&sub_alive);
            let sub_won = minus(&sub_alive, &sub_lost);
            if is_empty(&sub_won) {
                return (alive.to_vec(), Plan::Positional(BTreeMap::new()));
            }
            let (pull, moves) = attractor(self.arena, alive, &sub_won, Owner::Seeker);
            let (lost, rest_plan) = self.solve(&minus(alive, &pull));
            let mut owner = BTreeMap::new();
            for v in 0..n {
                if sub_won[v] {
                    owner.insert(v, 0);
                } else if pull[v] {
                    owner.insert(v, 1);
                } else if alive[v] && !lost[v] {
                    owner.insert(v, 2);
                }
            }
            let plan = Plan::Pieces {
                owner,
                pieces: vec![sub_plan, Plan::Positional(moves.into_iter().collect()), rest_plan],
            };
            return (lost, plan);
        }

        let mut phases = Vec::with_capacity(self.width);
        for i in 0..self.width {
            let target = level(i);
            let (region, moves) = attractor(self.arena, alive, &target, Owner::Seeker);
            let (sub_lost, sub_plan) = self.solve(&minus(alive, &region));
            if !is_empty(&sub_lost) {
                let (lost_attr, _) = attractor(self.arena, alive, &sub_lost, Owner::Spoiler);
                let (lost, plan) = self.solve(&minus(alive, &lost_attr));
                let all_lost = lost.iter().zip(&lost_attr).map(|(&a, &b)| a || b).collect();
                return (all_lost, plan);
            }
            let anchor = (0..n)
                .filter(|&v| target[v] && self.arena.owner(v) == Owner::Seeker)
                .map(|v| {
                    let w = self.arena.successors(v).iter().copied().find(|&w| alive[w]);
                    (v, w.expect("subgames are total"))
                })
                .collect();
            phases.push(Phase {
                target: set_of(&target),
                region: set_of(&region),
                attract: moves.into_iter().collect(),
                anchor,
                rest: Box::new(sub_plan),
            });
        }
        (vec![false; n], Plan::Cycle { phases })
    }
}

/// Checks the mask shape and that no edge reactivates a coordinate.
fn check_mask(arena: &Arena, active: &[Vec<bool>]) -> Result<(), SolverError> {
    if active.len() != arena.len() || active.iter().any(|m| m.len() != arena.width()) {
        return Err(SolverError::Malformed(format!(
            "activity mask must be {} vectors of length {}",
            arena.len(),
            arena.width()
        )));
    }
    for v in 0..arena.len() {
        for &w in arena.successors(v) {
            for i in 0..arena.width() {
                if !active[v][i] && active[w][i] {
                    return Err(SolverError::NonMonotoneMask {
                        from: v,
                        to: w,
                        coordinate: i,
                    });
                }
            }
        }
    }
    Ok(())
}

/// Whether the Seeker can satisfy every active coordinate from the initial node.
///
/// A coordinate counts only where it is active; inactive nodes are evaluated
/// with priority 0. The mask may only switch coordinates off along edges.
/// When the answer is positive, the returned plan has been checked on the
/// product of the arena with its memory against every Spoiler behaviour.
pub fn solve_conjunction(arena: &Arena, active: &[Vec<bool>]) -> Result<ConjunctionResult, SolverError> {
    check_mask(arena, active)?;
    let width = arena.width();
    let prio: Vec<u32> = (0..arena.len())
        .flat_map(|v| (0..width).map(move |i| (v, i)))
        .map(|(v, i)| if active[v][i] { arena.priority(v, i) } else { 0 })
        .collect();
    let solver = Solver { arena, width, prio };
    let (lost, plan) = solver.solve(&vec![true; arena.len()]);
    let seeker_region: Vec<bool> = lost.iter().map(|&x| !x).collect();
    let wins = seeker_region[arena.initial()];
    let witness = if wins {
        let memory = verify_plan(arena, &solver.prio, &plan)?;
        Some(ConjunctionWitness { plan, memory })
    } else {
        None
    };
    Ok(ConjunctionResult {
        wins,
        seeker_region,
        witness,
    })
}

/// Every coordinate active everywhere.
pub fn all_active(arena: &Arena) -> Vec<Vec<bool>> {
    vec![vec![true; arena.width()]; arena.len()]
}

/// Builds the product of the arena with the plan's memory from the initial
/// node and checks that no cycle has an odd minimum in any coordinate.
/// Returns the number of memory values used.
fn verify_plan(arena: &Arena, prio: &[u32], plan: &Plan) -> Result<usize, SolverError> {
    let width = arena.width();
    let mut index: HashMap<(usize, Mem), usize> = HashMap::new();
    let mut nodes: Vec<(usize, Mem)> = Vec::new();
    let mut succ: Vec<Vec<usize>> = Vec::new();
    let start = (arena.initial(), plan.start(arena.initial()));
    index.insert(start.clone(), 0);
    nodes.push(start);
    let mut next = 0;
    while next < nodes.len() {
        let (v, mem) = nodes[next].clone();
        let moves: Vec<usize> = match arena.owner(v) {
            Owner::Seeker => {
                let w = plan.choose(&mem, v).ok_or_else(|| {
                    SolverError::UnverifiedWitness(format!("plan has no move at node {v}"))
                })?;
                if !arena.successors(v).contains(&w) {
                    return Err(SolverError::UnverifiedWitness(format!("plan moves along missing edge {v} -> {w}")));
                }
                vec![w]
            }
            Owner::Spoiler => arena.successors(v).to_vec(),
        };
        let mut out = Vec::with_capacity(moves.len());
        for w in moves {
            let key = (w, plan.step(&mem, w));
            let id = match index.get(&key) {
                Some(&id) => id,
                None => {
                    if nodes.len() >= MAX_PRODUCT {
                        return Err(SolverError::UnverifiedWitness(
                            "witness product exceeds the verification limit".into(),
                        ));
                    }
                    index.insert(key.clone(), nodes.len());
                    nodes.push(key);
                    nodes.len() - 1
                }
            };
            out.push(id);
        }
        succ.push(out);
        next += 1;
    }
    for i in 0..width {
        let value = |x: usize| prio[nodes[x].0 * width + i];
        if let Some((o, x)) = cycle_with_min_parity(&succ, value, 1) {
            return Err(SolverError::UnverifiedWitness(format!(
                "coordinate {i}: a consistent play cycles through node {} with minimum {o}",
                nodes[x].0
            )));
        }
    }
    let memories: BTreeSet<&Mem> = nodes.iter().map(|(_, m)| m).collect();
    Ok(memories.len())
}
