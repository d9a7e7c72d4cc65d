//! Exact NE, CNE and GNE verification of finite-memory profiles.

use crate::error::{AnalysisError, SolverError};
use crate::game::Mtg;
use crate::ids::{Player, Topology, TopologySet};
use crate::parity::{solve_conjunction, solve_one_player, ArenaDump, ConjunctionWitness, NodeLasso};
use crate::strategy::{complete, wintops_view, Profile, ProfileView, Unassigned};

use super::knowledge::{build_view, replay, strategy_from_lasso, strategy_from_plan, KnowledgeArena};
use super::report::{ArenaRecord, EquilibriumReport, Witness};

/// The solution concept being checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Concept {
    /// Nash equilibrium of the single topology.
    Ne(Topology),
    Cne,
    Gne,
}

/// Why an evaluation over a partial profile stopped.
#[derive(Debug)]
pub(crate) enum Interrupt {
    Unassigned(Unassigned),
    Failed(AnalysisError),
}

impl From<Unassigned> for Interrupt {
    fn from(u: Unassigned) -> Self {
        Interrupt::Unassigned(u)
    }
}

impl From<SolverError> for Interrupt {
    fn from(e: SolverError) -> Self {
        Interrupt::Failed(e.into())
    }
}

pub(crate) enum Proof {
    Plan(KnowledgeArena, ConjunctionWitness),
    Lasso(KnowledgeArena, NodeLasso),
}

pub(crate) struct Violation {
    pub player: Player,
    pub targets: TopologySet,
    pub proof: Proof,
}

/// The deviation queries of a concept, in reporting order: players in order,
/// then added topologies in order.
pub(crate) fn queries(game: &Mtg, concept: Concept, wintops: &[TopologySet]) -> Vec<(Player, TopologySet)> {
    let all = game.all_topologies();
    let mut out = Vec::new();
    for p in game.player_ids() {
        let won = wintops[p.index()];
        match concept {
            Concept::Ne(t) => {
                if !won.contains(t) {
                    out.push((p, TopologySet::singleton(t)));
                }
            }
            Concept::Gne => {
                for t in all.difference(won).iter() {
                    out.push((p, TopologySet::singleton(t)));
                }
            }
            Concept::Cne => {
                for t in all.difference(won).iter() {
                    out.push((p, won.with(t)));
                }
            }
        }
    }
    out
}

/// Runs the deviation queries in order and returns the first that succeeds.
pub(crate) fn first_violation<V: ProfileView + ?Sized>(
    game: &Mtg,
    view: &V,
    concept: Concept,
    wintops: &[TopologySet],
    mut trace: Option<&mut Vec<ArenaRecord>>,
) -> Result<Option<Violation>, Interrupt> {
    for (player, targets) in queries(game, concept, wintops) {
        let proof = match concept {
            Concept::Ne(t) => {
                let ka = build_view(game, view, player, targets, TopologySet::singleton(t))?;
                record(&mut trace, game, &ka);
                let r = solve_one_player(&ka.arena, 0)?;
                r.witness.map(|lasso| Proof::Lasso(ka, lasso))
            }
            Concept::Cne | Concept::Gne => {
                let ka = build_view(game, view, player, targets, game.all_topologies())?;
                record(&mut trace, game, &ka);
                let r = solve_conjunction(&ka.arena, &ka.active)?;
                r.witness.map(|w| Proof::Plan(ka, w))
            }
        };
        if let Some(proof) = proof {
            return Ok(Some(Violation {
                player,
                targets,
                proof,
            }));
        }
    }
    Ok(None)
}

fn record(trace: &mut Option<&mut Vec<ArenaRecord>>, game: &Mtg, ka: &KnowledgeArena) {
    if let Some(out) = trace.as_deref_mut() {
        out.push(ArenaRecord {
            player: game.player_name(ka.deviator).to_string(),
            targets: ka.targets.iter().map(|&t| game.topology_name(t).to_string()).collect(),
            arena: ka.arena.dump(),
        });
    }
}

/// Whether `concept` holds for a possibly partial profile.
pub(crate) fn holds_view<V: ProfileView + ?Sized>(game: &Mtg, view: &V, concept: Concept) -> Result<bool, Interrupt> {
    let wintops = wintops_view(game, view)?;
    Ok(first_violation(game, view, concept, &wintops, None)?.is_none())
}

/// Checks `concept` for `profile`, optionally collecting every arena built.
pub fn check_traced(
    game: &Mtg,
    profile: &Profile,
    concept: Concept,
    trace: bool,
) -> Result<(EquilibriumReport, Vec<ArenaRecord>), AnalysisError> {
    profile.check_fits(game)?;
    if let Concept::Ne(t) = concept {
        game.check_topology(t)?;
    }
    let wintops = crate::strategy::wintops(game, profile);
    let mut records = Vec::new();
    let found = match first_violation(game, profile, concept, &wintops, trace.then_some(&mut records)) {
        Ok(v) => v,
        Err(Interrupt::Failed(e)) => return Err(e),
        Err(Interrupt::Unassigned(u)) => complete(Err(u)),
    };
    let witness = match found {
        None => None,
        Some(v) => {
            let (strategy, memory) = match &v.proof {
                Proof::Plan(ka, w) => (strategy_from_plan(game, ka, &w.plan), w.memory),
                Proof::Lasso(ka, lasso) => {
                    let s = strategy_from_lasso(game, ka, lasso);
                    let m = s.memory_size();
                    (s, m)
                }
            };
            let achieved = replay(game, profile, v.player, &strategy, v.targets)?;
            if concept == Concept::Cne && !wintops[v.player.index()].is_strict_subset(achieved) {
                return Err(AnalysisError::WitnessReplay {
                    player: game.player_name(v.player).to_string(),
                    detail: "deviation does not enlarge the winning topologies".into(),
                });
            }
            Some(Witness {
                player: v.player,
                targets: v.targets,
                achieved,
                strategy,
                plan_memory: memory,
            })
        }
    };
    Ok((
        EquilibriumReport {
            concept,
            verdict: witness.is_none(),
            wintop: wintops,
            witness,
        },
        records,
    ))
}

pub fn check(game: &Mtg, profile: &Profile, concept: Concept) -> Result<EquilibriumReport, AnalysisError> {
    check_traced(game, profile, concept, false).map(|(r, _)| r)
}

/// Nash equilibrium in topology `t`: no loser has a winning deviation there.
pub fn check_ne(game: &Mtg, t: Topology, profile: &Profile) -> Result<EquilibriumReport, AnalysisError> {
    check(game, profile, Concept::Ne(t))
}

/// Conservative NE: no player can deviate to win a strict superset of her
/// winning topologies.
pub fn check_cne(game: &Mtg, profile: &Profile) -> Result<EquilibriumReport, AnalysisError> {
    check(game, profile, Concept::Cne)
}

/// Greedy NE: no player can deviate to win any topology she currently loses.
pub fn check_gne(game: &Mtg, profile: &Profile) -> Result<EquilibriumReport, AnalysisError> {
    check(game, profile, Concept::Gne)
}

/// Debug dumps of the arenas a check builds, keyed by deviator and targets.
pub fn arenas_of(game: &Mtg, profile: &Profile, concept: Concept) -> Result<Vec<ArenaDump>, AnalysisError> {
    Ok(check_traced(game, profile, concept, true)?.1.into_iter().map(|r| r.arena).collect())
}
