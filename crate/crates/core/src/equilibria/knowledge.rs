//! The deviation game of one player against the fixed strategies of the others.
//!
//! A deviator sees only states, so topologies that have produced the same
//! state history must receive the same deviator action. Seeker nodes carry the
//! current state, the set of topologies still consistent with the history, and
//! the memories of the co-players. After the deviator picks an action, the
//! consistent set splits by successor state and the Spoiler picks which part
//! the play follows.

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::error::{AnalysisError, GameError};
use crate::game::Mtg;
use crate::ids::{Action, Player, State, Topology, TopologySet};
use crate::parity::{Arena, ArenaBuilder, Mem, NodeLasso, Owner, Plan};
use crate::strategy::{complete, MooreStrategy, Profile, ProfileView, Unassigned};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KnowledgeNode {
    pub state: State,
    pub consistent: TopologySet,
    /// Memory of every player; the deviator's slot is unused and kept at 0.
    pub memories: Vec<u32>,
    /// The deviator's pending action on Spoiler nodes.
    pub action: Option<Action>,
}

/// A knowledge arena with one priority coordinate per target topology.
#[derive(Clone, Debug)]
pub struct KnowledgeArena {
    pub arena: Arena,
    pub nodes: Vec<KnowledgeNode>,
    pub deviator: Player,
    /// Target topologies in ascending order; coordinate `i` tracks `targets[i]`.
    pub targets: Vec<Topology>,
    /// Coordinate `i` is active at a node iff `targets[i]` is still consistent.
    pub active: Vec<Vec<bool>>,
}

fn node_name(game: &Mtg, node: &KnowledgeNode, deviator: Player) -> String {
    let mems: Vec<String> = node
        .memories
        .iter()
        .enumerate()
        .filter(|&(q, _)| q != deviator.index())
        .map(|(_, m)| m.to_string())
        .collect();
    let base = format!(
        "{} {{{}}} [{}]",
        game.state_name(node.state),
        game.topology_set_names(node.consistent).join(","),
        mems.join(",")
    );
    match node.action {
        Some(a) => format!("{base} / {}", game.action_name(a)),
        None => base,
    }
}

/// Builds the arena from the initial state with `start` as consistent set.
pub(crate) fn build_view<V: ProfileView + ?Sized>(
    game: &Mtg,
    view: &V,
    deviator: Player,
    targets: TopologySet,
    start: TopologySet,
) -> Result<KnowledgeArena, Unassigned> {
    let targets: Vec<Topology> = targets.iter().collect();
    let width = targets.len();
    let players: Vec<Player> = game.player_ids().filter(|&q| q != deviator).collect();
    let vector = |s: State, k: TopologySet| -> (Vec<u32>, Vec<bool>) {
        targets
            .iter()
            .map(|&t| {
                if k.contains(t) {
                    (game.priority(t, deviator, s), true)
                } else {
                    (0, false)
                }
            })
            .unzip()
    };

    let mut builder = ArenaBuilder::new(width);
    let mut nodes: Vec<KnowledgeNode> = Vec::new();
    let mut active: Vec<Vec<bool>> = Vec::new();
    let mut index: HashMap<(State, TopologySet, Vec<u32>), usize> = HashMap::new();
    let mut queue = VecDeque::new();

    let mut add_seeker = |builder: &mut ArenaBuilder,
                          nodes: &mut Vec<KnowledgeNode>,
                          active: &mut Vec<Vec<bool>>,
                          queue: &mut VecDeque<usize>,
                          s: State,
                          k: TopologySet,
                          mems: Vec<u32>|
     -> usize {
        if let Some(&id) = index.get(&(s, k, mems.clone())) {
            return id;
        }
        let node = KnowledgeNode {
            state: s,
            consistent: k,
            memories: mems.clone(),
            action: None,
        };
        let (prio, act) = vector(s, k);
        let id = builder.add_node(Owner::Seeker, &prio, node_name(game, &node, deviator));
        nodes.push(node);
        active.push(act);
        index.insert((s, k, mems), id);
        queue.push_back(id);
        id
    };

    let init_mems: Vec<u32> = game
        .player_ids()
        .map(|q| if q == deviator { 0 } else { view.initial_memory(q) })
        .collect();
    let root = add_seeker(
        &mut builder,
        &mut nodes,
        &mut active,
        &mut queue,
        game.initial(),
        start,
        init_mems,
    );
    let mut actions = vec![Action(0); game.num_players()];
    while let Some(v) = queue.pop_front() {
        let KnowledgeNode {
            state: s,
            consistent: k,
            memories: mems,
            ..
        } = nodes[v].clone();
        let parent_prio = vector(s, k).0;
        let mut next_mems = mems.clone();
        for &q in &players {
            actions[q.index()] = view.act(q, mems[q.index()], s)?;
            next_mems[q.index()] = view.update(q, mems[q.index()], s)?;
        }
        for a in game.action_ids() {
            actions[deviator.index()] = a;
            let prof = game.profile_index(&actions);
            let node = KnowledgeNode {
                state: s,
                consistent: k,
                memories: mems.clone(),
                action: Some(a),
            };
            // Spoiler nodes copy the priorities of their Seeker parent.
            let u = builder.add_node(Owner::Spoiler, &parent_prio, node_name(game, &node, deviator));
            nodes.push(node);
            active.push(active[v].clone());
            builder.add_edge(v, u, Some(a.0));
            let mut classes: BTreeMap<State, TopologySet> = BTreeMap::new();
            for t in k.iter() {
                let succ = game.step_index(t, s, prof);
                classes.entry(succ).or_default().insert(t);
            }
            for (succ, class) in classes {
                let w = add_seeker(
                    &mut builder,
                    &mut nodes,
                    &mut active,
                    &mut queue,
                    succ,
                    class,
                    next_mems.clone(),
                );
                builder.add_edge(u, w, None);
            }
        }
    }
    let arena = builder.finish(root).expect("knowledge arenas are total");
    Ok(KnowledgeArena {
        arena,
        nodes,
        deviator,
        targets,
        active,
    })
}

/// The knowledge arena of `deviator` for the given target topologies.
pub fn build_knowledge_arena(
    game: &Mtg,
    profile: &Profile,
    deviator: Player,
    targets: TopologySet,
) -> Result<KnowledgeArena, GameError> {
    check_request(game, deviator, targets)?;
    Ok(complete(build_view(game, profile, deviator, targets, game.all_topologies())))
}

pub(crate) fn check_request(game: &Mtg, deviator: Player, targets: TopologySet) -> Result<(), GameError> {
    game.check_player(deviator)?;
    if targets.is_empty() {
        return Err(GameError::Input("target topology set is empty".into()));
    }
    if !targets.is_subset(game.all_topologies()) {
        return Err(GameError::Input("target set names an unknown topology".into()));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum DevMem {
    Start,
    Pending(usize, Mem),
    Dead,
}

/// Turns an arena plan into a Moore strategy over game states.
///
/// The strategy remembers the Spoiler node it is waiting on together with
/// the plan memory. The next observed state identifies the Spoiler's choice,
/// since the consistent set splits by successor state.
pub(crate) fn strategy_from_plan(game: &Mtg, ka: &KnowledgeArena, plan: &Plan) -> MooreStrategy {
    let arena = &ka.arena;
    let resolve = |dm: &DevMem, s: State| -> Option<(Action, DevMem)> {
        let (v, m) = match dm {
            DevMem::Start => {
                let v = arena.initial();
                if ka.nodes[v].state != s {
                    return None;
                }
                (v, plan.start(v))
            }
            DevMem::Pending(u, m) => {
                let v = *arena.successors(*u).iter().find(|&&v| ka.nodes[v].state == s)?;
                (v, plan.step(m, v))
            }
            DevMem::Dead => return None,
        };
        let u = plan.choose(&m, v)?;
        let a = Action(arena.label(v, u)?);
        Some((a, DevMem::Pending(u, plan.step(&m, u))))
    };
    let mut memories = vec![DevMem::Start];
    let mut index: HashMap<DevMem, u32> = HashMap::from([(DevMem::Start, 0)]);
    let mut update = Vec::new();
    let mut act = Vec::new();
    let mut i = 0;
    while i < memories.len() {
        let dm = memories[i].clone();
        for s in game.state_ids() {
            let (a, next) = resolve(&dm, s).unwrap_or((Action(0), DevMem::Dead));
            let id = *index.entry(next.clone()).or_insert_with(|| {
                memories.push(next);
                (memories.len() - 1) as u32
            });
            update.push(id);
            act.push(a);
        }
        i += 1;
    }
    MooreStrategy::from_tables(memories.len(), 0, game.num_states(), update, act)
        .expect("tables built over every memory and state")
}

/// Follows a lasso through the arena: memory is the position among the
/// lasso's Seeker nodes.
pub(crate) fn strategy_from_lasso(game: &Mtg, ka: &KnowledgeArena, lasso: &NodeLasso) -> MooreStrategy {
    let seq: Vec<usize> = lasso.prefix.iter().chain(&lasso.cycle).copied().collect();
    let next = |i: usize| if i + 1 < seq.len() { i + 1 } else { lasso.prefix.len() };
    let seekers: Vec<usize> = (0..seq.len())
        .filter(|&i| ka.arena.owner(seq[i]) == Owner::Seeker)
        .collect();
    let loop_start = seekers
        .iter()
        .position(|&i| i >= lasso.prefix.len())
        .expect("every cycle passes a Seeker node");
    let len = seekers.len();
    let mut update = Vec::with_capacity(len * game.num_states());
    let mut act = Vec::with_capacity(len * game.num_states());
    for (j, &i) in seekers.iter().enumerate() {
        let label = ka.arena.label(seq[i], seq[next(i)]).expect("Seeker edges are labelled");
        let after = if j + 1 < len { j + 1 } else { loop_start };
        for _ in game.state_ids() {
            update.push(after as u32);
            act.push(Action(label));
        }
    }
    MooreStrategy::from_tables(len, 0, game.num_states(), update, act).expect("well formed")
}

/// Result of a deviation query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deviation {
    pub wins: bool,
    /// A deviating strategy achieving every target, when one exists.
    pub strategy: Option<MooreStrategy>,
    /// Winning topologies of the deviator under the witness.
    pub achieved: Option<TopologySet>,
    /// Memory used by the solver's plan on the arena.
    pub plan_memory: Option<usize>,
}

/// Whether one deviating strategy of `deviator` wins in every target topology
/// simultaneously, against the other players' strategies in `profile`.
pub fn can_deviator_win_set(
    game: &Mtg,
    profile: &Profile,
    deviator: Player,
    targets: TopologySet,
) -> Result<Deviation, AnalysisError> {
    let ka = build_knowledge_arena(game, profile, deviator, targets)?;
    let result = crate::parity::solve_conjunction(&ka.arena, &ka.active)?;
    let Some(witness) = result.witness else {
        return Ok(Deviation {
            wins: false,
            strategy: None,
            achieved: None,
            plan_memory: None,
        });
    };
    let strategy = strategy_from_plan(game, &ka, &witness.plan);
    let achieved = replay(game, profile, deviator, &strategy, targets)?;
    Ok(Deviation {
        wins: true,
        strategy: Some(strategy),
        achieved: Some(achieved),
        plan_memory: Some(witness.memory),
    })
}

/// Substitutes the witness and checks that it wins every target.
pub(crate) fn replay(
    game: &Mtg,
    profile: &Profile,
    deviator: Player,
    strategy: &MooreStrategy,
    targets: TopologySet,
) -> Result<TopologySet, AnalysisError> {
    let deviated = profile.substitute(deviator, strategy.clone());
    let achieved = crate::strategy::wintop(game, &deviated, deviator);
    if !targets.is_subset(achieved) {
        return Err(AnalysisError::WitnessReplay {
            player: game.player_name(deviator).to_string(),
            detail: format!(
                "witness wins {:?} but the targets are {:?}",
                game.topology_set_names(achieved),
                game.topology_set_names(targets)
            ),
        });
    }
    Ok(achieved)
}

/// Whether `deviator` has a strategy winning topology `t` alone, computed on
/// the one-player residual game of `t`.
pub fn residual_deviation(
    game: &Mtg,
    profile: &Profile,
    deviator: Player,
    t: Topology,
) -> Result<Deviation, AnalysisError> {
    game.check_topology(t)?;
    let target = TopologySet::singleton(t);
    check_request(game, deviator, target)?;
    let ka = complete(build_view(game, profile, deviator, target, target));
    let result = crate::parity::solve_one_player(&ka.arena, 0)?;
    let Some(lasso) = result.witness else {
        return Ok(Deviation {
            wins: false,
            strategy: None,
            achieved: None,
            plan_memory: None,
        });
    };
    let strategy = strategy_from_lasso(game, &ka, &lasso);
    let achieved = replay(game, profile, deviator, &strategy, target)?;
    Ok(Deviation {
        wins: true,
        plan_memory: Some(strategy.memory_size()),
        strategy: Some(strategy),
        achieved: Some(achieved),
    })
}
