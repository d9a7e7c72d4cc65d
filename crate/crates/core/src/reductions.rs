//! Reductions from equilibrium existence to partial-information games.
//!
//! Fix intended winning topologies `T_p` for every player. The conservative
//! reduction builds a three-player game: Eve proposes a full action profile at
//! every step, Adam takes over one player `p`, may deviate from Eve's
//! suggestion, and claims a set of topologies `T`, and Snake picks the
//! topology `t` the play runs in. The greedy reduction drops Snake and lets
//! Adam pick `t` himself. Eve and Adam observe only the underlying game
//! state, so their strategies correspond one-to-one to strategies of the
//! multi-topology game.
//!
//! Only states reachable from the initial state `q0` are built. The games are
//! for inspection and testing; nothing here solves them.

use std::collections::{HashMap, VecDeque};

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::GameError;
use crate::format::TargetsFile;
use crate::game::Mtg;
use crate::ids::{Action, Player, State, Topology, TopologySet};
use crate::strategy::{outcome, MooreStrategy, Profile};
use crate::targets::TargetTuple;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReductionKind {
    Cne,
    Gne,
}

impl ReductionKind {
    pub fn players(self) -> &'static [&'static str] {
        match self {
            ReductionKind::Cne => &["Eve", "Adam", "Snake"],
            ReductionKind::Gne => &["Eve", "Adam"],
        }
    }
}

/// A state of the reduction other than `q0`. `set` is Adam's claim and is
/// present only in the conservative reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HState {
    pub s: State,
    pub p: Player,
    pub set: Option<TopologySet>,
    pub t: Topology,
    pub b: bool,
}

/// A move out of `q0`. In the greedy reduction Adam picks the topology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Opening {
    pub player: Player,
    pub set: Option<TopologySet>,
    pub topology: Topology,
    pub to: usize,
}

/// Index of the initial state.
pub const Q0: usize = 0;

#[derive(Clone, Debug)]
pub struct PartialInfoGame {
    kind: ReductionKind,
    game: Mtg,
    targets: TargetTuple,
    family: Vec<TopologySet>,
    /// `None` only at index `Q0`.
    nodes: Vec<Option<HState>>,
    openings: Vec<Opening>,
    /// Interior successors, indexed by `eve_profile * |Act| + adam_action`.
    moves: Vec<Vec<usize>>,
    rank: Vec<u32>,
}

/// The sets Adam may claim for player `p`: `T_p ∪ {t}` for each `t`, then
/// every singleton, without repeats.
fn claims(game: &Mtg, tp: TopologySet) -> Vec<TopologySet> {
    let mut out = Vec::new();
    let with = game.topology_ids().map(|t| tp.with(t));
    let single = game.topology_ids().map(TopologySet::singleton);
    for set in with.chain(single) {
        if !out.contains(&set) {
            out.push(set);
        }
    }
    out
}

fn check_targets(game: &Mtg, targets: &TargetTuple) -> Result<(), GameError> {
    let all = game.all_topologies();
    if targets.0.len() != game.num_players() || targets.0.iter().any(|s| !s.is_subset(all)) {
        return Err(GameError::Input("targets do not match the game".into()));
    }
    Ok(())
}

pub fn build_cne_game(game: &Mtg, targets: &TargetTuple) -> Result<PartialInfoGame, GameError> {
    check_targets(game, targets)?;
    let mut family = Vec::new();
    for p in game.player_ids() {
        for set in claims(game, targets.get(p)) {
            if !family.contains(&set) {
                family.push(set);
            }
        }
    }
    let mut openings = Vec::new();
    for p in game.player_ids() {
        for set in claims(game, targets.get(p)) {
            for t in game.topology_ids() {
                openings.push((p, Some(set), t));
            }
        }
    }
    Ok(build(ReductionKind::Cne, game, targets, family, openings))
}

pub fn build_gne_game(game: &Mtg, targets: &TargetTuple) -> Result<PartialInfoGame, GameError> {
    check_targets(game, targets)?;
    let openings = game
        .player_ids()
        .flat_map(|p| game.topology_ids().map(move |t| (p, None, t)))
        .collect();
    Ok(build(ReductionKind::Gne, game, targets, Vec::new(), openings))
}

fn build(
    kind: ReductionKind,
    game: &Mtg,
    targets: &TargetTuple,
    family: Vec<TopologySet>,
    openings: Vec<(Player, Option<TopologySet>, Topology)>,
) -> PartialInfoGame {
    let mut h = PartialInfoGame {
        kind,
        game: game.clone(),
        targets: targets.clone(),
        family,
        nodes: vec![None],
        openings: Vec::new(),
        moves: vec![Vec::new()],
        rank: vec![0],
    };
    let mut index: HashMap<HState, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    let mut intern = |h: &mut PartialInfoGame, queue: &mut VecDeque<usize>, q: HState| {
        *index.entry(q).or_insert_with(|| {
            h.nodes.push(Some(q));
            h.moves.push(Vec::new());
            h.rank.push(h.rank_of(&q));
            queue.push_back(h.nodes.len() - 1);
            h.nodes.len() - 1
        })
    };
    for (player, set, topology) in openings {
        let q = HState {
            s: game.initial(),
            p: player,
            set,
            t: topology,
            b: true,
        };
        let to = intern(&mut h, &mut queue, q);
        h.openings.push(Opening {
            player,
            set,
            topology,
            to,
        });
    }
    let actions = game.num_actions();
    while let Some(v) = queue.pop_front() {
        let q = h.nodes[v].expect("interior state");
        let mut succ = Vec::with_capacity(game.num_profiles() * actions);
        for e in 0..game.num_profiles() {
            let suggested = game.decode_profile(e);
            for a in game.action_ids() {
                let played = suggested.with(q.p, a);
                let next = HState {
                    s: game.step_index(q.t, q.s, game.profile_index(played.actions())),
                    b: q.b && suggested.actions()[q.p.index()] == a,
                    ..q
                };
                succ.push(intern(&mut h, &mut queue, next));
            }
        }
        h.moves[v] = succ;
    }
    h
}

/// A lasso of reduction states; the prefix starts at `q0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HPlay {
    pub prefix: Vec<usize>,
    pub cycle: Vec<usize>,
}

impl PartialInfoGame {
    pub fn kind(&self) -> ReductionKind {
        self.kind
    }

    pub fn game(&self) -> &Mtg {
        &self.game
    }

    pub fn targets(&self) -> &TargetTuple {
        &self.targets
    }

    /// The claimable sets (conservative reduction only).
    pub fn family(&self) -> &[TopologySet] {
        &self.family
    }

    /// Number of states including `q0`.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    /// Number of states other than `q0`.
    pub fn interior_len(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn state(&self, q: usize) -> Option<&HState> {
        self.nodes[q].as_ref()
    }

    pub fn openings(&self) -> &[Opening] {
        &self.openings
    }

    /// Successor of interior state `q` when Eve suggests the profile with
    /// index `eve` and Adam plays `adam`.
    pub fn successor(&self, q: usize, eve: usize, adam: Action) -> usize {
        self.moves[q][eve * self.game.num_actions() + adam.index()]
    }

    pub fn successors(&self, q: usize) -> Vec<usize> {
        let mut out: Vec<usize> = if q == Q0 {
            self.openings.iter().map(|o| o.to).collect()
        } else {
            self.moves[q].clone()
        };
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn rank(&self, q: usize) -> u32 {
        self.rank[q]
    }

    fn rank_of(&self, q: &HState) -> u32 {
        let tp = self.targets.get(q.p);
        let base = self.game.priority(q.t, q.p, q.s);
        match self.kind {
            ReductionKind::Cne => {
                let set = q.set.expect("conservative states carry a claim");
                let strict = tp.is_strict_subset(set);
                let must_win = q.b && tp.contains(q.t);
                // Outside the claim, or a strict claim that still owes t.
                if !set.contains(q.t) || (must_win && strict) {
                    1
                } else if must_win {
                    base
                } else if strict {
                    base + 1
                } else {
                    0
                }
            }
            ReductionKind::Gne => {
                if !tp.contains(q.t) {
                    base + 1
                } else if q.b {
                    base
                } else {
                    0
                }
            }
        }
    }

    /// Observation of `q` for player `who` (index into [`ReductionKind::players`]).
    /// Eve and Adam see `0` at `q0` and `1 + s` elsewhere; Snake sees the state.
    pub fn observation(&self, who: usize, q: usize) -> usize {
        match (who, &self.nodes[q]) {
            (2, _) => q,
            (_, None) => 0,
            (_, Some(h)) => 1 + h.s.index(),
        }
    }

    /// Number of observation values Eve and Adam can receive.
    pub fn num_observations(&self) -> usize {
        1 + self.game.num_states()
    }

    /// Non-empty observation classes of `who`, ordered by observation value.
    pub fn observation_classes(&self, who: usize) -> Vec<Vec<usize>> {
        let mut classes: IndexMap<usize, Vec<usize>> = IndexMap::new();
        for q in 0..self.len() {
            classes.entry(self.observation(who, q)).or_default().push(q);
        }
        classes.sort_keys();
        classes.into_values().collect()
    }

    fn check_play(&self, play: &HPlay) -> Result<(), GameError> {
        let bad = |m: &str| GameError::Input(format!("not a play of the reduction: {m}"));
        if play.prefix.first() != Some(&Q0) {
            return Err(bad("the prefix must start at q0"));
        }
        if play.cycle.is_empty() {
            return Err(bad("empty cycle"));
        }
        if play.prefix.iter().chain(&play.cycle).any(|&q| q >= self.len()) {
            return Err(bad("unknown state"));
        }
        let walk: Vec<usize> = play.prefix.iter().chain(&play.cycle).copied().chain([play.cycle[0]]).collect();
        for w in walk.windows(2) {
            if !self.successors(w[0]).contains(&w[1]) {
                return Err(bad("missing transition"));
            }
        }
        Ok(())
    }

    /// Whether the play wins for Eve under the rank function.
    pub fn rank_objective(&self, play: &HPlay) -> Result<bool, GameError> {
        self.check_play(play)?;
        Ok(play.cycle.iter().map(|&q| self.rank[q]).min().is_some_and(|m| m % 2 == 0))
    }

    /// Whether the play wins for Eve, evaluated clause by clause from the
    /// claim, the obey bit and the projected play, without using ranks.
    pub fn semantic_objective(&self, play: &HPlay) -> Result<bool, GameError> {
        self.check_play(play)?;
        let q = self.nodes[play.cycle[0]].expect("q0 has no incoming moves");
        let obey = play.prefix[1..].iter().chain(&play.cycle).all(|&v| self.nodes[v].expect("interior").b);
        let projected: Vec<State> = play.cycle.iter().map(|&v| self.nodes[v].expect("interior").s).collect();
        let wins = self.game.parity_of(q.t, q.p, &projected);
        let tp = self.targets.get(q.p);
        let obeyed_target = !(obey && tp.contains(q.t)) || wins;
        Ok(match self.kind {
            ReductionKind::Cne => {
                let set = q.set.expect("conservative states carry a claim");
                let snake_in_claim = set.contains(q.t);
                let claim_fails = !tp.is_strict_subset(set) || !wins;
                snake_in_claim && obeyed_target && claim_fails
            }
            ReductionKind::Gne => obeyed_target && (tp.contains(q.t) || !wins),
        })
    }

    /// Checks that player, claim and topology never change after `q0` and
    /// that the obey bit never goes from false back to true.
    pub fn check_invariants(&self) -> Result<(), String> {
        for v in 1..self.len() {
            let q = self.nodes[v].expect("interior");
            for &w in &self.moves[v] {
                let r = self.nodes[w].expect("interior");
                if (q.p, q.set, q.t) != (r.p, r.set, r.t) {
                    return Err(format!("{} -> {} changes the fixed components", self.name(v), self.name(w)));
                }
                if r.b && !q.b {
                    return Err(format!("{} -> {} restores the obey bit", self.name(v), self.name(w)));
                }
            }
        }
        Ok(())
    }

    /// Upper bound on the number of interior states.
    pub fn size_bound(&self) -> usize {
        let g = &self.game;
        let base = 2 * g.num_states() * g.num_players() * g.num_topologies();
        match self.kind {
            ReductionKind::Cne => base * self.family.len(),
            ReductionKind::Gne => base,
        }
    }

    pub fn name(&self, q: usize) -> String {
        let Some(h) = self.nodes[q] else {
            return "q0".into();
        };
        let g = &self.game;
        let mut parts = vec![g.state_name(h.s).to_string(), g.player_name(h.p).to_string()];
        if let Some(set) = h.set {
            parts.push(format!("{{{}}}", g.topology_set_names(set).join(",")));
        }
        parts.push(g.topology_name(h.t).to_string());
        parts.push(if h.b { "1" } else { "0" }.into());
        parts.join("|")
    }

    pub fn to_file(&self) -> HFile {
        let g = &self.game;
        let a = g.num_actions();
        let states = (0..self.len())
            .map(|q| {
                let h = self.nodes[q];
                HStateFile {
                    name: self.name(q),
                    state: h.map(|h| g.state_name(h.s).to_string()),
                    player: h.map(|h| g.player_name(h.p).to_string()),
                    topologies: h.and_then(|h| h.set).map(|s| g.topology_set_names(s)),
                    topology: h.map(|h| g.topology_name(h.t).to_string()),
                    obey: h.map(|h| h.b),
                    rank: self.rank[q],
                }
            })
            .collect();
        let openings = self
            .openings
            .iter()
            .map(|o| OpeningFile {
                player: g.player_name(o.player).to_string(),
                topologies: o.set.map(|s| g.topology_set_names(s)),
                topology: g.topology_name(o.topology).to_string(),
                to: self.name(o.to),
            })
            .collect();
        let mut moves = Vec::new();
        for v in 1..self.len() {
            for (i, &w) in self.moves[v].iter().enumerate() {
                moves.push(MoveFile {
                    from: self.name(v),
                    eve: g.decode_profile(i / a).actions().iter().map(|&x| g.action_name(x).to_string()).collect(),
                    adam: g.action_name(Action::from_index(i % a)).to_string(),
                    to: self.name(w),
                });
            }
        }
        let observations = self
            .kind
            .players()
            .iter()
            .enumerate()
            .map(|(who, name)| {
                let classes = self
                    .observation_classes(who)
                    .into_iter()
                    .map(|c| c.into_iter().map(|q| self.name(q)).collect())
                    .collect();
                (name.to_string(), classes)
            })
            .collect();
        HFile {
            kind: self.kind,
            players: self.kind.players().iter().map(|s| s.to_string()).collect(),
            targets: self.targets.to_file(g),
            family: self.family.iter().map(|&s| g.topology_set_names(s)).collect(),
            initial: "q0".into(),
            states,
            openings,
            moves,
            observations,
        }
    }
}

/// On-disk form of a reduction game.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HFile {
    pub kind: ReductionKind,
    pub players: Vec<String>,
    pub targets: TargetsFile,
    pub family: Vec<Vec<String>>,
    pub initial: String,
    pub states: Vec<HStateFile>,
    pub openings: Vec<OpeningFile>,
    pub moves: Vec<MoveFile>,
    /// Player → observation classes, each a list of state names.
    pub observations: IndexMap<String, Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HStateFile {
    pub name: String,
    pub state: Option<String>,
    pub player: Option<String>,
    pub topologies: Option<Vec<String>>,
    pub topology: Option<String>,
    pub obey: Option<bool>,
    pub rank: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpeningFile {
    pub player: String,
    pub topologies: Option<Vec<String>>,
    pub topology: String,
    pub to: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MoveFile {
    pub from: String,
    pub eve: Vec<String>,
    pub adam: String,
    pub to: String,
}

/// A Moore machine reading observation values instead of states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObsStrategy {
    observations: usize,
    memory: usize,
    init: u32,
    update: Vec<u32>,
    act: Vec<u32>,
}

impl ObsStrategy {
    /// Tables are indexed by `memory * observations + observation`.
    pub fn new(observations: usize, memory: usize, init: u32, update: Vec<u32>, act: Vec<u32>) -> Result<Self, GameError> {
        let cells = observations * memory;
        if memory == 0 || init as usize >= memory || update.len() != cells || act.len() != cells {
            return Err(GameError::Input("malformed observation strategy tables".into()));
        }
        if update.iter().any(|&m| m as usize >= memory) {
            return Err(GameError::Input("observation strategy updates to an unknown memory".into()));
        }
        Ok(ObsStrategy {
            observations,
            memory,
            init,
            update,
            act,
        })
    }

    pub fn observations(&self) -> usize {
        self.observations
    }

    pub fn memory_size(&self) -> usize {
        self.memory
    }

    pub fn next(&self, m: u32, o: usize) -> u32 {
        self.update[m as usize * self.observations + o]
    }

    pub fn action(&self, m: u32, o: usize) -> u32 {
        self.act[m as usize * self.observations + o]
    }

    /// The machine restricted to observations `1 + s`, started after reading `q0`.
    fn on_states(&self, game: &Mtg, decode: impl Fn(u32) -> Action) -> MooreStrategy {
        let s = game.num_states();
        let mut update = Vec::with_capacity(self.memory * s);
        let mut act = Vec::with_capacity(self.memory * s);
        for m in 0..self.memory as u32 {
            for o in 1..=s {
                update.push(self.next(m, o));
                act.push(decode(self.action(m, o)));
            }
        }
        MooreStrategy::from_tables(self.memory, self.next(self.init, 0), s, update, act)
            .expect("tables sized from the machine")
    }
}

/// Adam's strategy: the opening choice followed by a machine over observations.
/// `topology` is set exactly in the greedy reduction.
#[derive(Clone, Debug)]
pub struct AdamStrategy {
    pub player: Player,
    pub set: Option<TopologySet>,
    pub topology: Option<Topology>,
    pub machine: ObsStrategy,
}

fn check_machine(h: &PartialInfoGame, m: &ObsStrategy, values: usize, who: &str) -> Result<(), GameError> {
    if m.observations != h.num_observations() {
        return Err(GameError::Input(format!(
            "{who}'s strategy reads {} observations but the game has {}",
            m.observations,
            h.num_observations()
        )));
    }
    if m.act.iter().any(|&a| a as usize >= values) {
        return Err(GameError::Input(format!("{who}'s strategy plays an unknown action")));
    }
    Ok(())
}

/// The profile of the multi-topology game that Eve's strategy encodes.
pub fn gamma_eve(h: &PartialInfoGame, eve: &ObsStrategy) -> Result<Profile, GameError> {
    let g = &h.game;
    check_machine(h, eve, g.num_profiles(), "Eve")?;
    let strategies = g
        .player_ids()
        .map(|p| eve.on_states(g, |e| g.decode_profile(e as usize).actions()[p.index()]))
        .collect();
    Profile::new(g, strategies)
}

/// The deviating player and strategy that Adam's strategy encodes.
pub fn gamma_adam(h: &PartialInfoGame, adam: &AdamStrategy) -> Result<MooreStrategy, GameError> {
    let g = &h.game;
    check_machine(h, &adam.machine, g.num_actions(), "Adam")?;
    Ok(adam.machine.on_states(g, Action))
}

/// Comparison of a reduction play with the plays it should project to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaReport {
    pub player: Player,
    pub topology: Topology,
    /// Positions compared; enough to decide equality of the infinite plays.
    pub positions: usize,
    pub obey: bool,
    /// First projected position where the obey bit is false.
    pub disobeyed_at: Option<usize>,
    /// First position where the projection differs from the deviated play.
    pub deviated_mismatch: Option<usize>,
    /// First position where the projection differs from the undeviated play;
    /// checked only when Adam obeys.
    pub obeyed_mismatch: Option<usize>,
}

impl GammaReport {
    pub fn consistent(&self) -> bool {
        self.deviated_mismatch.is_none() && self.obeyed_mismatch.is_none()
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The play of the reduction under the given strategies. `snake` is
/// required in the conservative reduction and ignored otherwise.
pub fn simulate(
    h: &PartialInfoGame,
    eve: &ObsStrategy,
    adam: &AdamStrategy,
    snake: Option<Topology>,
) -> Result<HPlay, GameError> {
    let g = &h.game;
    check_machine(h, eve, g.num_profiles(), "Eve")?;
    check_machine(h, &adam.machine, g.num_actions(), "Adam")?;
    let t = match h.kind {
        ReductionKind::Cne => snake.ok_or_else(|| GameError::Input("Snake must choose a topology".into()))?,
        ReductionKind::Gne => adam.topology.ok_or_else(|| GameError::Input("Adam must choose a topology".into()))?,
    };
    let opening = h
        .openings
        .iter()
        .find(|o| o.player == adam.player && o.set == adam.set && o.topology == t)
        .ok_or_else(|| GameError::Input("Adam's opening is not available in this reduction".into()))?;

    // Run until a configuration repeats.
    let mut em = eve.next(eve.init, 0);
    let mut am = adam.machine.next(adam.machine.init, 0);
    let mut q = opening.to;
    let mut seen: HashMap<(usize, u32, u32), usize> = HashMap::new();
    let mut walk = vec![Q0];
    let loop_start = loop {
        if let Some(&i) = seen.get(&(q, em, am)) {
            break i;
        }
        seen.insert((q, em, am), walk.len());
        walk.push(q);
        let o = h.observation(0, q);
        let next = h.successor(q, eve.action(em, o) as usize, Action(adam.machine.action(am, o)));
        em = eve.next(em, o);
        am = adam.machine.next(am, o);
        q = next;
    };
    let cycle = walk.split_off(loop_start);
    Ok(HPlay { prefix: walk, cycle })
}

/// Plays Eve, Adam and Snake in the reduction and compares the projection of
/// the result with the corresponding plays of the multi-topology game.
/// `snake` is required in the conservative reduction and ignored otherwise.
pub fn gamma_roundtrip(
    h: &PartialInfoGame,
    eve: &ObsStrategy,
    adam: &AdamStrategy,
    snake: Option<Topology>,
) -> Result<GammaReport, GameError> {
    let g = &h.game;
    let profile = gamma_eve(h, eve)?;
    let deviation = gamma_adam(h, adam)?;
    let play = simulate(h, eve, adam, snake)?;
    let first = h.nodes[play.prefix.get(1).copied().unwrap_or(play.cycle[0])].expect("interior");
    let t = first.t;

    // Position i of the projection is state i + 1 of the play.
    let projected = |i: usize| {
        let k = i + 1;
        let v = if k < play.prefix.len() {
            play.prefix[k]
        } else {
            play.cycle[(k - play.prefix.len()) % play.cycle.len()]
        };
        let q = h.nodes[v].expect("interior");
        (q.s, q.b)
    };

    let pi = outcome(g, t, &profile);
    let pi_dev = outcome(g, t, &profile.substitute(adam.player, deviation));
    let cycles = [play.cycle.len(), pi.cycle.len(), pi_dev.cycle.len()];
    let lcm = cycles.iter().fold(1, |acc, &c| acc / gcd(acc, c) * c);
    let positions = play.prefix.len().max(pi.prefix.len()).max(pi_dev.prefix.len()) + lcm;

    let disobeyed_at = (0..positions).find(|&i| !projected(i).1);
    let obey = disobeyed_at.is_none();
    let deviated_mismatch = (0..positions).find(|&i| projected(i).0 != pi_dev.at(i));
    let obeyed_mismatch = if obey {
        (0..positions).find(|&i| projected(i).0 != pi.at(i))
    } else {
        None
    };
    Ok(GammaReport {
        player: adam.player,
        topology: t,
        positions,
        obey,
        disobeyed_at,
        deviated_mismatch,
        obeyed_mismatch,
    })
}
