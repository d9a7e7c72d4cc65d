//! Finite-memory observation-based strategies and their outcomes.
//!
//! A [`MooreStrategy`] folds the observed state history through `update` and
//! reads its action from `act(memory, current state)`: on history `s₀…s_k` the
//! memory is the fold over `s₀…s_{k-1}`. One memory state is a memoryless
//! strategy. Strategies never see other players' actions or the topology.

use std::collections::HashMap;

use crate::error::GameError;
use crate::format::{self, ActRow, ProfileFile, StrategyFile, UpdateRow};
use crate::game::{Lasso, Mtg};
use crate::ids::{Action, Player, State, Topology, TopologySet};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MooreStrategy {
    memory: Vec<String>,
    init: u32,
    states: usize,
    /// `[m * states + s]`
    update: Vec<u32>,
    /// `[m * states + s]`
    act: Vec<Action>,
}

impl MooreStrategy {
    pub fn new(
        memory: Vec<String>,
        init: u32,
        states: usize,
        update: Vec<u32>,
        act: Vec<Action>,
    ) -> Result<Self, GameError> {
        let m = memory.len();
        if m == 0 {
            return Err(GameError::Input("strategy has no memory states".into()));
        }
        if init as usize >= m {
            return Err(GameError::Input("initial memory out of range".into()));
        }
        if update.len() != m * states || act.len() != m * states {
            return Err(GameError::Input(format!(
                "strategy tables must have {} entries",
                m * states
            )));
        }
        if update.iter().any(|&x| x as usize >= m) {
            return Err(GameError::Input("update table leaves the memory set".into()));
        }
        let mut names = memory.clone();
        names.sort();
        names.dedup();
        if names.len() != m {
            return Err(GameError::Input("duplicate memory state names".into()));
        }
        Ok(MooreStrategy {
            memory,
            init,
            states,
            update,
            act,
        })
    }

    /// Builds a strategy with memory states named `m0, m1, …`.
    pub fn from_tables(
        memory: usize,
        init: u32,
        states: usize,
        update: Vec<u32>,
        act: Vec<Action>,
    ) -> Result<Self, GameError> {
        Self::new(
            (0..memory).map(|i| format!("m{i}")).collect(),
            init,
            states,
            update,
            act,
        )
    }

    /// One memory state; the action depends on the current state only.
    pub fn memoryless(act: Vec<Action>) -> Self {
        let states = act.len();
        MooreStrategy {
            memory: vec!["m0".into()],
            init: 0,
            states,
            update: vec![0; states],
            act,
        }
    }

    pub fn constant(game: &Mtg, a: Action) -> Self {
        Self::memoryless(vec![a; game.num_states()])
    }

    pub fn memory_size(&self) -> usize {
        self.memory.len()
    }

    pub fn memory_names(&self) -> &[String] {
        &self.memory
    }

    pub fn init(&self) -> u32 {
        self.init
    }

    pub fn num_states(&self) -> usize {
        self.states
    }

    #[inline]
    pub fn next(&self, m: u32, s: State) -> u32 {
        self.update[m as usize * self.states + s.index()]
    }

    #[inline]
    pub fn action(&self, m: u32, s: State) -> Action {
        self.act[m as usize * self.states + s.index()]
    }

    /// The action on a full state history.
    pub fn respond(&self, history: &[State]) -> Action {
        let (last, past) = history.split_last().expect("nonempty history");
        let m = past.iter().fold(self.init, |m, &s| self.next(m, s));
        self.action(m, *last)
    }

    pub fn update_table(&self) -> &[u32] {
        &self.update
    }

    pub fn act_table(&self) -> &[Action] {
        &self.act
    }

    fn check_fits(&self, game: &Mtg) -> Result<(), GameError> {
        if self.states != game.num_states() {
            return Err(GameError::Input(format!(
                "strategy covers {} states, game has {}",
                self.states,
                game.num_states()
            )));
        }
        if self.act.iter().any(|a| a.index() >= game.num_actions()) {
            return Err(GameError::Input("strategy uses an unknown action".into()));
        }
        Ok(())
    }

    pub fn from_file(game: &Mtg, file: &StrategyFile) -> Result<Self, GameError> {
        let memory = file.memory.clone();
        let mem_index = |name: &str| -> Result<u32, GameError> {
            memory
                .iter()
                .position(|m| m == name)
                .map(|i| i as u32)
                .ok_or_else(|| GameError::Unknown {
                    kind: "memory state",
                    name: name.to_string(),
                })
        };
        let m = memory.len();
        let s = game.num_states();
        let init = mem_index(&file.init)?;
        let mut update = vec![None; m * s];
        for row in &file.update {
            let i = mem_index(&row.memory)? as usize * s + game.state(&row.state)?.index();
            let next = mem_index(&row.next)?;
            if update[i].replace(next).is_some_and(|prev| prev != next) {
                return Err(GameError::Input(format!(
                    "player `{}`: conflicting update rows for ({}, {})",
                    file.player, row.memory, row.state
                )));
            }
        }
        let mut act = vec![None; m * s];
        for row in &file.act {
            let i = mem_index(&row.memory)? as usize * s + game.state(&row.state)?.index();
            let a = game.action(&row.action)?;
            if act[i].replace(a).is_some_and(|prev| prev != a) {
                return Err(GameError::Input(format!(
                    "player `{}`: conflicting act rows for ({}, {})",
                    file.player, row.memory, row.state
                )));
            }
        }
        let missing = |kind: &str, i: usize| {
            GameError::Input(format!(
                "player `{}`: missing {kind} row for ({}, {})",
                file.player,
                memory[i / s],
                game.state_name(State::from_index(i % s))
            ))
        };
        let update = update
            .iter()
            .enumerate()
            .map(|(i, x)| x.ok_or_else(|| missing("update", i)))
            .collect::<Result<Vec<_>, _>>()?;
        let act = act
            .iter()
            .enumerate()
            .map(|(i, x)| x.ok_or_else(|| missing("act", i)))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(memory.clone(), init, s, update, act)
    }

    pub fn to_file(&self, game: &Mtg, player: Player) -> StrategyFile {
        let rows = (0..self.memory.len()).flat_map(|m| game.state_ids().map(move |s| (m, s)));
        StrategyFile {
            player: game.player_name(player).to_string(),
            memory: self.memory.clone(),
            init: self.memory[self.init as usize].clone(),
            update: rows
                .clone()
                .map(|(m, s)| UpdateRow {
                    memory: self.memory[m].clone(),
                    state: game.state_name(s).to_string(),
                    next: self.memory[self.next(m as u32, s) as usize].clone(),
                })
                .collect(),
            act: rows
                .map(|(m, s)| ActRow {
                    memory: self.memory[m].clone(),
                    state: game.state_name(s).to_string(),
                    action: game.action_name(self.action(m as u32, s)).to_string(),
                })
                .collect(),
        }
    }
}

/// One strategy per player, in player order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Profile {
    strategies: Vec<MooreStrategy>,
}

impl Profile {
    pub fn new(game: &Mtg, strategies: Vec<MooreStrategy>) -> Result<Self, GameError> {
        if strategies.len() != game.num_players() {
            return Err(GameError::Input(format!(
                "profile has {} strategies, game has {} players",
                strategies.len(),
                game.num_players()
            )));
        }
        for s in &strategies {
            s.check_fits(game)?;
        }
        Ok(Profile { strategies })
    }

    /// Checks that every strategy matches the game's states and actions.
    pub fn check_fits(&self, game: &Mtg) -> Result<(), GameError> {
        if self.strategies.len() != game.num_players() {
            return Err(GameError::Input("profile does not match the game's players".into()));
        }
        self.strategies.iter().try_for_each(|s| s.check_fits(game))
    }

    pub fn strategy(&self, p: Player) -> &MooreStrategy {
        &self.strategies[p.index()]
    }

    pub fn strategies(&self) -> &[MooreStrategy] {
        &self.strategies
    }

    /// `σ[p → strategy]`.
    pub fn substitute(&self, p: Player, strategy: MooreStrategy) -> Profile {
        let mut strategies = self.strategies.clone();
        strategies[p.index()] = strategy;
        Profile { strategies }
    }

    pub fn from_file(game: &Mtg, file: &ProfileFile) -> Result<Self, GameError> {
        let mut slots: Vec<Option<MooreStrategy>> = vec![None; game.num_players()];
        for sf in &file.strategies {
            let p = game.player(&sf.player)?;
            let strategy = MooreStrategy::from_file(game, sf)?;
            if slots[p.index()].replace(strategy).is_some() {
                return Err(GameError::Input(format!(
                    "player `{}` has two strategies",
                    sf.player
                )));
            }
        }
        let strategies = slots
            .into_iter()
            .enumerate()
            .map(|(i, s)| {
                s.ok_or_else(|| {
                    GameError::Input(format!(
                        "no strategy for player `{}`",
                        game.player_name(Player::from_index(i))
                    ))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Profile::new(game, strategies)
    }

    pub fn from_json(game: &Mtg, text: &str) -> Result<Self, GameError> {
        let file: ProfileFile = format::from_json(text)?;
        Self::from_file(game, &file)
    }

    pub fn to_file(&self, game: &Mtg) -> ProfileFile {
        ProfileFile {
            strategies: game
                .player_ids()
                .map(|p| self.strategy(p).to_file(game, p))
                .collect(),
        }
    }

    pub fn to_json(&self, game: &Mtg) -> String {
        format::to_json(&self.to_file(game))
    }
}

/// A strategy-table entry, used when a profile is only partially defined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Slot {
    Act { player: Player, memory: u32, state: State },
    Update { player: Player, memory: u32, state: State },
}

/// A lookup hit an entry that has not been fixed yet.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Unassigned(pub Slot);

/// Read access to the strategies of a (possibly partial) profile.
pub trait ProfileView {
    fn initial_memory(&self, p: Player) -> u32;
    fn act(&self, p: Player, m: u32, s: State) -> Result<Action, Unassigned>;
    fn update(&self, p: Player, m: u32, s: State) -> Result<u32, Unassigned>;
}

impl ProfileView for Profile {
    fn initial_memory(&self, p: Player) -> u32 {
        self.strategies[p.index()].init
    }
    fn act(&self, p: Player, m: u32, s: State) -> Result<Action, Unassigned> {
        Ok(self.strategies[p.index()].action(m, s))
    }
    fn update(&self, p: Player, m: u32, s: State) -> Result<u32, Unassigned> {
        Ok(self.strategies[p.index()].next(m, s))
    }
}

/// `base[player → strategy]` without copying the base.
pub struct Deviation<'a, V: ?Sized> {
    pub base: &'a V,
    pub player: Player,
    pub strategy: &'a MooreStrategy,
}

impl<V: ProfileView + ?Sized> ProfileView for Deviation<'_, V> {
    fn initial_memory(&self, p: Player) -> u32 {
        if p == self.player {
            self.strategy.init
        } else {
            self.base.initial_memory(p)
        }
    }
    fn act(&self, p: Player, m: u32, s: State) -> Result<Action, Unassigned> {
        if p == self.player {
            Ok(self.strategy.action(m, s))
        } else {
            self.base.act(p, m, s)
        }
    }
    fn update(&self, p: Player, m: u32, s: State) -> Result<u32, Unassigned> {
        if p == self.player {
            Ok(self.strategy.next(m, s))
        } else {
            self.base.update(p, m, s)
        }
    }
}

pub(crate) fn complete<T>(r: Result<T, Unassigned>) -> T {
    match r {
        Ok(x) => x,
        Err(Unassigned(slot)) => unreachable!("complete profile reported unassigned {slot:?}"),
    }
}

/// Simulates the product of game state and memory vector until the first
/// repetition, and splits the play there.
pub fn outcome_view<V: ProfileView + ?Sized>(
    game: &Mtg,
    t: Topology,
    view: &V,
) -> Result<Lasso, Unassigned> {
    let players: Vec<Player> = game.player_ids().collect();
    let mut memory: Vec<u32> = players.iter().map(|&p| view.initial_memory(p)).collect();
    let mut state = game.initial();
    let mut seen: HashMap<(State, Vec<u32>), usize> = HashMap::new();
    let mut trace = Vec::new();
    let mut actions = vec![Action(0); players.len()];
    loop {
        if let Some(&start) = seen.get(&(state, memory.clone())) {
            let cycle = trace.split_off(start);
            return Ok(Lasso::new(trace, cycle));
        }
        seen.insert((state, memory.clone()), trace.len());
        trace.push(state);
        for &p in &players {
            actions[p.index()] = view.act(p, memory[p.index()], state)?;
        }
        for &p in &players {
            memory[p.index()] = view.update(p, memory[p.index()], state)?;
        }
        state = game.step_index(t, state, game.profile_index(&actions));
    }
}

/// The play of `profile` in topology `t`.
pub fn outcome(game: &Mtg, t: Topology, profile: &Profile) -> Lasso {
    complete(outcome_view(game, t, profile))
}

/// Players whose objective in `t` is met by the outcome of `profile`.
pub fn winners(game: &Mtg, t: Topology, profile: &Profile) -> Vec<Player> {
    let lasso = outcome(game, t, profile);
    game.player_ids()
        .filter(|&p| game.parity_of(t, p, &lasso.cycle))
        .collect()
}

pub fn wintop_view<V: ProfileView + ?Sized>(
    game: &Mtg,
    view: &V,
    p: Player,
) -> Result<TopologySet, Unassigned> {
    let mut set = TopologySet::EMPTY;
    for t in game.topology_ids() {
        let lasso = outcome_view(game, t, view)?;
        if game.parity_of(t, p, &lasso.cycle) {
            set.insert(t);
        }
    }
    Ok(set)
}

/// Winning topologies of every player, computed from one outcome per topology.
pub fn wintops_view<V: ProfileView + ?Sized>(
    game: &Mtg,
    view: &V,
) -> Result<Vec<TopologySet>, Unassigned> {
    let mut sets = vec![TopologySet::EMPTY; game.num_players()];
    for t in game.topology_ids() {
        let lasso = outcome_view(game, t, view)?;
        for p in game.player_ids() {
            if game.parity_of(t, p, &lasso.cycle) {
                sets[p.index()].insert(t);
            }
        }
    }
    Ok(sets)
}

/// Topologies in which `p` wins under `profile`.
pub fn wintop(game: &Mtg, profile: &Profile, p: Player) -> TopologySet {
    complete(wintop_view(game, profile, p))
}

pub fn wintops(game: &Mtg, profile: &Profile) -> Vec<TopologySet> {
    complete(wintops_view(game, profile))
}

/// Every Moore strategy with at most `bound` memory states, once per
/// memory-renaming class.
///
/// Order: memory size ascending; within a size, the update table (row-major
/// over `(memory, state)`, first entry most significant) and then the act table
/// are enumerated lexicographically. The initial memory is always `m0`; a
/// strategy is emitted iff no renaming that fixes `m0` yields a
/// lexicographically smaller `(update, act)` pair.
pub fn enumerate_strategies(game: &Mtg, bound: usize) -> Result<StrategyEnumerator, GameError> {
    if bound < 1 {
        return Err(GameError::Input("memory bound must be at least 1".into()));
    }
    Ok(StrategyEnumerator::new(game.num_states(), game.num_actions(), bound))
}

pub struct StrategyEnumerator {
    states: usize,
    actions: usize,
    bound: usize,
    size: usize,
    update: Vec<u32>,
    act: Vec<u32>,
    /// Non-identity renamings that map the current update table to itself.
    automorphisms: Vec<Vec<u32>>,
    fresh_size: bool,
    done: bool,
}

impl StrategyEnumerator {
    fn new(states: usize, actions: usize, bound: usize) -> Self {
        StrategyEnumerator {
            states,
            actions,
            bound,
            size: 1,
            update: vec![0; states],
            act: vec![0; states],
            automorphisms: Vec::new(),
            fresh_size: true,
            done: actions == 0 || states == 0,
        }
    }

    /// Renamings of `0..m` fixing 0, excluding the identity.
    fn renamings(m: usize) -> Vec<Vec<u32>> {
        crate::game::permutations(m - 1)
            .into_iter()
            .skip(1)
            .map(|rest| {
                std::iter::once(0)
                    .chain(rest.into_iter().map(|x| x as u32 + 1))
                    .collect()
            })
            .collect()
    }

    fn rename_update(&self, pi: &[u32]) -> Vec<u32> {
        let s = self.states;
        let mut out = vec![0; self.update.len()];
        for m in 0..self.size {
            for st in 0..s {
                out[pi[m] as usize * s + st] = pi[self.update[m * s + st] as usize];
            }
        }
        out
    }

    fn rename_act(&self, pi: &[u32]) -> Vec<u32> {
        let s = self.states;
        let mut out = vec![0; self.act.len()];
        for m in 0..self.size {
            out[pi[m] as usize * s..(pi[m] as usize + 1) * s]
                .copy_from_slice(&self.act[m * s..(m + 1) * s]);
        }
        out
    }

    /// Classifies the current update table: `None` if some renaming makes it
    /// smaller, otherwise the renamings that preserve it.
    fn classify_update(&self) -> Option<Vec<Vec<u32>>> {
        let mut keep = Vec::new();
        for pi in Self::renamings(self.size) {
            let renamed = self.rename_update(&pi);
            match renamed.cmp(&self.update) {
                std::cmp::Ordering::Less => return None,
                std::cmp::Ordering::Equal => keep.push(pi),
                std::cmp::Ordering::Greater => {}
            }
        }
        Some(keep)
    }

    fn act_is_canonical(&self) -> bool {
        self.automorphisms
            .iter()
            .all(|pi| self.rename_act(pi) >= self.act)
    }

    fn increment(table: &mut [u32], radix: u32) -> bool {
        for x in table.iter_mut().rev() {
            *x += 1;
            if *x < radix {
                return true;
            }
            *x = 0;
        }
        false
    }

    /// Advances to the next canonical update table, possibly growing the memory size.
    fn next_update(&mut self) -> bool {
        loop {
            if !Self::increment(&mut self.update, self.size as u32) {
                self.size += 1;
                if self.size > self.bound {
                    return false;
                }
                self.update = vec![0; self.size * self.states];
                self.act = vec![0; self.size * self.states];
            }
            if let Some(autos) = self.classify_update() {
                self.automorphisms = autos;
                return true;
            }
        }
    }

    fn current(&self) -> MooreStrategy {
        MooreStrategy::from_tables(
            self.size,
            0,
            self.states,
            self.update.clone(),
            self.act.iter().map(|&a| Action(a)).collect(),
        )
        .expect("enumerated tables are well formed")
    }
}

impl Iterator for StrategyEnumerator {
    type Item = MooreStrategy;

    fn next(&mut self) -> Option<MooreStrategy> {
        if self.done {
            return None;
        }
        loop {
            if self.fresh_size {
                self.fresh_size = false;
                // size 1: the single update table is trivially canonical
                self.automorphisms = Vec::new();
            } else if !Self::increment(&mut self.act, self.actions as u32) {
                if !self.next_update() {
                    self.done = true;
                    return None;
                }
                self.act.iter_mut().for_each(|x| *x = 0);
            }
            if self.act_is_canonical() {
                return Some(self.current());
            }
        }
    }
}

/// All memoryless strategies, in lexicographic order of their act tables.
pub fn memoryless_strategies(game: &Mtg) -> impl Iterator<Item = MooreStrategy> + '_ {
    enumerate_strategies(game, 1).expect("bound 1 is valid")
}

/// Every profile of memoryless strategies, player 0 most significant.
pub fn memoryless_profiles(game: &Mtg) -> Vec<Profile> {
    let per_player: Vec<MooreStrategy> = memoryless_strategies(game).collect();
    let n = game.num_players();
    let k = per_player.len();
    let total = k.pow(n as u32);
    (0..total)
        .map(|mut idx| {
            let mut strategies = vec![per_player[0].clone(); n];
            for slot in strategies.iter_mut().rev() {
                *slot = per_player[idx % k].clone();
                idx /= k;
            }
            Profile::new(game, strategies).expect("memoryless strategies fit")
        })
        .collect()
}
