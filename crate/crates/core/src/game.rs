//! Multi-topology games: data model, loading and validation, and the
//! deterministic semantics (transition step, parity evaluation of lassos).

use std::collections::{HashMap, HashSet};
use std::fmt;

use indexmap::IndexMap;

use crate::error::GameError;
use crate::format::{self, GameFile, TopologyFile, TransitionRow};
use crate::ids::{Action, Player, State, Topology, TopologySet, MAX_TOPOLOGIES};

/// Upper bound on `|Top| · |S| · |Act|^|Pla|`, the size of the explicit transition tables.
pub const MAX_TABLE_ENTRIES: usize = 1 << 24;

/// A multi-topology game with explicit transition tables and parity priorities.
///
/// Every table is total. Instances are only obtained through validation, so
/// all cross-references are resolved and all lookups are infallible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mtg {
    players: Vec<String>,
    states: Vec<String>,
    actions: Vec<String>,
    topologies: Vec<String>,
    initial: State,
    profiles: usize,
    /// `[(t * |S| + s) * profiles + profile]`
    delta: Vec<State>,
    /// `[(t * |Pla| + p) * |S| + s]`
    priority: Vec<u32>,
}

/// One action per player, in player order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ActionProfile(pub Vec<Action>);

impl ActionProfile {
    pub fn actions(&self) -> &[Action] {
        &self.0
    }

    /// The profile with player `p`'s action replaced.
    pub fn with(&self, p: Player, a: Action) -> ActionProfile {
        let mut actions = self.0.clone();
        actions[p.index()] = a;
        ActionProfile(actions)
    }
}

/// An ultimately periodic play `prefix · cycle^ω`.
///
/// When `prefix` is empty the play starts on `cycle[0]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lasso {
    pub prefix: Vec<State>,
    pub cycle: Vec<State>,
}

impl Lasso {
    pub fn new(prefix: Vec<State>, cycle: Vec<State>) -> Self {
        assert!(!cycle.is_empty(), "lasso cycle must be nonempty");
        Lasso { prefix, cycle }
    }

    /// The `i`-th state of the play.
    pub fn at(&self, i: usize) -> State {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.cycle[(i - self.prefix.len()) % self.cycle.len()]
        }
    }

    pub fn unroll(&self, len: usize) -> Vec<State> {
        (0..len).map(|i| self.at(i)).collect()
    }

    /// States visited infinitely often.
    pub fn inf(&self) -> Vec<State> {
        let mut seen: Vec<State> = self.cycle.clone();
        seen.sort();
        seen.dedup();
        seen
    }

    /// Checks that the lasso starts in the initial state and that every
    /// consecutive pair is realized by some action profile in `t`.
    pub fn check_legal(&self, game: &Mtg, t: Topology) -> Result<(), GameError> {
        game.check_topology(t)?;
        if self.cycle.is_empty() {
            return Err(GameError::Input("lasso has an empty cycle".into()));
        }
        for &s in self.prefix.iter().chain(&self.cycle) {
            game.check_state(s)?;
        }
        if self.at(0) != game.initial() {
            return Err(GameError::Input(format!(
                "lasso starts in `{}`, not the initial state",
                game.state_name(self.at(0))
            )));
        }
        let span = self.prefix.len() + self.cycle.len();
        for i in 0..span {
            let (from, to) = (self.at(i), self.at(i + 1));
            if !game.has_edge(t, from, to) {
                return Err(GameError::Input(format!(
                    "no action profile moves `{}` to `{}` in topology `{}`",
                    game.state_name(from),
                    game.state_name(to),
                    game.topology_name(t)
                )));
            }
        }
        Ok(())
    }

    /// `prefix | cycle` with state names.
    pub fn display(&self, game: &Mtg) -> String {
        let names = |xs: &[State]| {
            xs.iter()
                .map(|&s| game.state_name(s))
                .collect::<Vec<_>>()
                .join(" ")
        };
        format!("{} | {}", names(&self.prefix), names(&self.cycle))
            .trim_start()
            .to_string()
    }
}

/// A single validation finding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Defect {
    Empty(&'static str),
    Duplicate {
        kind: &'static str,
        name: String,
    },
    TooManyTopologies(usize),
    TableTooLarge(usize),
    UnknownInitial(String),
    Unknown {
        kind: &'static str,
        name: String,
        context: String,
    },
    ProfileLength {
        topology: String,
        from: String,
        len: usize,
    },
    MissingTransition {
        topology: String,
        state: String,
        profile: Vec<String>,
    },
    ConflictingTransition {
        topology: String,
        state: String,
        profile: Vec<String>,
    },
    MissingPriority {
        topology: String,
        player: String,
        state: String,
    },
    PriorityTooLarge {
        topology: String,
        player: String,
        state: String,
        value: u32,
        max: u32,
    },
}

impl fmt::Display for Defect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Defect::Empty(kind) => write!(f, "no {kind} declared"),
            Defect::Duplicate { kind, name } => write!(f, "duplicate {kind} `{name}`"),
            Defect::TooManyTopologies(n) => {
                write!(f, "{n} topologies declared, at most {MAX_TOPOLOGIES} supported")
            }
            Defect::TableTooLarge(n) => write!(
                f,
                "transition tables would need {n} entries, at most {MAX_TABLE_ENTRIES} supported"
            ),
            Defect::UnknownInitial(s) => write!(f, "initial state `{s}` is not a declared state"),
            Defect::Unknown {
                kind,
                name,
                context,
            } => write!(f, "unknown {kind} `{name}` in {context}"),
            Defect::ProfileLength {
                topology,
                from,
                len,
            } => write!(
                f,
                "topology `{topology}`, row from `{from}`: profile has {len} actions"
            ),
            Defect::MissingTransition {
                topology,
                state,
                profile,
            } => write!(
                f,
                "missing transition ({topology}, {state}, [{}])",
                profile.join(",")
            ),
            Defect::ConflictingTransition {
                topology,
                state,
                profile,
            } => write!(
                f,
                "conflicting transitions for ({topology}, {state}, [{}])",
                profile.join(",")
            ),
            Defect::MissingPriority {
                topology,
                player,
                state,
            } => write!(f, "missing priority ({topology}, {player}, {state})"),
            Defect::PriorityTooLarge {
                topology,
                player,
                state,
                value,
                max,
            } => write!(
                f,
                "priority ({topology}, {player}, {state}) = {value} exceeds {max}"
            ),
        }
    }
}

/// Result of [`validate`]: empty iff the file describes a well-formed game.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub defects: Vec<Defect>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.defects.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.defects {
            writeln!(f, "  {d}")?;
        }
        Ok(())
    }
}

fn index_names<'a>(
    kind: &'static str,
    names: &'a [String],
    defects: &mut Vec<Defect>,
) -> HashMap<&'a str, usize> {
    if names.is_empty() {
        defects.push(Defect::Empty(kind));
    }
    let mut map = HashMap::new();
    for (i, n) in names.iter().enumerate() {
        if map.insert(n.as_str(), i).is_some() {
            defects.push(Defect::Duplicate {
                kind,
                name: n.clone(),
            });
        }
    }
    map
}

fn table_size(states: usize, actions: usize, players: usize, topologies: usize) -> Option<usize> {
    let mut profiles: usize = 1;
    for _ in 0..players {
        profiles = profiles.checked_mul(actions)?;
    }
    profiles.checked_mul(states)?.checked_mul(topologies)
}

/// Checks every invariant of a game description and lists each violation.
pub fn validate(file: &GameFile) -> ValidationReport {
    let mut defects = Vec::new();
    let players = index_names("player", &file.players, &mut defects);
    let actions = index_names("action", &file.actions, &mut defects);
    let states = index_names("state", &file.states, &mut defects);
    let topology_names: Vec<String> = file.topologies.iter().map(|t| t.name.clone()).collect();
    let topologies = index_names("topology", &topology_names, &mut defects);
    if topology_names.len() > MAX_TOPOLOGIES {
        defects.push(Defect::TooManyTopologies(topology_names.len()));
    }
    if !states.contains_key(file.initial.as_str()) {
        defects.push(Defect::UnknownInitial(file.initial.clone()));
    }
    let size = table_size(
        file.states.len(),
        file.actions.len(),
        file.players.len(),
        file.topologies.len(),
    );
    match size {
        Some(n) if n <= MAX_TABLE_ENTRIES => {}
        other => {
            defects.push(Defect::TableTooLarge(other.unwrap_or(usize::MAX)));
            return ValidationReport { defects };
        }
    }
    if !defects.is_empty() {
        return ValidationReport { defects };
    }

    let n_players = file.players.len();
    let n_actions = file.actions.len();
    let profiles = n_actions.pow(n_players as u32);
    for topo in &file.topologies {
        let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
        let mut conflicts: HashSet<(usize, usize)> = HashSet::new();
        for row in &topo.transitions {
            let context = format!("topology `{}`", topo.name);
            let from = states.get(row.from.as_str()).copied();
            let to = states.get(row.to.as_str()).copied();
            if from.is_none() {
                defects.push(Defect::Unknown {
                    kind: "state",
                    name: row.from.clone(),
                    context: context.clone(),
                });
            }
            if to.is_none() {
                defects.push(Defect::Unknown {
                    kind: "state",
                    name: row.to.clone(),
                    context: context.clone(),
                });
            }
            if row.profile.len() != n_players {
                defects.push(Defect::ProfileLength {
                    topology: topo.name.clone(),
                    from: row.from.clone(),
                    len: row.profile.len(),
                });
                continue;
            }
            let mut index = 0usize;
            let mut ok = true;
            for a in &row.profile {
                match actions.get(a.as_str()) {
                    Some(&i) => index = index * n_actions + i,
                    None => {
                        ok = false;
                        defects.push(Defect::Unknown {
                            kind: "action",
                            name: a.clone(),
                            context: context.clone(),
                        });
                    }
                }
            }
            let (Some(from), Some(to), true) = (from, to, ok) else {
                continue;
            };
            if let Some(&prev) = seen.get(&(from, index)) {
                if prev != to && conflicts.insert((from, index)) {
                    defects.push(Defect::ConflictingTransition {
                        topology: topo.name.clone(),
                        state: row.from.clone(),
                        profile: row.profile.clone(),
                    });
                }
            } else {
                seen.insert((from, index), to);
            }
        }
        for s in 0..file.states.len() {
            for prof in 0..profiles {
                if !seen.contains_key(&(s, prof)) {
                    defects.push(Defect::MissingTransition {
                        topology: topo.name.clone(),
                        state: file.states[s].clone(),
                        profile: decode_profile(prof, n_players, n_actions)
                            .into_iter()
                            .map(|a| file.actions[a.index()].clone())
                            .collect(),
                    });
                }
            }
        }
    }

    let max_priority = 2 * file.states.len() as u32;
    for (tname, by_player) in &file.priorities {
        if !topologies.contains_key(tname.as_str()) {
            defects.push(Defect::Unknown {
                kind: "topology",
                name: tname.clone(),
                context: "priorities".into(),
            });
        }
        for (pname, by_state) in by_player {
            if !players.contains_key(pname.as_str()) {
                defects.push(Defect::Unknown {
                    kind: "player",
                    name: pname.clone(),
                    context: format!("priorities of topology `{tname}`"),
                });
            }
            for sname in by_state.keys() {
                if !states.contains_key(sname.as_str()) {
                    defects.push(Defect::Unknown {
                        kind: "state",
                        name: sname.clone(),
                        context: format!("priorities of ({tname}, {pname})"),
                    });
                }
            }
        }
    }
    for t in &topology_names {
        for p in &file.players {
            for s in &file.states {
                let value = file
                    .priorities
                    .get(t)
                    .and_then(|m| m.get(p))
                    .and_then(|m| m.get(s));
                match value {
                    None => defects.push(Defect::MissingPriority {
                        topology: t.clone(),
                        player: p.clone(),
                        state: s.clone(),
                    }),
                    Some(&v) if v > max_priority => defects.push(Defect::PriorityTooLarge {
                        topology: t.clone(),
                        player: p.clone(),
                        state: s.clone(),
                        value: v,
                        max: max_priority,
                    }),
                    Some(_) => {}
                }
            }
        }
    }
    ValidationReport { defects }
}

fn decode_profile(mut index: usize, players: usize, actions: usize) -> Vec<Action> {
    let mut out = vec![Action(0); players];
    for slot in out.iter_mut().rev() {
        *slot = Action::from_index(index % actions);
        index /= actions;
    }
    out
}

impl Mtg {
    /// Builds a game from a validated description.
    pub fn from_file(file: &GameFile) -> Result<Mtg, GameError> {
        let report = validate(file);
        if !report.is_ok() {
            return Err(GameError::Invalid(report));
        }
        let lookup = |names: &[String]| -> HashMap<String, usize> {
            names
                .iter()
                .enumerate()
                .map(|(i, n)| (n.clone(), i))
                .collect()
        };
        let states = lookup(&file.states);
        let actions = lookup(&file.actions);
        let n_states = file.states.len();
        let n_actions = file.actions.len();
        let profiles = n_actions.pow(file.players.len() as u32);
        let mut delta = vec![State(0); file.topologies.len() * n_states * profiles];
        for (t, topo) in file.topologies.iter().enumerate() {
            for row in &topo.transitions {
                let from = states[&row.from];
                let prof = row
                    .profile
                    .iter()
                    .fold(0, |acc, a| acc * n_actions + actions[a]);
                delta[(t * n_states + from) * profiles + prof] = State::from_index(states[&row.to]);
            }
        }
        let mut priority = Vec::with_capacity(file.topologies.len() * file.players.len() * n_states);
        for topo in &file.topologies {
            for p in &file.players {
                for s in &file.states {
                    priority.push(file.priorities[&topo.name][p][s]);
                }
            }
        }
        Ok(Mtg {
            players: file.players.clone(),
            states: file.states.clone(),
            actions: file.actions.clone(),
            topologies: file.topologies.iter().map(|t| t.name.clone()).collect(),
            initial: State::from_index(states[&file.initial]),
            profiles,
            delta,
            priority,
        })
    }

    pub fn from_json(text: &str) -> Result<Mtg, GameError> {
        let file: GameFile = format::from_json(text)?;
        Mtg::from_file(&file)
    }

    /// Builds a game from raw tables laid out as documented on the fields of [`Mtg`].
    #[allow(clippy::too_many_arguments)]
    pub fn from_tables(
        players: Vec<String>,
        states: Vec<String>,
        actions: Vec<String>,
        topologies: Vec<String>,
        initial: State,
        delta: Vec<State>,
        priority: Vec<u32>,
    ) -> Result<Mtg, GameError> {
        let profiles = table_size(1, actions.len(), players.len(), 1)
            .ok_or_else(|| GameError::Input("action profile space overflows".into()))?;
        let game = Mtg {
            players,
            states,
            actions,
            topologies,
            initial,
            profiles,
            delta,
            priority,
        };
        // Round-trip through the file form so that every invariant is checked in one place.
        if game.delta.len() != game.topologies.len() * game.states.len() * profiles
            || game.priority.len() != game.topologies.len() * game.players.len() * game.states.len()
            || game.initial.index() >= game.states.len()
            || game.delta.iter().any(|s| s.index() >= game.states.len())
        {
            return Err(GameError::Input("transition or priority table has the wrong shape".into()));
        }
        let report = validate(&game.to_file());
        if !report.is_ok() {
            return Err(GameError::Invalid(report));
        }
        Ok(game)
    }

    pub fn to_file(&self) -> GameFile {
        let topologies = self
            .topologies
            .iter()
            .enumerate()
            .map(|(t, name)| TopologyFile {
                name: name.clone(),
                transitions: (0..self.states.len())
                    .flat_map(|s| (0..self.profiles).map(move |prof| (s, prof)))
                    .map(|(s, prof)| TransitionRow {
                        from: self.states[s].clone(),
                        profile: self
                            .decode_profile(prof)
                            .0
                            .iter()
                            .map(|&a| self.actions[a.index()].clone())
                            .collect(),
                        to: self.states[self.delta[(t * self.states.len() + s) * self.profiles + prof].index()]
                            .clone(),
                    })
                    .collect(),
            })
            .collect();
        let mut priorities = IndexMap::new();
        for t in self.topology_ids() {
            let mut by_player = IndexMap::new();
            for p in self.player_ids() {
                let by_state: IndexMap<String, u32> = self
                    .state_ids()
                    .map(|s| (self.state_name(s).to_string(), self.priority(t, p, s)))
                    .collect();
                by_player.insert(self.player_name(p).to_string(), by_state);
            }
            priorities.insert(self.topology_name(t).to_string(), by_player);
        }
        GameFile {
            players: self.players.clone(),
            actions: self.actions.clone(),
            states: self.states.clone(),
            initial: self.states[self.initial.index()].clone(),
            topologies,
            priorities,
        }
    }

    pub fn to_json(&self) -> String {
        format::to_json(&self.to_file())
    }

    pub fn players(&self) -> &[String] {
        &self.players
    }
    pub fn states(&self) -> &[String] {
        &self.states
    }
    pub fn actions(&self) -> &[String] {
        &self.actions
    }
    pub fn topologies(&self) -> &[String] {
        &self.topologies
    }
    pub fn num_players(&self) -> usize {
        self.players.len()
    }
    pub fn num_states(&self) -> usize {
        self.states.len()
    }
    pub fn num_actions(&self) -> usize {
        self.actions.len()
    }
    pub fn num_topologies(&self) -> usize {
        self.topologies.len()
    }
    pub fn num_profiles(&self) -> usize {
        self.profiles
    }
    pub fn initial(&self) -> State {
        self.initial
    }
    pub fn all_topologies(&self) -> TopologySet {
        TopologySet::full(self.topologies.len())
    }

    pub fn player_ids(&self) -> impl Iterator<Item = Player> + Clone {
        (0..self.players.len()).map(Player::from_index)
    }
    pub fn state_ids(&self) -> impl Iterator<Item = State> + Clone {
        (0..self.states.len()).map(State::from_index)
    }
    pub fn action_ids(&self) -> impl Iterator<Item = Action> + Clone {
        (0..self.actions.len()).map(Action::from_index)
    }
    pub fn topology_ids(&self) -> impl Iterator<Item = Topology> + Clone {
        (0..self.topologies.len()).map(Topology::from_index)
    }

    pub fn player_name(&self, p: Player) -> &str {
        &self.players[p.index()]
    }
    pub fn state_name(&self, s: State) -> &str {
        &self.states[s.index()]
    }
    pub fn action_name(&self, a: Action) -> &str {
        &self.actions[a.index()]
    }
    pub fn topology_name(&self, t: Topology) -> &str {
        &self.topologies[t.index()]
    }

    pub fn player(&self, name: &str) -> Result<Player, GameError> {
        find(&self.players, name, "player").map(Player::from_index)
    }
    pub fn state(&self, name: &str) -> Result<State, GameError> {
        find(&self.states, name, "state").map(State::from_index)
    }
    pub fn action(&self, name: &str) -> Result<Action, GameError> {
        find(&self.actions, name, "action").map(Action::from_index)
    }
    pub fn topology(&self, name: &str) -> Result<Topology, GameError> {
        find(&self.topologies, name, "topology").map(Topology::from_index)
    }

    pub fn topology_set(&self, names: &[impl AsRef<str>]) -> Result<TopologySet, GameError> {
        names.iter().map(|n| self.topology(n.as_ref())).collect()
    }

    pub fn topology_set_names(&self, set: TopologySet) -> Vec<String> {
        set.iter().map(|t| self.topology_name(t).to_string()).collect()
    }

    pub(crate) fn check_topology(&self, t: Topology) -> Result<(), GameError> {
        if t.index() < self.topologies.len() {
            Ok(())
        } else {
            Err(GameError::Unknown {
                kind: "topology",
                name: format!("#{}", t.0),
            })
        }
    }

    pub(crate) fn check_state(&self, s: State) -> Result<(), GameError> {
        if s.index() < self.states.len() {
            Ok(())
        } else {
            Err(GameError::Unknown {
                kind: "state",
                name: format!("#{}", s.0),
            })
        }
    }

    pub(crate) fn check_player(&self, p: Player) -> Result<(), GameError> {
        if p.index() < self.players.len() {
            Ok(())
        } else {
            Err(GameError::Unknown {
                kind: "player",
                name: format!("#{}", p.0),
            })
        }
    }

    /// Mixed-radix index of an action profile, player 0 most significant.
    pub fn profile_index(&self, profile: &[Action]) -> usize {
        profile
            .iter()
            .fold(0, |acc, a| acc * self.actions.len() + a.index())
    }

    pub fn decode_profile(&self, index: usize) -> ActionProfile {
        ActionProfile(decode_profile(index, self.players.len(), self.actions.len()))
    }

    #[inline]
    pub(crate) fn step_index(&self, t: Topology, s: State, profile: usize) -> State {
        self.delta[(t.index() * self.states.len() + s.index()) * self.profiles + profile]
    }

    /// The successor of `s` under `profile` in topology `t`.
    pub fn step(&self, t: Topology, s: State, profile: &ActionProfile) -> Result<State, GameError> {
        self.check_topology(t)?;
        self.check_state(s)?;
        if profile.0.len() != self.players.len() {
            return Err(GameError::Input(format!(
                "action profile has {} entries, game has {} players",
                profile.0.len(),
                self.players.len()
            )));
        }
        if let Some(a) = profile.0.iter().find(|a| a.index() >= self.actions.len()) {
            return Err(GameError::Unknown {
                kind: "action",
                name: format!("#{}", a.0),
            });
        }
        Ok(self.step_index(t, s, self.profile_index(&profile.0)))
    }

    #[inline]
    pub fn priority(&self, t: Topology, p: Player, s: State) -> u32 {
        self.priority[(t.index() * self.players.len() + p.index()) * self.states.len() + s.index()]
    }

    pub fn max_priority(&self) -> u32 {
        self.priority.iter().copied().max().unwrap_or(0)
    }

    /// Whether some action profile moves `from` to `to` in `t`.
    pub fn has_edge(&self, t: Topology, from: State, to: State) -> bool {
        (0..self.profiles).any(|prof| self.step_index(t, from, prof) == to)
    }

    /// Whether the minimum priority over `states` is even.
    pub fn parity_of(&self, t: Topology, p: Player, states: &[State]) -> bool {
        states
            .iter()
            .map(|&s| self.priority(t, p, s))
            .min()
            .is_some_and(|m| m % 2 == 0)
    }
}

fn find(names: &[String], name: &str, kind: &'static str) -> Result<usize, GameError> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| GameError::Unknown {
            kind,
            name: name.to_string(),
        })
}

/// Whether `lasso` satisfies the parity objective of player `p` in topology `t`.
pub fn parity_satisfied(game: &Mtg, t: Topology, p: Player, lasso: &Lasso) -> Result<bool, GameError> {
    game.check_player(p)?;
    lasso.check_legal(game, t)?;
    Ok(game.parity_of(t, p, &lasso.cycle))
}

/// All permutations of `0..k` in lexicographic order of their one-line notation.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut current: Vec<usize> = (0..k).collect();
    let mut out = vec![current.clone()];
    loop {
        let Some(i) = (1..k).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..k).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
        out.push(current.clone());
    }
}

/// Name of the topology for permutation `pi`: one-line notation, 1-based, dash separated.
pub fn permutation_name(pi: &[usize]) -> String {
    pi.iter()
        .map(|i| (i + 1).to_string())
        .collect::<Vec<_>>()
        .join("-")
}

/// The process-symmetric closure of a single-topology game with `k` players:
/// one topology per permutation of the players.
pub fn symmetrize(base: &Mtg, k: usize) -> Result<Mtg, GameError> {
    if k < 2 {
        return Err(GameError::Input("symmetrization needs at least 2 players".into()));
    }
    symmetrize_with(base, k, &permutations(k))
}

/// [`symmetrize`] restricted to the given permutations (one-line notation, 0-based).
///
/// In topology π the action of player `i` is read at index `π(i)`, so
/// `δ_π(s, a) = δ(s, π(a))` with `π(a)[π(i)] = a[i]`, and player `p` carries the
/// objective of player `π(p)` in the base game.
pub fn symmetrize_with(base: &Mtg, k: usize, perms: &[Vec<usize>]) -> Result<Mtg, GameError> {
    if base.num_topologies() != 1 {
        return Err(GameError::Input(format!(
            "base game must have one topology, found {}",
            base.num_topologies()
        )));
    }
    if base.num_players() != k {
        return Err(GameError::Input(format!(
            "base game has {} players, expected {k}",
            base.num_players()
        )));
    }
    for pi in perms {
        let mut sorted = pi.clone();
        sorted.sort();
        if sorted != (0..k).collect::<Vec<_>>() {
            return Err(GameError::Input(format!("{pi:?} is not a permutation of 0..{k}")));
        }
    }
    let base_t = Topology(0);
    let mut delta = Vec::with_capacity(perms.len() * base.num_states() * base.num_profiles());
    let mut priority = Vec::with_capacity(perms.len() * k * base.num_states());
    for pi in perms {
        for s in base.state_ids() {
            for prof in 0..base.num_profiles() {
                let actions = base.decode_profile(prof).0;
                let mut permuted = vec![Action(0); k];
                for (i, &a) in actions.iter().enumerate() {
                    permuted[pi[i]] = a;
                }
                delta.push(base.step_index(base_t, s, base.profile_index(&permuted)));
            }
        }
        for p in 0..k {
            for s in base.state_ids() {
                priority.push(base.priority(base_t, Player::from_index(pi[p]), s));
            }
        }
    }
    Mtg::from_tables(
        base.players().to_vec(),
        base.states().to_vec(),
        base.actions().to_vec(),
        perms.iter().map(|pi| permutation_name(pi)).collect(),
        base.initial(),
        delta,
        priority,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled;

    #[test]
    fn router_steps() {
        let g = bundled::router();
        let a = g.topology("A").unwrap();
        let b = g.topology("B").unwrap();
        let [ready, send1, send2] = ["ready", "send1", "send2"].map(|n| g.state(n).unwrap());
        let prof = |x: &str, y: &str| ActionProfile(vec![g.action(x).unwrap(), g.action(y).unwrap()]);
        assert_eq!(g.step(a, ready, &prof("1", "1")).unwrap(), send1);
        for (x, y) in [("0", "0"), ("0", "1"), ("1", "0"), ("1", "1")] {
            assert_eq!(g.step(a, send1, &prof(x, y)).unwrap(), ready);
        }
        assert_eq!(g.step(b, ready, &prof("1", "0")).unwrap(), send2);
        assert!(g.step(Topology(7), ready, &prof("0", "0")).is_err());
        assert!(g.step(a, ready, &ActionProfile(vec![Action(0)])).is_err());
    }

    #[test]
    fn bundled_games_validate() {
        for g in [bundled::router(), bundled::fig3(), bundled::xor()] {
            assert!(validate(&g.to_file()).is_ok());
        }
    }

    #[test]
    fn missing_row_is_one_defect() {
        let mut file = bundled::router().to_file();
        let removed = file.topologies[1].transitions.remove(5);
        let report = validate(&file);
        assert_eq!(
            report.defects,
            vec![Defect::MissingTransition {
                topology: "B".into(),
                state: removed.from,
                profile: removed.profile,
            }]
        );
    }

    #[test]
    fn dangling_initial_is_one_defect() {
        let mut file = bundled::fig3().to_file();
        file.initial = "nowhere".into();
        assert_eq!(
            validate(&file).defects,
            vec![Defect::UnknownInitial("nowhere".into())]
        );
    }

    #[test]
    fn conflicting_and_unknown_rows() {
        let mut file = bundled::fig3().to_file();
        let mut row = file.topologies[0].transitions[0].clone();
        row.to = if row.to == "s1" { "s2".into() } else { "s1".into() };
        file.topologies[0].transitions.push(row);
        file.topologies[0].transitions.push(TransitionRow {
            from: "s0".into(),
            profile: vec!["9".into()],
            to: "s1".into(),
        });
        let report = validate(&file);
        assert_eq!(report.defects.len(), 2, "{report}");
        assert!(matches!(report.defects[0], Defect::ConflictingTransition { .. }));
        assert!(matches!(report.defects[1], Defect::Unknown { kind: "action", .. }));
    }

    #[test]
    fn priority_bound_enforced() {
        let mut file = bundled::fig3().to_file();
        file.priorities["t1"]["player"]["s0"] = 7;
        let report = validate(&file);
        assert!(matches!(
            report.defects.as_slice(),
            [Defect::PriorityTooLarge { value: 7, max: 6, .. }]
        ));
        file.priorities["t1"]["player"].shift_remove("s0");
        assert!(matches!(
            validate(&file).defects.as_slice(),
            [Defect::MissingPriority { .. }]
        ));
    }

    #[test]
    fn parity_of_lassos() {
        let g = bundled::router();
        let a = g.topology("A").unwrap();
        let [ready, send1, send2] = ["ready", "send1", "send2"].map(|n| g.state(n).unwrap());
        let blue = g.player("blue").unwrap();
        let red = g.player("red").unwrap();
        let both = Lasso::new(vec![], vec![ready, send2, ready, send1]);
        assert!(parity_satisfied(&g, a, blue, &both).unwrap());
        let idle = Lasso::new(vec![], vec![ready]);
        assert!(!parity_satisfied(&g, a, red, &idle).unwrap());
        let illegal = Lasso::new(vec![], vec![ready, send1, send2]);
        assert!(parity_satisfied(&g, a, red, &illegal).is_err());

        let f = bundled::fig3();
        let t1 = f.topology("t1").unwrap();
        let [s0, s2] = ["s0", "s2"].map(|n| f.state(n).unwrap());
        let lasso = Lasso::new(vec![s0], vec![s2]);
        assert!(!parity_satisfied(&f, t1, Player(0), &lasso).unwrap());
    }

    #[test]
    fn lasso_display() {
        let g = bundled::router();
        let lasso = Lasso::new(vec![State(0)], vec![State(2), State(0), State(1), State(0)]);
        assert_eq!(lasso.display(&g), "ready | send2 ready send1 ready");
        assert_eq!(Lasso::new(vec![], vec![State(0)]).display(&g), "| ready");
    }

    #[test]
    fn permutations_are_lexicographic() {
        assert_eq!(
            permutations(3),
            vec![
                vec![0, 1, 2],
                vec![0, 2, 1],
                vec![1, 0, 2],
                vec![1, 2, 0],
                vec![2, 0, 1],
                vec![2, 1, 0]
            ]
        );
        assert_eq!(permutation_name(&[1, 0]), "2-1");
    }

    #[test]
    fn symmetrize_rejects_bad_input() {
        let g = bundled::router();
        assert!(symmetrize(&g, 2).is_err(), "two topologies");
        let base = bundled::router_base();
        assert!(symmetrize(&base, 1).is_err());
        assert!(symmetrize(&base, 3).is_err());
    }

    #[test]
    fn symmetrize_identity_reproduces_base() {
        let base = bundled::router_base();
        let sym = symmetrize_with(&base, 2, &[vec![0, 1]]).unwrap();
        assert_eq!(sym.delta, base.delta);
        assert_eq!(sym.priority, base.priority);
    }
}
