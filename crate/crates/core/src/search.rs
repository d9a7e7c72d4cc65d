//! Bounded-memory search for equilibria and for profiles with prescribed
//! winning topologies.
//!
//! The search walks partial profiles depth first. A candidate is evaluated
//! with every strategy entry it has not fixed yet left open; the first time
//! the evaluation reads an open entry, the search branches on that entry's
//! values in ascending order. A verdict reached without reading an entry
//! holds for every way of filling it, so each leaf settles a whole family of
//! profiles at once. Memory states are introduced in order of first use, which
//! enumerates strategies up to renaming of memory states.
//!
//! Memory bounds are tried in increasing order. Within a bound the result is
//! the first success in depth-first order, whatever the number of workers.
//! A negative answer covers only the given memory bound.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

use serde::{Deserialize, Serialize};

use crate::equilibria::{check, holds_view, Concept, EquilibriumReport, Interrupt, ReportFile};
use crate::error::{AnalysisError, GameError};
use crate::format::ProfileFile;
use crate::game::Mtg;
use crate::ids::{Action, Player, State};
use crate::strategy::{wintops, wintops_view, MooreStrategy, Profile, ProfileView, Slot, Unassigned};
use crate::targets::TargetTuple;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Goal {
    Gne,
    Cne,
    /// Exactly these winning topologies per player.
    Wintop(TargetTuple),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchStatus {
    Found,
    ExhaustedSpace,
    BudgetExhausted,
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Maximum memory states per player; at least 1.
    pub memory: usize,
    /// Maximum number of candidate evaluations; `None` for no limit.
    pub budget: Option<u64>,
    /// Worker threads; 1 runs on the calling thread.
    pub jobs: usize,
}

impl SearchOptions {
    pub fn new(memory: usize) -> Self {
        SearchOptions {
            memory,
            budget: None,
            jobs: 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub profile: Option<Profile>,
    /// Re-verification of the returned profile (equilibrium goals only).
    pub report: Option<EquilibriumReport>,
    pub evaluations: u64,
}

/// Stated on every negative result.
pub const BOUNDED_NOTE: &str =
    "bounded search: no claim is made about profiles with more memory states";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchFile {
    pub status: SearchStatus,
    pub memory: usize,
    pub note: Option<String>,
    pub profile: Option<ProfileFile>,
    pub report: Option<ReportFile>,
}

impl SearchOutcome {
    pub fn to_file(&self, game: &Mtg, memory: usize) -> SearchFile {
        SearchFile {
            status: self.status,
            memory,
            note: (self.status != SearchStatus::Found).then(|| BOUNDED_NOTE.to_string()),
            profile: self.profile.as_ref().map(|p| p.to_file(game)),
            report: self.report.as_ref().map(|r| r.to_file(game)),
        }
    }
}

/// A profile whose tables may have open entries.
#[derive(Clone, Debug)]
struct PartialProfile {
    bound: u32,
    states: usize,
    /// Memory states in use per player.
    sizes: Vec<u32>,
    update: Vec<Vec<Option<u32>>>,
    act: Vec<Vec<Option<Action>>>,
}

impl PartialProfile {
    fn new(game: &Mtg, bound: usize) -> Self {
        let cells = bound * game.num_states();
        let n = game.num_players();
        PartialProfile {
            bound: bound as u32,
            states: game.num_states(),
            sizes: vec![1; n],
            update: vec![vec![None; cells]; n],
            act: vec![vec![None; cells]; n],
        }
    }

    fn cell(&self, m: u32, s: State) -> usize {
        m as usize * self.states + s.index()
    }

    /// Candidate values of an open entry, ascending.
    fn choices(&self, game: &Mtg, slot: Slot) -> Vec<u32> {
        match slot {
            Slot::Act { .. } => (0..game.num_actions() as u32).collect(),
            Slot::Update { player, .. } => {
                let used = self.sizes[player.index()];
                (0..(used + 1).min(self.bound)).collect()
            }
        }
    }

    fn assign(&self, slot: Slot, value: u32) -> PartialProfile {
        let mut next = self.clone();
        match slot {
            Slot::Act { player, memory, state } => {
                let i = self.cell(memory, state);
                next.act[player.index()][i] = Some(Action(value));
            }
            Slot::Update { player, memory, state } => {
                let i = self.cell(memory, state);
                next.update[player.index()][i] = Some(value);
                let used = &mut next.sizes[player.index()];
                *used = (*used).max(value + 1);
            }
        }
        next
    }

    /// Fills open entries with `m0` and the first action.
    fn complete(&self, game: &Mtg) -> Profile {
        let strategies = (0..self.sizes.len())
            .map(|p| {
                let m = self.sizes[p] as usize;
                let cells = m * self.states;
                MooreStrategy::from_tables(
                    m,
                    0,
                    self.states,
                    self.update[p][..cells].iter().map(|x| x.unwrap_or(0)).collect(),
                    self.act[p][..cells].iter().map(|x| x.unwrap_or(Action(0))).collect(),
                )
                .expect("filled tables are well formed")
            })
            .collect();
        Profile::new(game, strategies).expect("profile matches the game")
    }
}

impl ProfileView for PartialProfile {
    fn initial_memory(&self, _p: Player) -> u32 {
        0
    }

    fn act(&self, p: Player, m: u32, s: State) -> Result<Action, Unassigned> {
        self.act[p.index()][self.cell(m, s)].ok_or(Unassigned(Slot::Act {
            player: p,
            memory: m,
            state: s,
        }))
    }

    fn update(&self, p: Player, m: u32, s: State) -> Result<u32, Unassigned> {
        self.update[p.index()][self.cell(m, s)].ok_or(Unassigned(Slot::Update {
            player: p,
            memory: m,
            state: s,
        }))
    }
}

enum Eval {
    Pass,
    Fail,
    Open(Slot),
}

enum Node {
    Found(PartialProfile),
    Exhausted,
    Budget,
    Cancelled,
    Error(AnalysisError),
}

struct Ctx<'a> {
    game: &'a Mtg,
    goal: &'a Goal,
    budget: Option<u64>,
    spent: AtomicU64,
    best: AtomicUsize,
}

impl Ctx<'_> {
    fn charge(&self) -> bool {
        let used = self.spent.fetch_add(1, Ordering::Relaxed) + 1;
        self.budget.is_none_or(|b| used <= b)
    }

    fn evaluate(&self, pp: &PartialProfile) -> Result<Eval, AnalysisError> {
        let result = match self.goal {
            Goal::Wintop(targets) => wintops_view(self.game, pp)
                .map(|w| w == targets.0)
                .map_err(Interrupt::Unassigned),
            Goal::Gne => holds_view(self.game, pp, Concept::Gne),
            Goal::Cne => holds_view(self.game, pp, Concept::Cne),
        };
        match result {
            Ok(true) => Ok(Eval::Pass),
            Ok(false) => Ok(Eval::Fail),
            Err(Interrupt::Unassigned(Unassigned(slot))) => Ok(Eval::Open(slot)),
            Err(Interrupt::Failed(e)) => Err(e),
        }
    }

    fn dfs(&self, pp: PartialProfile, order: usize) -> Node {
        if self.best.load(Ordering::Relaxed) < order {
            return Node::Cancelled;
        }
        if !self.charge() {
            return Node::Budget;
        }
        match self.evaluate(&pp) {
            Err(e) => Node::Error(e),
            Ok(Eval::Pass) => Node::Found(pp),
            Ok(Eval::Fail) => Node::Exhausted,
            Ok(Eval::Open(slot)) => {
                for v in pp.choices(self.game, slot) {
                    match self.dfs(pp.assign(slot, v), order) {
                        Node::Exhausted => {}
                        other => return other,
                    }
                }
                Node::Exhausted
            }
        }
    }

    /// Expands the tree breadth-first in depth-first order until it has at
    /// least `want` open subtrees, settling leaves on the way.
    fn frontier(&self, root: PartialProfile, want: usize) -> Vec<Result<PartialProfile, Node>> {
        let mut items: Vec<Result<PartialProfile, Node>> = vec![Ok(root)];
        for _ in 0..12 {
            let open = items.iter().filter(|i| i.is_ok()).count();
            if open == 0 || open >= want {
                break;
            }
            let mut next = Vec::new();
            for item in items {
                let pp = match item {
                    Ok(pp) => pp,
                    settled => {
                        next.push(settled);
                        continue;
                    }
                };
                if !self.charge() {
                    next.push(Err(Node::Budget));
                    continue;
                }
                match self.evaluate(&pp) {
                    Err(e) => next.push(Err(Node::Error(e))),
                    Ok(Eval::Pass) => next.push(Err(Node::Found(pp))),
                    Ok(Eval::Fail) => next.push(Err(Node::Exhausted)),
                    Ok(Eval::Open(slot)) => {
                        next.extend(pp.choices(self.game, slot).into_iter().map(|v| Ok(pp.assign(slot, v))))
                    }
                }
            }
            items = next;
        }
        items
    }
}

/// Searches profiles with at most `options.memory` memory states per player.
pub fn search(game: &Mtg, goal: &Goal, options: &SearchOptions) -> Result<SearchOutcome, AnalysisError> {
    if options.memory < 1 {
        return Err(GameError::Input("memory bound must be at least 1".into()).into());
    }
    if let Goal::Wintop(t) = goal {
        if t.0.len() != game.num_players() || t.0.iter().any(|s| !s.is_subset(game.all_topologies())) {
            return Err(GameError::Input("targets do not match the game".into()).into());
        }
    }
    let ctx = Ctx {
        game,
        goal,
        budget: options.budget,
        spent: AtomicU64::new(0),
        best: AtomicUsize::new(usize::MAX),
    };
    // Deepen the memory bound one step at a time so that small witnesses are
    // found before the larger spaces are entered.
    let mut results = Vec::new();
    for bound in 1..=options.memory {
        ctx.best.store(usize::MAX, Ordering::Relaxed);
        results = run(&ctx, PartialProfile::new(game, bound), options.jobs)?;
        if results.iter().any(|n| !matches!(n, Node::Exhausted | Node::Cancelled)) {
            break;
        }
    }
    let evaluations = ctx.spent.load(Ordering::Relaxed).min(options.budget.unwrap_or(u64::MAX));
    let none = |status| SearchOutcome {
        status,
        profile: None,
        report: None,
        evaluations,
    };
    for node in results {
        match node {
            Node::Exhausted | Node::Cancelled => continue,
            Node::Budget => return Ok(none(SearchStatus::BudgetExhausted)),
            Node::Error(e) => return Err(e),
            Node::Found(pp) => {
                let profile = pp.complete(game);
                let report = verify(game, goal, &profile)?;
                return Ok(SearchOutcome {
                    status: SearchStatus::Found,
                    profile: Some(profile),
                    report,
                    evaluations,
                });
            }
        }
    }
    Ok(none(SearchStatus::ExhaustedSpace))
}

fn run(ctx: &Ctx<'_>, root: PartialProfile, jobs: usize) -> Result<Vec<Node>, AnalysisError> {
    if jobs <= 1 {
        return Ok(vec![ctx.dfs(root, 0)]);
    }
    let items = ctx.frontier(root, jobs * 8);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| GameError::Input(format!("cannot start workers: {e}")))?;
    use rayon::prelude::*;
    Ok(pool.install(|| {
        items
            .into_par_iter()
            .enumerate()
            .map(|(i, item)| {
                let node = match item {
                    Ok(pp) => ctx.dfs(pp, i),
                    Err(settled) => settled,
                };
                if matches!(node, Node::Found(_)) {
                    ctx.best.fetch_min(i, Ordering::Relaxed);
                }
                node
            })
            .collect()
    }))
}

/// Re-checks a found profile from scratch.
fn verify(game: &Mtg, goal: &Goal, profile: &Profile) -> Result<Option<EquilibriumReport>, AnalysisError> {
    let failed = |what: &str| AnalysisError::Game(GameError::Input(format!("search result failed re-verification: {what}")));
    match goal {
        Goal::Wintop(targets) => {
            if wintops(game, profile) != targets.0 {
                return Err(failed("winning topologies differ"));
            }
            Ok(None)
        }
        Goal::Gne | Goal::Cne => {
            let concept = if *goal == Goal::Gne { Concept::Gne } else { Concept::Cne };
            let report = check(game, profile, concept)?;
            if !report.verdict {
                return Err(failed("the equilibrium check rejects it"));
            }
            Ok(Some(report))
        }
    }
}

pub fn find_gne(game: &Mtg, options: &SearchOptions) -> Result<SearchOutcome, AnalysisError> {
    search(game, &Goal::Gne, options)
}

pub fn find_cne(game: &Mtg, options: &SearchOptions) -> Result<SearchOutcome, AnalysisError> {
    search(game, &Goal::Cne, options)
}

pub fn find_profile_with_wintop(
    game: &Mtg,
    targets: &TargetTuple,
    options: &SearchOptions,
) -> Result<SearchOutcome, AnalysisError> {
    search(game, &Goal::Wintop(targets.clone()), options)
}
