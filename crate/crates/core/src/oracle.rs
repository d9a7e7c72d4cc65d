//! Brute-force cross-checks for the exact procedures.
//!
//! These oracles share no code with what they check beyond the game model:
//! deviations are enumerated strategy by strategy, reduction ranks are
//! compared with the clause-level objective on enumerated cycles, and the
//! strategy correspondence of the reductions is tested by simulating both
//! games side by side.

use std::collections::{BTreeSet, HashMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::equilibria::can_deviator_win_set;
use crate::error::{AnalysisError, GameError};
use crate::game::Mtg;
use crate::ids::{Player, TopologySet};
use crate::reductions::{gamma_roundtrip, AdamStrategy, GammaReport, HPlay, ObsStrategy, PartialInfoGame, ReductionKind, Q0};
use crate::strategy::{enumerate_strategies, wintop, Profile};

/// Outcome of comparing the rank function of a reduction with its objective.
#[derive(Clone, Debug, Default)]
pub struct OmegaReport {
    /// Distinct cycle summaries examined, one per start state and summary.
    pub classes: usize,
    /// Closed walks covered by those summaries.
    pub walks: u128,
    pub disagreements: Vec<HPlay>,
}

/// Checks every closed walk of length at most `max_cycle` through every
/// state. Walks are grouped by start state, minimum rank and minimum
/// underlying priority, which together determine both objectives; one
/// representative per group is evaluated as a lasso from `q0`.
pub fn omega_oracle(h: &PartialInfoGame, max_cycle: usize) -> Result<OmegaReport, GameError> {
    let prefixes = shortest_paths(h);
    let mut report = OmegaReport::default();
    for v in 1..h.len() {
        let st = *h.state(v).expect("interior");
        let prio = |q: usize| {
            let s = h.state(q).expect("interior").s;
            h.game().priority(st.t, st.p, s)
        };
        // key: (current, min rank, min priority) → (walk count, one walk)
        let mut layer: HashMap<(usize, u32, u32), (u128, Vec<usize>)> = HashMap::new();
        layer.insert((v, h.rank(v), prio(v)), (1, vec![v]));
        let mut closing: HashMap<(u32, u32), (u128, Vec<usize>)> = HashMap::new();
        for _ in 0..max_cycle {
            let mut next: HashMap<(usize, u32, u32), (u128, Vec<usize>)> = HashMap::new();
            let mut keys: Vec<_> = layer.keys().copied().collect();
            keys.sort_unstable();
            for key in keys {
                let (count, walk) = &layer[&key];
                let (cur, r, g) = key;
                for w in h.successors(cur) {
                    if w == v {
                        let entry = closing.entry((r, g)).or_insert_with(|| (0, walk.clone()));
                        entry.0 += count;
                        continue;
                    }
                    let k = (w, r.min(h.rank(w)), g.min(prio(w)));
                    let entry = next.entry(k).or_insert_with(|| {
                        let mut walk = walk.clone();
                        walk.push(w);
                        (0, walk)
                    });
                    entry.0 += count;
                }
            }
            layer = next;
        }
        let mut summaries: Vec<_> = closing.into_iter().collect();
        summaries.sort_unstable_by_key(|(k, _)| *k);
        for (_, (count, cycle)) in summaries {
            let play = HPlay {
                prefix: prefixes[v].clone(),
                cycle,
            };
            report.classes += 1;
            report.walks += count;
            if h.semantic_objective(&play)? != h.rank_objective(&play)? {
                report.disagreements.push(play);
            }
        }
    }
    Ok(report)
}

/// For each state, a shortest path from `q0` that stops just before it.
fn shortest_paths(h: &PartialInfoGame) -> Vec<Vec<usize>> {
    let mut parent = vec![usize::MAX; h.len()];
    parent[Q0] = Q0;
    let mut queue = VecDeque::from([Q0]);
    while let Some(v) = queue.pop_front() {
        for w in h.successors(v) {
            if parent[w] == usize::MAX {
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    (0..h.len())
        .map(|v| {
            let mut path = Vec::new();
            let mut cur = v;
            while cur != Q0 {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            path
        })
        .collect()
}

#[derive(Clone, Debug, Default)]
pub struct GammaSample {
    pub runs: usize,
    pub obeyed: usize,
    pub mismatches: Vec<GammaReport>,
}

fn random_machine(rng: &mut ChaCha8Rng, observations: usize, values: usize, max_memory: usize) -> ObsStrategy {
    let memory = rng.gen_range(1..=max_memory);
    let cells = memory * observations;
    let update = (0..cells).map(|_| rng.gen_range(0..memory as u32)).collect();
    let act = (0..cells).map(|_| rng.gen_range(0..values as u32)).collect();
    ObsStrategy::new(observations, memory, 0, update, act).expect("well-formed random tables")
}

/// Adam's machine that copies Eve's suggestion for `p`, deviating at the
/// listed observation values when `deviate` is non-empty.
fn follower(h: &PartialInfoGame, eve: &ObsStrategy, p: Player, deviate: &[usize]) -> ObsStrategy {
    let g = h.game();
    let o = eve.observations();
    let mut update = Vec::new();
    let mut act = Vec::new();
    for m in 0..eve.memory_size() as u32 {
        for obs in 0..o {
            update.push(eve.next(m, obs));
            let a = g.decode_profile(eve.action(m, obs) as usize).actions()[p.index()].0;
            let a = if deviate.contains(&obs) { (a + 1) % g.num_actions() as u32 } else { a };
            act.push(a);
        }
    }
    ObsStrategy::new(o, eve.memory_size(), 0, update, act).expect("copied tables")
}

/// Samples Eve, Adam and Snake strategies with at most `max_memory` memory
/// states and checks the play correspondence for each.
pub fn gamma_sample(h: &PartialInfoGame, runs: usize, seed: u64, max_memory: usize) -> Result<GammaSample, GameError> {
    let g = h.game();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = GammaSample::default();
    for _ in 0..runs {
        let eve = random_machine(&mut rng, h.num_observations(), g.num_profiles(), max_memory);
        let opening = h.openings()[rng.gen_range(0..h.openings().len())].clone();
        let machine = match rng.gen_range(0..3) {
            0 => follower(h, &eve, opening.player, &[]),
            1 => follower(h, &eve, opening.player, &[rng.gen_range(1..h.num_observations())]),
            _ => random_machine(&mut rng, h.num_observations(), g.num_actions(), max_memory),
        };
        let adam = AdamStrategy {
            player: opening.player,
            set: opening.set,
            topology: (h.kind() == ReductionKind::Gne).then_some(opening.topology),
            machine,
        };
        let report = gamma_roundtrip(h, &eve, &adam, Some(opening.topology))?;
        out.runs += 1;
        out.obeyed += report.obey as usize;
        if !report.consistent() {
            out.mismatches.push(report);
        }
    }
    Ok(out)
}

/// Agreement between the deviation checker and strategy enumeration.
#[derive(Clone, Debug, Default)]
pub struct DeviationReport {
    pub queries: usize,
    /// Queries some enumerated strategy satisfies.
    pub oracle_true: usize,
    pub checker_true: usize,
    /// Queries the checker satisfies only with more memory than enumerated.
    pub beyond_bound: usize,
    /// Disagreements that indicate a bug.
    pub failures: Vec<String>,
}

/// Winning-topology sets the deviator reaches with some strategy of at most
/// `bound` memory states.
pub fn achievable_wintops(game: &Mtg, profile: &Profile, deviator: Player, bound: usize) -> Result<BTreeSet<TopologySet>, GameError> {
    Ok(enumerate_strategies(game, bound)?
        .map(|s| wintop(game, &profile.substitute(deviator, s), deviator))
        .collect())
}

/// Compares `can_deviator_win_set` for every player and every non-empty
/// target set with enumeration of deviations of at most `bound` memory.
pub fn deviation_oracle(game: &Mtg, profile: &Profile, bound: usize) -> Result<DeviationReport, AnalysisError> {
    let mut report = DeviationReport::default();
    let sets = 1u64 << game.num_topologies();
    for p in game.player_ids() {
        let reachable = achievable_wintops(game, profile, p, bound)?;
        for bits in 1..sets {
            let targets = TopologySet::from_bits(bits);
            let oracle = reachable.iter().any(|w| targets.is_subset(*w));
            let dev = can_deviator_win_set(game, profile, p, targets)?;
            report.queries += 1;
            report.oracle_true += oracle as usize;
            report.checker_true += dev.wins as usize;
            let name = || format!("player {} targets {:?}", game.player_name(p), game.topology_set_names(targets));
            if oracle && !dev.wins {
                report.failures.push(format!("{}: enumeration finds a deviation the checker misses", name()));
            }
            if dev.wins {
                let Some(strategy) = dev.strategy else {
                    report.failures.push(format!("{}: no witness strategy", name()));
                    continue;
                };
                let achieved = wintop(game, &profile.substitute(p, strategy), p);
                if !targets.is_subset(achieved) || dev.achieved != Some(achieved) {
                    report.failures.push(format!("{}: witness does not replay", name()));
                }
                if !oracle {
                    report.beyond_bound += 1;
                }
            }
        }
    }
    Ok(report)
}
