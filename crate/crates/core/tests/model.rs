//! Properties of the game model and of Moore-strategy semantics.

use std::collections::HashMap;

use proptest::prelude::*;

use mtg::game::permutations;
use mtg::random::{random_game, Limits};
use mtg::strategy::{outcome, wintop, wintops};
use mtg::{parity_satisfied, ActionProfile, Action, Mtg, MooreStrategy, Player, Profile, State, Topology, TopologySet};

/// A random strategy for every player with up to `memory` states.
fn random_profile(game: &Mtg, memory: usize, seed: &[u32]) -> Profile {
    let mut it = seed.iter().cycle().copied();
    let s = game.num_states();
    let strategies = (0..game.num_players())
        .map(|_| {
            let m = 1 + it.next().unwrap() as usize % memory;
            let update = (0..m * s).map(|_| it.next().unwrap() % m as u32).collect();
            let act = (0..m * s).map(|_| Action(it.next().unwrap() % game.num_actions() as u32)).collect();
            MooreStrategy::from_tables(m, 0, s, update, act).unwrap()
        })
        .collect();
    Profile::new(game, strategies).unwrap()
}

/// Plays step by step, each player answering the full history.
fn naive_play(game: &Mtg, t: Topology, profile: &Profile, len: usize) -> Vec<State> {
    let mut history = vec![game.initial()];
    while history.len() < len {
        let actions = game
            .player_ids()
            .map(|p| profile.strategy(p).respond(&history))
            .collect();
        let next = game.step(t, *history.last().unwrap(), &ActionProfile(actions)).unwrap();
        history.push(next);
    }
    history
}

/// Winning topologies by simulating until a joint configuration repeats.
fn naive_wintop(game: &Mtg, profile: &Profile, p: Player) -> TopologySet {
    game.topology_ids()
        .filter(|&t| {
            let mut seen = HashMap::new();
            let mut s = game.initial();
            let mut mem: Vec<u32> = profile.strategies().iter().map(|x| x.init()).collect();
            let mut trace = Vec::new();
            loop {
                if let Some(&start) = seen.get(&(s, mem.clone())) {
                    let cycle: Vec<State> = trace[start..].to_vec();
                    return cycle.iter().map(|&x| game.priority(t, p, x)).min().unwrap() % 2 == 0;
                }
                seen.insert((s, mem.clone()), trace.len());
                trace.push(s);
                let actions = profile.strategies().iter().zip(&mem).map(|(x, &m)| x.action(m, s)).collect();
                let next = game.step(t, s, &ActionProfile(actions)).unwrap();
                mem = profile.strategies().iter().zip(&mem).map(|(x, &m)| x.next(m, s)).collect();
                s = next;
            }
        })
        .collect()
}

/// Adds a memory state no transition enters.
fn with_unreachable_memory(s: &MooreStrategy) -> MooreStrategy {
    let n = s.num_states();
    let mut update = s.update_table().to_vec();
    let mut act = s.act_table().to_vec();
    update.extend(std::iter::repeat_n(0, n));
    act.extend(std::iter::repeat_n(Action(0), n));
    MooreStrategy::from_tables(s.memory_size() + 1, s.init(), n, update, act).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn outcome_unrolls_like_the_strategies(seed in any::<u64>(), tables in prop::collection::vec(0u32..64, 8..40)) {
        let g = random_game(seed, Limits::default());
        let prof = random_profile(&g, 3, &tables);
        for t in g.topology_ids() {
            let lasso = outcome(&g, t, &prof);
            let len = lasso.prefix.len() + 3 * lasso.cycle.len();
            prop_assert_eq!(lasso.unroll(len), naive_play(&g, t, &prof, len));
        }
    }

    #[test]
    fn wintop_matches_direct_simulation(seed in any::<u64>(), tables in prop::collection::vec(0u32..64, 8..40)) {
        let g = random_game(seed, Limits::default());
        let prof = random_profile(&g, 3, &tables);
        for p in g.player_ids() {
            prop_assert_eq!(wintop(&g, &prof, p), naive_wintop(&g, &prof, p));
            for t in g.topology_ids() {
                let lasso = outcome(&g, t, &prof);
                prop_assert_eq!(parity_satisfied(&g, t, p, &lasso).unwrap(), wintop(&g, &prof, p).contains(t));
            }
        }
    }

    #[test]
    fn unreachable_memory_changes_nothing(seed in any::<u64>(), tables in prop::collection::vec(0u32..64, 8..40)) {
        let g = random_game(seed, Limits::default());
        let prof = random_profile(&g, 2, &tables);
        let padded = Profile::new(&g, prof.strategies().iter().map(with_unreachable_memory).collect()).unwrap();
        for t in g.topology_ids() {
            prop_assert_eq!(outcome(&g, t, &prof), outcome(&g, t, &padded));
        }
    }

    #[test]
    fn substituting_own_strategy_is_identity(seed in any::<u64>(), tables in prop::collection::vec(0u32..64, 8..40)) {
        let g = random_game(seed, Limits::default());
        let prof = random_profile(&g, 3, &tables);
        for p in g.player_ids() {
            let same = prof.substitute(p, prof.strategy(p).clone());
            prop_assert_eq!(wintops(&g, &same), wintops(&g, &prof));
        }
        let back = Profile::from_json(&g, &prof.to_json(&g)).unwrap();
        prop_assert_eq!(back.to_json(&g), prof.to_json(&g));
    }

    /// Relabelling players by `tau` and topologies by `pi ↦ pi ∘ tau⁻¹`
    /// leaves every player's winning topologies unchanged.
    #[test]
    fn three_player_symmetrization_is_symmetric(
        delta in prop::collection::vec(0u32..3, 3 * 8),
        prio in prop::collection::vec(0u32..4, 3 * 3),
        acts in prop::collection::vec(0u32..2, 3 * 3),
    ) {
        let names = |p: &str, n: usize| (0..n).map(|i| format!("{p}{i}")).collect::<Vec<_>>();
        let base = Mtg::from_tables(
            names("p", 3), names("s", 3), names("a", 2), vec!["base".into()], State(0),
            delta.iter().map(|&s| State(s)).collect(), prio,
        ).unwrap();
        let sym = mtg::symmetrize(&base, 3).unwrap();
        let perms = permutations(3);
        prop_assert_eq!(sym.num_topologies(), 6);
        let strategies: Vec<MooreStrategy> = (0..3)
            .map(|i| MooreStrategy::memoryless(acts[3 * i..3 * i + 3].iter().map(|&a| Action(a)).collect()))
            .collect();
        let prof = Profile::new(&sym, strategies.clone()).unwrap();
        let index_of = |p: &Vec<usize>| perms.iter().position(|q| q == p).unwrap();
        for tau in &perms {
            let mut moved = strategies.clone();
            for i in 0..3 {
                moved[tau[i]] = strategies[i].clone();
            }
            let moved = Profile::new(&sym, moved).unwrap();
            let mut tau_inv = vec![0; 3];
            for i in 0..3 {
                tau_inv[tau[i]] = i;
            }
            for i in 0..3 {
                let expected: TopologySet = wintop(&sym, &prof, Player::from_index(i))
                    .iter()
                    .map(|t| {
                        let pi = &perms[t.index()];
                        Topology::from_index(index_of(&(0..3).map(|j| pi[tau_inv[j]]).collect()))
                    })
                    .collect();
                prop_assert_eq!(wintop(&sym, &moved, Player::from_index(tau[i])), expected);
            }
        }
        // The identity permutation reproduces the base game.
        let id = Topology(0);
        for s in base.state_ids() {
            for prof in 0..base.num_profiles() {
                let a = base.decode_profile(prof);
                prop_assert_eq!(sym.step(id, s, &a).unwrap(), base.step(Topology(0), s, &a).unwrap());
            }
        }
    }
}
