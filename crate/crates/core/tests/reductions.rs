//! Reduction games: ranks, sizes, observations and the strategy correspondence.

use std::collections::{HashSet, VecDeque};

use mtg::equilibria::check_cne;
use mtg::format;
use mtg::oracle::{gamma_sample, omega_oracle};
use mtg::reductions::{
    build_cne_game, build_gne_game, gamma_roundtrip, simulate, AdamStrategy, HFile, HPlay, ObsStrategy,
    PartialInfoGame, Q0,
};
use mtg::strategy::{memoryless_profiles, wintops, MooreStrategy};
use mtg::targets::TargetTuple;
use mtg::{bundled, Mtg, Player, State, Topology, TopologySet};

fn set(game: &Mtg, names: &[&str]) -> TopologySet {
    game.topology_set(names).unwrap()
}

fn interior(h: &PartialInfoGame) -> impl Iterator<Item = (usize, mtg::reductions::HState)> + '_ {
    (1..h.len()).map(move |q| (q, *h.state(q).unwrap()))
}

/// Reachable interior tuples, enumerated from the definition.
fn reachable_tuples(game: &Mtg, openings: Vec<(Player, Option<TopologySet>, Topology)>) -> usize {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    for (p, set, t) in openings {
        let q = (game.initial(), p, set, t, true);
        if seen.insert(q) {
            queue.push_back(q);
        }
    }
    while let Some((s, p, set, t, b)) = queue.pop_front() {
        for e in 0..game.num_profiles() {
            let suggested = game.decode_profile(e);
            for a in game.action_ids() {
                let mut played = suggested.0.clone();
                played[p.index()] = a;
                let next = game.step(t, s, &mtg::ActionProfile(played)).unwrap();
                let q = (next, p, set, t, b && suggested.0[p.index()] == a);
                if seen.insert(q) {
                    queue.push_back(q);
                }
            }
        }
    }
    seen.len()
}

fn cne_openings(game: &Mtg, targets: &TargetTuple) -> Vec<(Player, Option<TopologySet>, Topology)> {
    let mut out = Vec::new();
    for p in game.player_ids() {
        let mut sets: Vec<TopologySet> = game.topology_ids().map(|t| targets.get(p).with(t)).collect();
        sets.extend(game.topology_ids().map(TopologySet::singleton));
        for s in sets {
            for t in game.topology_ids() {
                out.push((p, Some(s), t));
            }
        }
    }
    out
}

fn instances() -> Vec<(Mtg, TargetTuple)> {
    let mut out = Vec::new();
    for g in [bundled::router(), bundled::fig3(), bundled::xor()] {
        for t in TargetTuple::all(&g) {
            out.push((g.clone(), t));
        }
    }
    out
}

#[test]
fn cne_rank_cases() {
    let g = bundled::router();
    let all = g.all_topologies();
    let a = g.topology("A").unwrap();
    let targets = TargetTuple(vec![set(&g, &["A"]), all]);
    let h = build_cne_game(&g, &targets).unwrap();
    let mut cases = [0usize; 3];
    for (q, st) in interior(&h) {
        let claim = st.set.unwrap();
        let tp = targets.get(st.p);
        if !claim.contains(st.t) {
            assert_eq!(h.rank(q), 1);
            cases[0] += 1;
        } else if !st.b && tp.contains(st.t) && !tp.is_strict_subset(claim) {
            assert_eq!(h.rank(q), 0);
            cases[1] += 1;
        } else if st.b && tp.contains(st.t) && tp.is_strict_subset(claim) {
            assert_eq!(h.rank(q), 1);
            cases[2] += 1;
        }
    }
    assert!(cases.iter().all(|&c| c > 0), "{cases:?}");
    // a concrete state of the fourth case: claim {A,B} for blue, deviating, in A
    let q = interior(&h)
        .find(|(_, st)| st.p == Player(0) && st.set == Some(all) && st.t == a && !st.b)
        .unwrap();
    assert_eq!(h.rank(q.0), g.priority(a, Player(0), q.1.s) + 1);
    assert_eq!(h.rank(Q0), 0);
}

#[test]
fn gne_rank_cases() {
    let g = bundled::router();
    let targets = TargetTuple(vec![set(&g, &["A"]), set(&g, &["B"])]);
    let h = build_gne_game(&g, &targets).unwrap();
    let mut seen = [false; 3];
    for (q, st) in interior(&h) {
        let prio = g.priority(st.t, st.p, st.s);
        let tp = targets.get(st.p);
        if !tp.contains(st.t) {
            assert_eq!(h.rank(q), prio + 1);
            seen[0] |= prio == 0;
        } else if st.b {
            assert_eq!(h.rank(q), prio);
            seen[1] = true;
        } else {
            assert_eq!(h.rank(q), 0);
            seen[2] = true;
        }
    }
    assert_eq!(seen, [true; 3]);
}

#[test]
fn sizes_match_enumeration_and_bounds() {
    for (g, targets) in instances() {
        let h = build_cne_game(&g, &targets).unwrap();
        let n = (g.num_players(), g.num_topologies());
        assert!(h.family().len() <= 2 * n.0 * n.1);
        assert!(h.interior_len() <= h.size_bound());
        assert_eq!(h.interior_len(), reachable_tuples(&g, cne_openings(&g, &targets)));

        let h = build_gne_game(&g, &targets).unwrap();
        assert!(h.interior_len() <= 2 * g.num_states() * n.0 * n.1);
        let openings = g.player_ids().flat_map(|p| g.topology_ids().map(move |t| (p, None, t))).collect();
        assert_eq!(h.interior_len(), reachable_tuples(&g, openings));
    }
    let g = bundled::router();
    let all = g.all_topologies();
    let h = build_gne_game(&g, &TargetTuple(vec![all, all])).unwrap();
    assert!(h.interior_len() <= 2 * 3 * 2 * 2);
}

#[test]
fn invariants_and_observations() {
    for (g, targets) in instances() {
        for h in [build_cne_game(&g, &targets).unwrap(), build_gne_game(&g, &targets).unwrap()] {
            h.check_invariants().unwrap();
            let eve = h.observation_classes(0);
            assert_eq!(eve, h.observation_classes(1));
            assert_eq!(eve[0], vec![Q0]);
            let mut projected = Vec::new();
            for class in &eve[1..] {
                let states: HashSet<State> = class.iter().map(|&q| h.state(q).unwrap().s).collect();
                assert_eq!(states.len(), 1);
                projected.extend(states);
            }
            let reachable: HashSet<State> = interior(&h).map(|(_, st)| st.s).collect();
            assert_eq!(projected.len(), reachable.len());
            assert_eq!(projected.iter().copied().collect::<HashSet<_>>(), reachable);
            if h.kind().players().len() == 3 {
                let snake = h.observation_classes(2);
                assert!(snake.iter().all(|c| c.len() == 1));
                assert!(snake.iter().all(|c| eve.iter().any(|e| e.contains(&c[0]))));
            }
        }
    }
}

#[test]
fn semantic_objective_examples() {
    let g = bundled::fig3();
    let t1 = g.topology("t1").unwrap();
    let targets = TargetTuple(vec![set(&g, &["t1"])]);
    let h = build_cne_game(&g, &targets).unwrap();
    // "always 1" wins t1; obey with claim {t1} in t1.
    let eve = ObsStrategy::new(h.num_observations(), 1, 0, vec![0; h.num_observations()], vec![0; h.num_observations()]).unwrap();
    let adam = AdamStrategy {
        player: Player(0),
        set: Some(set(&g, &["t1"])),
        topology: None,
        machine: eve.clone(),
    };
    let play = simulate(&h, &eve, &adam, Some(t1)).unwrap();
    assert!(h.semantic_objective(&play).unwrap());
    assert!(h.rank_objective(&play).unwrap());

    let t2 = g.topology("t2").unwrap();
    let play = simulate(&h, &eve, &adam, Some(t2)).unwrap();
    assert!(!h.semantic_objective(&play).unwrap());

    let bogus = HPlay {
        prefix: vec![],
        cycle: vec![1],
    };
    assert!(h.semantic_objective(&bogus).is_err());
}

#[test]
fn ranks_agree_with_objective_on_bundled_instances() {
    for (g, targets) in instances() {
        for h in [build_cne_game(&g, &targets).unwrap(), build_gne_game(&g, &targets).unwrap()] {
            let report = omega_oracle(&h, 6).unwrap();
            assert!(report.classes > 0);
            assert!(report.disagreements.is_empty(), "{:?}", report.disagreements);
        }
    }
}

fn eve_constant(h: &PartialInfoGame, profile: usize) -> ObsStrategy {
    let o = h.num_observations();
    ObsStrategy::new(o, 1, 0, vec![0; o], vec![profile as u32; o]).unwrap()
}

#[test]
fn obeying_adam_projects_to_the_profile_outcome() {
    let g = bundled::router();
    let all = g.all_topologies();
    let h = build_cne_game(&g, &TargetTuple(vec![all, all])).unwrap();
    let eve = eve_constant(&h, 2);
    let blue_action = g.decode_profile(2).0[0].0;
    let o = h.num_observations();
    let adam = AdamStrategy {
        player: Player(0),
        set: Some(all),
        topology: None,
        machine: ObsStrategy::new(o, 1, 0, vec![0; o], vec![blue_action; o]).unwrap(),
    };
    for t in g.topology_ids() {
        let r = gamma_roundtrip(&h, &eve, &adam, Some(t)).unwrap();
        assert!(r.obey && r.consistent());
    }

    // Deviate on the first move only: memory 0 deviates, then memory 1 obeys.
    let mut update = vec![1; 2 * o];
    update[0] = 0;
    let mut act = vec![blue_action; 2 * o];
    for cell in act.iter_mut().take(o) {
        *cell = 1 - blue_action;
    }
    let adam = AdamStrategy {
        machine: ObsStrategy::new(o, 2, 0, update, act).unwrap(),
        ..adam
    };
    let r = gamma_roundtrip(&h, &eve, &adam, Some(Topology(0))).unwrap();
    assert!(!r.obey);
    assert_eq!(r.disobeyed_at, Some(1));
    assert!(r.consistent());
}

#[test]
fn sampled_strategies_correspond() {
    for (g, targets) in instances().into_iter().step_by(3) {
        for h in [build_cne_game(&g, &targets).unwrap(), build_gne_game(&g, &targets).unwrap()] {
            let sample = gamma_sample(&h, 40, 7, 2).unwrap();
            assert_eq!(sample.runs, 40);
            assert!(sample.obeyed > 0);
            assert!(sample.mismatches.is_empty(), "{:?}", sample.mismatches);
        }
    }
}

#[test]
fn state_based_strategies_are_rejected() {
    let g = bundled::router();
    let h = build_gne_game(&g, &TargetTuple(vec![TopologySet::EMPTY; 2])).unwrap();
    let wrong = ObsStrategy::new(h.len(), 1, 0, vec![0; h.len()], vec![0; h.len()]).unwrap();
    let adam = AdamStrategy {
        player: Player(0),
        set: None,
        topology: Some(Topology(0)),
        machine: eve_constant(&h, 0),
    };
    assert!(gamma_roundtrip(&h, &wrong, &adam, None).is_err());
}

#[test]
fn export_round_trips() {
    let g = bundled::router();
    let all = g.all_topologies();
    for h in [
        build_cne_game(&g, &TargetTuple(vec![all, all])).unwrap(),
        build_gne_game(&g, &TargetTuple(vec![all, all])).unwrap(),
    ] {
        let text = format::to_json(&h.to_file());
        let back: HFile = format::from_json(&text).unwrap();
        assert_eq!(format::to_json(&back), text);
        assert_eq!(back.states.len(), h.len());
        assert_eq!(back.observations.len(), h.kind().players().len());
    }
}

/// Every state-indexed strategy as a machine over observations, where the
/// observation of `q0` leaves memory unchanged.
fn lift(h: &PartialInfoGame, s: &MooreStrategy, value: impl Fn(u32, usize) -> u32) -> ObsStrategy {
    let o = h.num_observations();
    let mut update = Vec::new();
    let mut act = Vec::new();
    for m in 0..s.memory_size() as u32 {
        update.push(m);
        act.push(0);
        for st in 0..o - 1 {
            update.push(s.next(m, State::from_index(st)));
            act.push(value(m, st));
        }
    }
    ObsStrategy::new(o, s.memory_size(), s.init(), update, act).unwrap()
}

/// Bounded evidence for the reduction's correctness: over memoryless Eve and
/// Adam strategies of the one-player game, Eve wins against every Adam
/// exactly when her profile is a conservative equilibrium with the targets
/// as winning topologies.
#[test]
fn bounded_cne_reduction_correctness() {
    let g = bundled::fig3();
    let adams: Vec<MooreStrategy> = mtg::strategy::memoryless_strategies(&g).collect();
    for targets in TargetTuple::all(&g) {
        let h = build_cne_game(&g, &targets).unwrap();
        for profile in memoryless_profiles(&g) {
            let s = profile.strategy(Player(0));
            let eve = lift(&h, s, |m, st| g.profile_index(&[s.action(m, State::from_index(st))]) as u32);
            let eve_wins = h.openings().iter().all(|o| {
                adams.iter().all(|a| {
                    let adam = AdamStrategy {
                        player: o.player,
                        set: o.set,
                        topology: None,
                        machine: lift(&h, a, |m, st| a.action(m, State::from_index(st)).0),
                    };
                    g.topology_ids().any(|t| {
                        let play = simulate(&h, &eve, &adam, Some(t)).unwrap();
                        h.rank_objective(&play).unwrap()
                    })
                })
            });
            let expected = check_cne(&g, &profile).unwrap().verdict && wintops(&g, &profile) == targets.0;
            assert_eq!(eve_wins, expected, "targets {targets:?} profile {}", profile.to_json(&g));
        }
    }
}
