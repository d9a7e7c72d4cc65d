//! Worked examples: the two-port router, the one-player two-topology game,
//! and the symmetric XOR game.

use mtg::equilibria::{
    build_knowledge_arena, can_deviator_win_set, check_cne, check_gne, check_ne, residual_deviation,
};
use mtg::parity::Owner;
use mtg::strategy::{memoryless_profiles, wintop};
use mtg::{bundled, MooreStrategy, Player, Profile, TopologySet};

fn constant_profile(game: &mtg::Mtg, actions: &[&str]) -> Profile {
    let strategies = actions
        .iter()
        .map(|a| MooreStrategy::constant(game, game.action(a).unwrap()))
        .collect();
    Profile::new(game, strategies).unwrap()
}

#[test]
fn router_counter_profile_is_gne_and_cne() {
    let g = bundled::router();
    let prof = bundled::ex32_profile(&g);
    let all = g.all_topologies();
    let gne = check_gne(&g, &prof).unwrap();
    assert!(gne.verdict);
    assert!(gne.witness.is_none());
    assert_eq!(gne.wintop, vec![all, all]);
    assert!(check_cne(&g, &prof).unwrap().verdict);
    let a = g.topology("A").unwrap();
    assert!(check_ne(&g, a, &prof).unwrap().verdict);
}

#[test]
fn one_player_game_has_cne_but_no_gne() {
    let g = bundled::fig3();
    for (action, won) in [("1", "t1"), ("2", "t2")] {
        let prof = constant_profile(&g, &[action]);
        assert_eq!(wintop(&g, &prof, Player(0)), g.topology_set(&[won]).unwrap());
        assert!(check_cne(&g, &prof).unwrap().verdict);
        let gne = check_gne(&g, &prof).unwrap();
        assert!(!gne.verdict);
        let w = gne.witness.unwrap();
        let missing = g.all_topologies().difference(g.topology_set(&[won]).unwrap());
        assert_eq!(w.targets, missing);
        // the witness replays
        let deviated = prof.substitute(w.player, w.strategy.clone());
        assert!(missing.is_subset(wintop(&g, &deviated, w.player)));
    }
}

#[test]
fn one_topology_restriction_is_ne() {
    let g = bundled::fig3();
    let prof = constant_profile(&g, &["1"]);
    assert!(check_ne(&g, g.topology("t1").unwrap(), &prof).unwrap().verdict);
}

#[test]
fn xor_memoryless_profiles() {
    let g = bundled::xor();
    let profiles = memoryless_profiles(&g);
    assert_eq!(profiles.len(), 64);
    for prof in &profiles {
        assert!(check_cne(&g, prof).unwrap().verdict);
        assert!(!check_gne(&g, prof).unwrap().verdict);
        for t in g.topology_ids() {
            let ne = check_ne(&g, t, prof).unwrap();
            assert!(!ne.verdict);
            let w = ne.witness.unwrap();
            let deviated = prof.substitute(w.player, w.strategy);
            assert!(wintop(&g, &deviated, w.player).contains(t));
        }
    }
}

#[test]
fn router_deviations_against_constant_red() {
    let g = bundled::router();
    let blue = g.player("blue").unwrap();
    let a = g.topology("A").unwrap();
    let b = g.topology("B").unwrap();
    // red always sends; blue's own strategy is irrelevant to the analysis
    let prof = constant_profile(&g, &["0", "1"]);
    let ka = build_knowledge_arena(&g, &prof, blue, TopologySet::singleton(a)).unwrap();
    assert!(ka.arena.len() > 1);
    let dev = can_deviator_win_set(&g, &prof, blue, TopologySet::singleton(a)).unwrap();
    assert!(dev.wins);
    assert!(dev.achieved.unwrap().contains(a));
    let dev = can_deviator_win_set(&g, &prof, blue, TopologySet::singleton(b)).unwrap();
    assert!(!dev.wins);
    assert!(dev.strategy.is_none());
}

#[test]
fn knowledge_sets_shrink_along_edges() {
    let g = bundled::router();
    let prof = bundled::ex32_profile(&g);
    let ka = build_knowledge_arena(&g, &prof, Player(0), g.all_topologies()).unwrap();
    for v in 0..ka.arena.len() {
        for &w in ka.arena.successors(v) {
            assert!(ka.nodes[w].consistent.is_subset(ka.nodes[v].consistent));
        }
    }
}

#[test]
fn single_topology_arenas_have_singleton_knowledge() {
    let g = bundled::router_base();
    let prof = constant_profile(&g, &["1", "0"]);
    let ka = build_knowledge_arena(&g, &prof, Player(1), g.all_topologies()).unwrap();
    for v in 0..ka.arena.len() {
        assert_eq!(ka.nodes[v].consistent.len(), 1);
        if ka.arena.owner(v) == Owner::Spoiler {
            assert_eq!(ka.arena.successors(v).len(), 1);
        }
    }
}

#[test]
fn indistinguishable_topologies_never_split() {
    let g = bundled::xor();
    let prof = constant_profile(&g, &["0", "1"]);
    let ka = build_knowledge_arena(&g, &prof, Player(0), g.all_topologies()).unwrap();
    assert!(ka.nodes.iter().all(|n| n.consistent == g.all_topologies()));
}

#[test]
fn singleton_target_matches_residual_check() {
    for g in [bundled::router(), bundled::xor(), bundled::fig3()] {
        for prof in memoryless_profiles(&g).iter().step_by(5) {
            for p in g.player_ids() {
                for t in g.topology_ids() {
                    let set = can_deviator_win_set(&g, prof, p, TopologySet::singleton(t)).unwrap();
                    let residual = residual_deviation(&g, prof, p, t).unwrap();
                    assert_eq!(set.wins, residual.wins);
                }
            }
        }
    }
}

#[test]
fn empty_targets_rejected() {
    let g = bundled::router();
    let prof = bundled::ex32_profile(&g);
    assert!(can_deviator_win_set(&g, &prof, Player(0), TopologySet::EMPTY).is_err());
}
