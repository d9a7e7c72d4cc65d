//! Acceptance criteria, one line each. Run with `cargo test --test acceptance`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use mtg::equilibria::{can_deviator_win_set, check_cne, check_gne, check_ne};
use mtg::format::GameFile;
use mtg::game::permutations;
use mtg::oracle::{achievable_wintops, gamma_sample, omega_oracle};
use mtg::random::{random_game, Limits};
use mtg::reductions::{build_cne_game, build_gne_game};
use mtg::search::{find_gne, SearchOptions, SearchStatus};
use mtg::strategy::{memoryless_profiles, wintop, wintops};
use mtg::targets::TargetTuple;
use mtg::{bundled, Mtg, MooreStrategy, Player, Profile, State, Topology, TopologySet};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn constant(game: &Mtg, action: &str) -> Profile {
    Profile::new(game, vec![MooreStrategy::constant(game, game.action(action).unwrap())]).unwrap()
}

fn router_golden() -> Outcome {
    let g = bundled::router();
    let p = bundled::ex32_profile(&g);
    let all = g.all_topologies();
    ensure!(wintops(&g, &p) == vec![all, all], "wintop {:?}", wintops(&g, &p));
    ensure!(check_cne(&g, &p).map_err(|e| e.to_string())?.verdict, "not a CNE");
    ensure!(check_gne(&g, &p).map_err(|e| e.to_string())?.verdict, "not a GNE");
    Ok("both players win {A,B}; CNE and GNE hold".into())
}

fn fig3_golden() -> Outcome {
    let g = bundled::fig3();
    for (action, won) in [("1", "t1"), ("2", "t2")] {
        let p = constant(&g, action);
        let w = wintop(&g, &p, Player(0));
        ensure!(w == g.topology_set(&[won]).unwrap(), "always {action} wins {w:?}");
        ensure!(check_cne(&g, &p).map_err(|e| e.to_string())?.verdict, "always {action} is not a CNE");
        let report = check_gne(&g, &p).map_err(|e| e.to_string())?;
        ensure!(!report.verdict, "always {action} is a GNE");
        let witness = report.witness.ok_or("no witness")?;
        let replayed = wintop(&g, &p.substitute(witness.player, witness.strategy), witness.player);
        ensure!(replayed == witness.achieved && !replayed.is_subset(w), "witness replays to {replayed:?}");
    }
    let out = find_gne(&g, &SearchOptions::new(3)).map_err(|e| e.to_string())?;
    ensure!(out.status == SearchStatus::ExhaustedSpace, "search status {:?}", out.status);
    Ok(format!("CNE without GNE; memory-3 search exhausted after {} evaluations", out.evaluations))
}

fn xor_golden() -> Outcome {
    let g = bundled::xor();
    let profiles = memoryless_profiles(&g);
    for p in &profiles {
        ensure!(check_cne(&g, p).map_err(|e| e.to_string())?.verdict, "a profile is not a CNE");
        ensure!(!check_gne(&g, p).map_err(|e| e.to_string())?.verdict, "a profile is a GNE");
        for t in g.topology_ids() {
            ensure!(!check_ne(&g, t, p).map_err(|e| e.to_string())?.verdict, "a profile is an NE");
        }
    }
    Ok(format!("{} memoryless profiles: all CNE, none GNE, none NE", profiles.len()))
}

fn omega_agreement() -> Outcome {
    let mut classes = 0;
    let mut walks = 0u128;
    let mut slowest = Duration::ZERO;
    for g in [bundled::router(), bundled::fig3()] {
        for targets in TargetTuple::all(&g) {
            for h in [build_cne_game(&g, &targets), build_gne_game(&g, &targets)] {
                let h = h.map_err(|e| e.to_string())?;
                let start = Instant::now();
                let r = omega_oracle(&h, 8).map_err(|e| e.to_string())?;
                slowest = slowest.max(start.elapsed());
                ensure!(r.disagreements.is_empty(), "{} disagreements", r.disagreements.len());
                classes += r.classes;
                walks += r.walks;
            }
        }
    }
    ensure!(slowest < Duration::from_secs(60), "an instance took {slowest:?}");
    Ok(format!("{classes} cycle classes covering {walks} closed walks, no disagreement"))
}

fn gamma_correspondence() -> Outcome {
    let mut runs = 0;
    let mut obeyed = 0;
    for g in [bundled::router(), bundled::fig3()] {
        for targets in TargetTuple::all(&g) {
            for h in [build_cne_game(&g, &targets), build_gne_game(&g, &targets)] {
                let h = h.map_err(|e| e.to_string())?;
                let r = gamma_sample(&h, 100, runs as u64, 2).map_err(|e| e.to_string())?;
                ensure!(r.mismatches.is_empty(), "mismatch {:?}", r.mismatches[0]);
                runs += r.runs;
                obeyed += r.obeyed;
            }
        }
    }
    Ok(format!("{runs} sampled triples ({obeyed} obeying), no mismatch"))
}

fn corpus() -> Vec<Mtg> {
    (0..200).map(|seed| random_game(seed, Limits::default())).collect()
}

/// The game restricted to one topology.
fn restrict(game: &Mtg, t: Topology) -> Mtg {
    let name = game.topology_name(t).to_string();
    let mut file: GameFile = game.to_file();
    file.topologies.retain(|x| x.name == name);
    file.priorities.retain(|k, _| *k == name);
    Mtg::from_file(&file).unwrap()
}

fn observation_suite() -> Outcome {
    let mut checked = 0;
    let mut collapsed = 0;
    for g in corpus() {
        for p in memoryless_profiles(&g) {
            let gne = check_gne(&g, &p).map_err(|e| e.to_string())?.verdict;
            let cne = check_cne(&g, &p).map_err(|e| e.to_string())?.verdict;
            ensure!(!gne || cne, "GNE that is not a CNE");
            for t in g.topology_ids() {
                let ne = check_ne(&g, t, &p).map_err(|e| e.to_string())?.verdict;
                ensure!(!gne || ne, "GNE that is not an NE in {}", g.topology_name(t));
            }
            checked += 1;
        }
        for t in g.topology_ids() {
            let single = restrict(&g, t);
            for p in memoryless_profiles(&single) {
                let ne = check_ne(&single, Topology(0), &p).map_err(|e| e.to_string())?.verdict;
                let cne = check_cne(&single, &p).map_err(|e| e.to_string())?.verdict;
                let gne = check_gne(&single, &p).map_err(|e| e.to_string())?.verdict;
                ensure!(ne == cne && cne == gne, "single topology: NE {ne}, CNE {cne}, GNE {gne}");
                collapsed += 1;
            }
        }
    }
    Ok(format!("{checked} profiles, {collapsed} single-topology profiles, no violation"))
}

const PROFILES_PER_GAME: usize = 6;

fn deviation_agreement() -> Outcome {
    let mut queries = 0;
    let mut agreed = 0;
    let mut beyond = 0;
    for (seed, g) in corpus().into_iter().enumerate() {
        let all = memoryless_profiles(&g);
        // Evenly spaced profiles keep the run bounded on large action spaces.
        let stride = all.len().div_ceil(PROFILES_PER_GAME);
        for p in all.into_iter().step_by(stride) {
            for player in g.player_ids() {
                let reachable = achievable_wintops(&g, &p, player, 2).map_err(|e| e.to_string())?;
                for bits in 1..(1u64 << g.num_topologies()) {
                    let targets = TopologySet::from_bits(bits);
                    let oracle = reachable.iter().any(|w| targets.is_subset(*w));
                    let dev = can_deviator_win_set(&g, &p, player, targets).map_err(|e| e.to_string())?;
                    queries += 1;
                    ensure!(!oracle || dev.wins, "seed {seed}: enumeration beats the checker");
                    if dev.wins {
                        let s = dev.strategy.ok_or("winning answer without witness")?;
                        let achieved = wintop(&g, &p.substitute(player, s), player);
                        ensure!(targets.is_subset(achieved), "seed {seed}: witness does not replay");
                        beyond += !oracle as usize;
                    }
                    agreed += (oracle == dev.wins) as usize;
                }
            }
        }
    }
    Ok(format!(
        "{queries} queries, {agreed} identical verdicts, {beyond} needing more than 2 memory states, no hard failure"
    ))
}

fn reduction_sizes() -> Outcome {
    let mut games = vec![bundled::router(), bundled::fig3(), bundled::xor()];
    games.extend(corpus().into_iter().step_by(20));
    let mut instances = 0;
    for g in games {
        for targets in TargetTuple::all(&g) {
            let start = Instant::now();
            let h = build_cne_game(&g, &targets).map_err(|e| e.to_string())?;
            let (s, p, t) = (g.num_states(), g.num_players(), g.num_topologies());
            ensure!(h.family().len() <= 2 * p * t, "family of {} sets", h.family().len());
            ensure!(h.interior_len() <= 2 * s * p * h.family().len() * t, "{} states", h.interior_len());
            ensure!(start.elapsed() < Duration::from_secs(1), "build took {:?}", start.elapsed());
            instances += 1;
        }
    }
    Ok(format!("{instances} instances within the state bound"))
}

/// Tries every bijection of topologies and of non-initial states.
fn isomorphism(a: &Mtg, b: &Mtg) -> Option<(Vec<usize>, Vec<usize>)> {
    if (a.num_players(), a.num_actions(), a.num_states(), a.num_topologies())
        != (b.num_players(), b.num_actions(), b.num_states(), b.num_topologies())
    {
        return None;
    }
    for tp in permutations(a.num_topologies()) {
        for sp in permutations(a.num_states()) {
            if sp[a.initial().index()] != b.initial().index() {
                continue;
            }
            let same = a.topology_ids().all(|t| {
                let u = Topology::from_index(tp[t.index()]);
                a.state_ids().all(|s| {
                    let r = State::from_index(sp[s.index()]);
                    a.player_ids().all(|p| a.priority(t, p, s) == b.priority(u, p, r))
                        && (0..a.num_profiles()).all(|prof| {
                            let x = a.step(t, s, &a.decode_profile(prof)).unwrap();
                            let y = b.step(u, r, &b.decode_profile(prof)).unwrap();
                            sp[x.index()] == y.index()
                        })
                })
            });
            if same {
                return Some((tp, sp));
            }
        }
    }
    None
}

fn symmetrize_router() -> Outcome {
    let base = bundled::router_base();
    let sym = mtg::symmetrize(&base, 2).map_err(|e| e.to_string())?;
    let router = bundled::router();
    let (tp, sp) = isomorphism(&sym, &router).ok_or("no isomorphism")?;
    let renaming: Vec<String> = sym
        .topology_ids()
        .map(|t| format!("{} -> {}", sym.topology_name(t), router.topology_name(Topology::from_index(tp[t.index()]))))
        .chain(sym.state_ids().filter(|s| sp[s.index()] != s.index()).map(|s| {
            format!("{} -> {}", sym.state_name(s), router.state_name(State::from_index(sp[s.index()])))
        }))
        .collect();
    Ok(format!("isomorphic under {}", renaming.join(", ")))
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Outcome); 9] = [
        ("router golden example", Duration::from_secs(1), router_golden),
        ("one-player two-topology golden example", Duration::from_secs(5), fig3_golden),
        ("symmetric XOR golden example", Duration::from_secs(5), xor_golden),
        ("reduction ranks agree with objectives", Duration::from_secs(60 * 40), omega_agreement),
        ("strategy correspondence of the reductions", Duration::from_secs(30), gamma_correspondence),
        ("observation suite on 200 random games", Duration::from_secs(300), observation_suite),
        ("deviation checker against enumeration", Duration::from_secs(600), deviation_agreement),
        ("conservative reduction size bound", Duration::from_secs(60), reduction_sizes),
        ("symmetrized router base matches the router", Duration::from_secs(1), symmetrize_router),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let elapsed = start.elapsed();
        let result = match result {
            Ok(_) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            other => other,
        };
        match result {
            Ok(detail) => println!("criterion {}: PASS {name} ({elapsed:.2?}): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({elapsed:.2?}): {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
