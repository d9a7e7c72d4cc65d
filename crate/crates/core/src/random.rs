//! Seeded generators for small games, used by property tests and oracles.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::game::Mtg;
use crate::ids::State;

/// Size limits for [`random_game`].
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub max_states: usize,
    pub max_topologies: usize,
    pub max_actions: usize,
    pub max_players: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_states: 4,
            max_topologies: 2,
            max_actions: 2,
            max_players: 2,
        }
    }
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// A uniformly drawn game within `limits`; identical seeds give identical games.
pub fn random_game(seed: u64, limits: Limits) -> Mtg {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let states = rng.gen_range(1..=limits.max_states);
    let topologies = rng.gen_range(1..=limits.max_topologies);
    let actions = rng.gen_range(1..=limits.max_actions);
    let players = rng.gen_range(1..=limits.max_players);
    let profiles = actions.pow(players as u32);
    let delta = (0..topologies * states * profiles)
        .map(|_| State::from_index(rng.gen_range(0..states)))
        .collect();
    // Small priorities keep both parities common.
    let priority = (0..topologies * players * states)
        .map(|_| rng.gen_range(0..=3u32.min(2 * states as u32)))
        .collect();
    Mtg::from_tables(
        names("p", players),
        names("s", states),
        names("a", actions),
        names("t", topologies),
        State(0),
        delta,
        priority,
    )
    .expect("generated tables are well formed")
}

/// `n` states, one player with a single action, every state loops to itself.
pub fn single_action_game(n: usize) -> Mtg {
    Mtg::from_tables(
        names("p", 1),
        names("s", n),
        names("a", 1),
        names("t", 1),
        State(0),
        (0..n).map(State::from_index).collect(),
        vec![0; n],
    )
    .expect("well formed")
}

/// Two states and two actions for one player; action `a` moves to state `a`.
pub fn two_state_two_action_game() -> Mtg {
    Mtg::from_tables(
        names("p", 1),
        names("s", 2),
        names("a", 2),
        names("t", 1),
        State(0),
        vec![State(0), State(1), State(0), State(1)],
        vec![1, 0],
    )
    .expect("well formed")
}
