//! Multi-topology games.
//!
//! A multi-topology game is a concurrent parity game with several transition
//! tables. The players share one action alphabet and see only the sequence of
//! visited states, so they never learn which topology is in play. This crate
//! evaluates finite-memory strategy profiles across all topologies, verifies
//! the conservative and greedy Nash conditions exactly, builds the reduction
//! games to partial-information games, and searches for equilibria of bounded
//! memory.

pub mod bundled;
pub mod equilibria;
pub mod error;
pub mod format;
pub mod game;
pub mod ids;
pub mod oracle;
pub mod parity;
pub mod random;
pub mod reductions;
pub mod search;
pub mod strategy;
pub mod targets;

pub use error::{AnalysisError, FormatError, GameError, SolverError};
pub use game::{parity_satisfied, symmetrize, validate, ActionProfile, Lasso, Mtg};
pub use ids::{Action, Player, State, Topology, TopologySet};
pub use strategy::{enumerate_strategies, outcome, winners, wintop, MooreStrategy, Profile};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/games.md")]
    mod games {}
    #[doc = include_str!("../../../book/src/strategies.md")]
    mod strategies {}
    #[doc = include_str!("../../../book/src/equilibria.md")]
    mod equilibria {}
    #[doc = include_str!("../../../book/src/reductions.md")]
    mod reductions {}
    #[doc = include_str!("../../../book/src/search.md")]
    mod search {}
}
