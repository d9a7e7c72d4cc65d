//! Graph-game backends: one-player parity, two-player parity, and
//! conjunctions of parity conditions, each with checked witnesses.

pub mod arena;
pub mod generalized;
pub mod one_player;
mod verify;
pub mod zielonka;

pub use arena::{Arena, ArenaBuilder, ArenaDump, Owner};
pub use generalized::{all_active, solve_conjunction, ConjunctionResult, ConjunctionWitness, Mem, Plan};
pub use one_player::{solve_one_player, NodeLasso, OnePlayerResult};
pub use zielonka::{solve_parity, ParitySolution};
