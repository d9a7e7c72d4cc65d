//! Equilibrium verification.
//!
//! Single-topology deviations reduce to a one-player residual game.
//! Deviations that must win several topologies at once are analysed on the
//! knowledge arena with a conjunction of parity conditions, which accounts for
//! deviating strategies of any memory.

mod checks;
pub mod knowledge;
mod report;

pub use checks::{arenas_of, check, check_cne, check_gne, check_ne, check_traced, Concept};
pub(crate) use checks::{holds_view, Interrupt};
pub use knowledge::{build_knowledge_arena, can_deviator_win_set, residual_deviation, Deviation, KnowledgeArena, KnowledgeNode};
pub use report::{ArenaRecord, EquilibriumReport, ReportFile, Witness, WitnessFile};
