//! Equilibrium reports and their machine-readable form.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::format::StrategyFile;
use crate::game::Mtg;
use crate::ids::{Player, TopologySet};
use crate::parity::ArenaDump;
use crate::strategy::MooreStrategy;

use super::checks::Concept;

/// A deviation that breaks the checked condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub player: Player,
    /// The topologies the deviation was required to win.
    pub targets: TopologySet,
    /// What it actually wins after substitution.
    pub achieved: TopologySet,
    pub strategy: MooreStrategy,
    /// Memory of the arena strategy the witness was extracted from.
    pub plan_memory: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquilibriumReport {
    pub concept: Concept,
    pub verdict: bool,
    /// Winning topologies per player under the checked profile.
    pub wintop: Vec<TopologySet>,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportFile {
    pub concept: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub topology: Option<String>,
    pub verdict: bool,
    pub wintop: IndexMap<String, Vec<String>>,
    pub witness: Option<WitnessFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessFile {
    pub player: String,
    pub targets: Vec<String>,
    pub achieved: Vec<String>,
    pub plan_memory: usize,
    pub strategy: StrategyFile,
}

/// One arena built during a check, for triage.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArenaRecord {
    pub player: String,
    pub targets: Vec<String>,
    pub arena: ArenaDump,
}

impl Concept {
    pub fn name(self) -> &'static str {
        match self {
            Concept::Ne(_) => "ne",
            Concept::Cne => "cne",
            Concept::Gne => "gne",
        }
    }
}

impl EquilibriumReport {
    pub fn wintop_of(&self, p: Player) -> TopologySet {
        self.wintop[p.index()]
    }

    pub fn to_file(&self, game: &Mtg) -> ReportFile {
        ReportFile {
            concept: self.concept.name().to_string(),
            topology: match self.concept {
                crate::equilibria::Concept::Ne(t) => Some(game.topology_name(t).to_string()),
                _ => None,
            },
            verdict: self.verdict,
            wintop: game
                .player_ids()
                .map(|p| {
                    (
                        game.player_name(p).to_string(),
                        game.topology_set_names(self.wintop[p.index()]),
                    )
                })
                .collect(),
            witness: self.witness.as_ref().map(|w| WitnessFile {
                player: game.player_name(w.player).to_string(),
                targets: game.topology_set_names(w.targets),
                achieved: game.topology_set_names(w.achieved),
                plan_memory: w.plan_memory,
                strategy: w.strategy.to_file(game, w.player),
            }),
        }
    }
}
