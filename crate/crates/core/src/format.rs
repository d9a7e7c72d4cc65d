//! On-disk schemas. Every file is JSON; names refer to the identifiers declared
//! in the game file, and all lists are kept in file order.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::FormatError;

/// A multi-topology game as written on disk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameFile {
    pub players: Vec<String>,
    pub actions: Vec<String>,
    pub states: Vec<String>,
    pub initial: String,
    pub topologies: Vec<TopologyFile>,
    /// topology → player → state → priority.
    pub priorities: IndexMap<String, IndexMap<String, IndexMap<String, u32>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopologyFile {
    pub name: String,
    pub transitions: Vec<TransitionRow>,
}

/// One explicit row of a transition table. `profile` lists one action per player, in player order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionRow {
    pub from: String,
    pub profile: Vec<String>,
    pub to: String,
}

/// A profile: one Moore strategy per player.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileFile {
    pub strategies: Vec<StrategyFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrategyFile {
    pub player: String,
    pub memory: Vec<String>,
    pub init: String,
    pub update: Vec<UpdateRow>,
    pub act: Vec<ActRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UpdateRow {
    pub memory: String,
    pub state: String,
    pub next: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActRow {
    pub memory: String,
    pub state: String,
    pub action: String,
}

/// Intended winning topologies per player.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TargetsFile {
    pub targets: IndexMap<String, Vec<String>>,
}

pub fn from_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, FormatError> {
    serde_json::from_str(text).map_err(|e| FormatError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// Pretty JSON with a trailing newline. Output is a pure function of the value.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("in-memory serialization");
    text.push('\n');
    text
}
