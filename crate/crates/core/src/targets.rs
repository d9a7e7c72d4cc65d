//! Intended winning topologies, one set per player.

use crate::error::GameError;
use crate::format::{self, TargetsFile};
use crate::game::Mtg;
use crate::ids::{Player, TopologySet};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TargetTuple(pub Vec<TopologySet>);

impl TargetTuple {
    pub fn get(&self, p: Player) -> TopologySet {
        self.0[p.index()]
    }

    /// Every player must be listed exactly once.
    pub fn from_file(game: &Mtg, file: &TargetsFile) -> Result<Self, GameError> {
        let mut sets = vec![None; game.num_players()];
        for (name, topologies) in &file.targets {
            let p = game.player(name)?;
            sets[p.index()] = Some(game.topology_set(topologies)?);
        }
        let sets = sets
            .into_iter()
            .enumerate()
            .map(|(i, s)| {
                s.ok_or_else(|| {
                    GameError::Input(format!(
                        "no targets for player `{}`",
                        game.player_name(Player::from_index(i))
                    ))
                })
            })
            .collect::<Result<_, _>>()?;
        Ok(TargetTuple(sets))
    }

    pub fn from_json(game: &Mtg, text: &str) -> Result<Self, GameError> {
        Self::from_file(game, &format::from_json(text)?)
    }

    pub fn to_file(&self, game: &Mtg) -> TargetsFile {
        TargetsFile {
            targets: game
                .player_ids()
                .map(|p| (game.player_name(p).to_string(), game.topology_set_names(self.get(p))))
                .collect(),
        }
    }

    /// All `(2^|Top|)^|Pla|` tuples, player 0 most significant, sets by bitmask.
    pub fn all(game: &Mtg) -> Vec<TargetTuple> {
        let sets = 1u64 << game.num_topologies();
        let n = game.num_players();
        let total = (sets as usize).pow(n as u32);
        (0..total)
            .map(|mut idx| {
                let mut out = vec![TopologySet::EMPTY; n];
                for slot in out.iter_mut().rev() {
                    *slot = TopologySet::from_bits((idx % sets as usize) as u64);
                    idx /= sets as usize;
                }
                TargetTuple(out)
            })
            .collect()
    }
}
