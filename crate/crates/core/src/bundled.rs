//! Example games and profiles shipped with the crate.

use crate::game::Mtg;
use crate::strategy::Profile;

pub const ROUTER: &str = include_str!("../games/router.game.json");
pub const ROUTER_BASE: &str = include_str!("../games/router_base.game.json");
pub const FIG3: &str = include_str!("../games/fig3.game.json");
pub const XOR: &str = include_str!("../games/xor.game.json");
pub const EX32_PROFILE: &str = include_str!("../games/ex32.profile.json");
pub const ROUTER_ALL_TARGETS: &str = include_str!("../games/router_all.targets.json");

/// Two clients share a router; topology `A` wires blue to port 1, `B` to port 2.
pub fn router() -> Mtg {
    Mtg::from_json(ROUTER).expect("bundled router game is valid")
}

/// Topology `A` of [`router`] on its own, as a one-topology game.
pub fn router_base() -> Mtg {
    Mtg::from_json(ROUTER_BASE).expect("bundled router base game is valid")
}

/// One player, two topologies that swap which action reaches the target.
pub fn fig3() -> Mtg {
    Mtg::from_json(FIG3).expect("bundled fig3 game is valid")
}

/// Matching pennies on two symmetric topologies with swapped objectives.
pub fn xor() -> Mtg {
    Mtg::from_json(XOR).expect("bundled xor game is valid")
}

/// Blue plays `0,0,1,1` and red `1,1,0,0`, repeated, on [`router`].
pub fn ex32_profile(game: &Mtg) -> Profile {
    Profile::from_json(game, EX32_PROFILE).expect("bundled profile matches the router game")
}
