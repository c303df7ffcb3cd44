//! Example graphs and games shipped with the crate.
//!
//! - [`rcbr`]: three agents with common belief in rationality.
//! - [`two_agent_rcbr`]: common belief between `a` and `b`; `c` irrational.
//! - [`uncommon_belief`]: as above, plus a rational `c` believing in `a` and
//!   `b` without being believed rational.
//! - [`uncommon_belief_doxastic`]: `c` believes in imagined copies of `a` and
//!   `b` who believe in `c`.
//! - [`belief_collection`]: a redundant seven-node presentation equivalent
//!   to [`uncommon_belief`].

use crate::graph::RbrGraph;
use crate::io::read_rbr;

pub const RCBR: &str = include_str!("../data/rcbr.rbr");
pub const TWO_AGENT_RCBR: &str = include_str!("../data/two_agent_rcbr.rbr");
pub const UNCOMMON_BELIEF: &str = include_str!("../data/uncommon_belief.rbr");
pub const UNCOMMON_BELIEF_DOXASTIC: &str = include_str!("../data/uncommon_belief_doxastic.rbr");
pub const BELIEF_COLLECTION: &str = include_str!("../data/belief_collection.rbr");
pub const COORDINATION_GAME: &str = include_str!("../data/coordination.game");
pub const BINARY3_GAME: &str = include_str!("../data/binary3.game");

fn load(text: &str) -> RbrGraph {
    read_rbr(text).expect("bundled graphs are valid")
}

pub fn rcbr() -> RbrGraph {
    load(RCBR)
}

pub fn two_agent_rcbr() -> RbrGraph {
    load(TWO_AGENT_RCBR)
}

pub fn uncommon_belief() -> RbrGraph {
    load(UNCOMMON_BELIEF)
}

pub fn uncommon_belief_doxastic() -> RbrGraph {
    load(UNCOMMON_BELIEF_DOXASTIC)
}

pub fn belief_collection() -> RbrGraph {
    load(BELIEF_COLLECTION)
}
