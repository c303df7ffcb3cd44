use thiserror::Error;

use crate::graph::{AgentId, GraphDefect, NodeId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid RBR graph:\n{}", render_defects(.0))]
    InvalidGraph(Vec<GraphDefect>),
    #[error("node {0} is not part of the graph")]
    UnknownNode(NodeId),
    #[error("path length must be at least 1")]
    ZeroLength,
    #[error("{what} exceeds the size cap of {limit}")]
    SizeCap { what: &'static str, limit: usize },
    #[error("strategy {strategy} is not in the strategy space of agent {agent}")]
    ForeignStrategy { agent: AgentId, strategy: usize },
    #[error("reasoning scene belongs to agent {scene_owner}, not agent {agent}")]
    SceneOwnerMismatch { agent: AgentId, scene_owner: AgentId },
    #[error("invalid game: {0}")]
    InvalidGame(String),
    #[error("invalid reasoning scene: {0}")]
    InvalidScene(String),
    #[error("game needs at least {required} agents, got {actual}")]
    TooFewAgents { required: usize, actual: usize },
    #[error("agent `{0}` of the graph has no strategy space in the game")]
    AgentMissingFromGame(String),
    #[error("invalid solution: {0}")]
    InvalidSolution(String),
    #[error("rationalisation did not stabilise within {bound} iterations")]
    NonTermination { bound: usize },
    #[error("the graphs do not share the same agent universe")]
    AgentUniverseMismatch,
    #[error("graph is not canonical")]
    NotCanonical,
    #[error("partition is not the finest partition of the graph")]
    NotFinest,
    #[error("partition is not a partition of the graph's nodes: {0}")]
    MalformedPartition(String),
    #[error("partition places nodes with different labels in one block")]
    LabelMixingPartition,
    #[error("node mapping is not total: {0}")]
    PartialMapping(String),
}

fn render_defects(defects: &[GraphDefect]) -> String {
    defects
        .iter()
        .map(|d| format!("  {d}"))
        .collect::<Vec<_>>()
        .join("\n")
}
