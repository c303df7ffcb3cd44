//! Rationality and beliefs in rationality (RBR) graphs.
//!
//! An RBR graph records which agents are rational and, through labelled
//! edges, who believes whom to be rational, including imagined (doxastic)
//! agents that exist only inside beliefs. This crate validates such graphs,
//! computes the rational solution of finite games over them by iterated
//! elimination of strictly dominated strategies, decides when two nodes or
//! graphs carry the same beliefs, and compresses a graph to its minimal
//! equivalent form by partition refinement.
//!
//! ```
//! use rbr_core::{fixtures, minimise, graphs_equivalent};
//!
//! let collection = fixtures::belief_collection();
//! let report = minimise(&collection);
//! assert_eq!(report.output.node_count(), 3);
//! assert!(graphs_equivalent(&report.output, &fixtures::uncommon_belief()).unwrap());
//! ```

pub mod error;
pub mod fixtures;
pub mod game;
pub mod generate;
pub mod graph;
pub mod io;
pub mod minimise;
pub mod oracle;
pub mod partition;
pub mod rationalise;

pub use error::{Error, Result};
pub use game::{
    dominates, make_binary_game, make_guess_average_game, make_sequence_game, rational_response, Comparison, Game,
    Rational, ReasoningScene, StrategyId,
};
pub use graph::{validate_graph, AgentId, BeliefSequenceSet, GraphDefect, NodeId, RawGraph, RbrGraph};
pub use io::{export_dot, parse_game, parse_rbr, read_rbr, serialize_rbr, LoadError, ParseError};
pub use minimise::{minimise, quotient, MinimisationReport};
pub use partition::{
    check_local_isomorphism, disjoint_union, equivalence_report, find_isomorphism, finest_partition,
    graphs_equivalent, initial_partition, is_canonical, nodes_doxastically_equivalent, refine_once, AgentVerdict,
    NodeMapping, Partition,
};
pub use rationalise::{
    belief_scene, doxastic_rationalisability, full_solution, is_stable, iterate, rational_solution, rationalise,
    RationalSolutionReport, Solution,
};
