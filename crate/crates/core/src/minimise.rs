//! Compression of an RBR graph to its minimal equivalent canonical form.

use crate::error::{Error, Result};
use crate::graph::{validate_graph, NodeId, RawGraph, RbrGraph};
use crate::partition::{finest_partition_with_rounds, refine_once, NodeMapping, Partition};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimisationReport {
    pub output: RbrGraph,
    /// Sends every input node to the output node of its block.
    pub block_map: NodeMapping,
    /// Refinement passes, including the one that confirmed stability.
    pub refinement_rounds: usize,
}

/// Collapses every block of `partition` into a single node. Output node `i`
/// is block `i`, named and labelled after the block's smallest member.
///
/// `partition` must be the finest partition of `graph`.
pub fn quotient(graph: &RbrGraph, partition: &Partition) -> Result<RbrGraph> {
    let refined = refine_once(graph, partition)?;
    if refined.block_count() != partition.block_count() {
        return Err(Error::NotFinest);
    }
    let blocks = partition.blocks();
    let mut raw = RawGraph::new(graph.agent_names().iter().cloned());
    for members in &blocks {
        let first = members[0];
        raw.add_node(graph.node_name(first), graph.label(first));
    }
    for (b, members) in blocks.iter().enumerate() {
        // Members of one block have successors in the same blocks, so the
        // smallest member's edges stand for all of them.
        for (_, m) in graph.successors(members[0]) {
            raw.add_edge(NodeId(b), NodeId(partition.block(m)));
        }
    }
    for (a, n) in graph.designations() {
        raw.designate(a, NodeId(partition.block(n)));
    }
    validate_graph(raw)
}

/// The minimal graph equivalent to `graph`.
pub fn minimise(graph: &RbrGraph) -> MinimisationReport {
    let (partition, refinement_rounds) = finest_partition_with_rounds(graph);
    let output = quotient(graph, &partition).expect("quotient of a valid graph by its finest partition is valid");
    let block_map = NodeMapping::new(graph.nodes().map(|n| NodeId(partition.block(n))).collect());
    MinimisationReport {
        output,
        block_map,
        refinement_rounds,
    }
}
