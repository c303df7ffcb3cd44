//! Partition refinement by successor-block types, doxastic equivalence of
//! nodes and graphs, canonicity and isomorphism of canonical graphs.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{AgentId, NodeId, RbrGraph};

/// A partition of a graph's nodes into blocks `0..block_count`. Blocks are
/// numbered in order of their smallest member, so equal partitions have equal
/// representations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    block_of: Vec<usize>,
    block_count: usize,
}

impl Partition {
    /// Builds a partition from arbitrary block keys, renumbering them by
    /// smallest member.
    pub fn from_keys<K: Ord + Clone>(keys: &[K]) -> Self {
        let mut seen = std::collections::BTreeMap::new();
        let block_of = keys
            .iter()
            .map(|k| {
                let next = seen.len();
                *seen.entry(k.clone()).or_insert(next)
            })
            .collect();
        Partition {
            block_of,
            block_count: seen.len(),
        }
    }

    /// Takes a block index per node. Indices must be dense.
    pub fn from_blocks(block_of: Vec<usize>) -> Result<Self> {
        let count = block_of.iter().max().map_or(0, |m| m + 1);
        let used: BTreeSet<usize> = block_of.iter().copied().collect();
        if used.len() != count {
            return Err(Error::MalformedPartition(format!(
                "block indices are not dense: {} blocks used out of 0..{count}",
                used.len()
            )));
        }
        Ok(Partition::from_keys(&block_of))
    }

    /// Every node in its own block.
    pub fn discrete(node_count: usize) -> Self {
        Partition {
            block_of: (0..node_count).collect(),
            block_count: node_count,
        }
    }

    pub fn len(&self) -> usize {
        self.block_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.block_of.is_empty()
    }

    pub fn block_count(&self) -> usize {
        self.block_count
    }

    pub fn block(&self, node: NodeId) -> usize {
        self.block_of[node.0]
    }

    pub fn block_of(&self) -> &[usize] {
        &self.block_of
    }

    pub fn same_block(&self, n: NodeId, m: NodeId) -> bool {
        self.block_of[n.0] == self.block_of[m.0]
    }

    /// Members of each block, ascending.
    pub fn blocks(&self) -> Vec<Vec<NodeId>> {
        let mut out = vec![Vec::new(); self.block_count];
        for (n, &b) in self.block_of.iter().enumerate() {
            out[b].push(NodeId(n));
        }
        out
    }

    /// Whether every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        if self.len() != coarser.len() {
            return false;
        }
        let mut image = vec![usize::MAX; self.block_count];
        self.block_of.iter().zip(&coarser.block_of).all(|(&fine, &coarse)| {
            if image[fine] == usize::MAX {
                image[fine] = coarse;
            }
            image[fine] == coarse
        })
    }
}

/// Nodes grouped by label.
pub fn initial_partition(graph: &RbrGraph) -> Partition {
    Partition::from_keys(graph.labels())
}

/// The type of `node` under `partition`: for each agent `a`, the block of the
/// `a`-successor if there is one, minus the node's own block at its own
/// label, and `block_count` as a placeholder otherwise.
pub fn type_vector(graph: &RbrGraph, partition: &Partition, node: NodeId) -> Vec<i64> {
    let label = graph.label(node);
    graph
        .successor_row(node)
        .iter()
        .enumerate()
        .map(|(a, succ)| match succ {
            Some(m) => partition.block(*m) as i64,
            None if AgentId(a) == label => -(partition.block(node) as i64),
            None => partition.block_count() as i64,
        })
        .collect()
}

fn check_partition(graph: &RbrGraph, partition: &Partition) -> Result<()> {
    if partition.len() != graph.node_count() {
        return Err(Error::MalformedPartition(format!(
            "{} entries for {} nodes",
            partition.len(),
            graph.node_count()
        )));
    }
    let mut label_of_block = vec![None; partition.block_count()];
    for n in graph.nodes() {
        let slot = &mut label_of_block[partition.block(n)];
        match slot {
            None => *slot = Some(graph.label(n)),
            Some(l) if *l == graph.label(n) => {}
            Some(_) => return Err(Error::LabelMixingPartition),
        }
    }
    Ok(())
}

/// Splits every block by node type. Nodes stay together iff they shared a
/// block and have equal types.
pub fn refine_once(graph: &RbrGraph, partition: &Partition) -> Result<Partition> {
    check_partition(graph, partition)?;
    Ok(refine_unchecked(graph, partition))
}

fn refine_unchecked(graph: &RbrGraph, partition: &Partition) -> Partition {
    let n = graph.node_count();
    let width = graph.agent_count();
    let mut types = Vec::with_capacity(n * width);
    for node in graph.nodes() {
        types.extend(type_vector(graph, partition, node));
    }
    let key = |node: usize, a: usize| types[node * width + a];

    // Least significant key first: one stable pass per agent, then by the old
    // block, so that nodes end up ordered by (old block, type).
    let mut order: Vec<usize> = (0..n).collect();
    for a in (0..width).rev() {
        order.sort_by_key(|&node| std::cmp::Reverse(key(node, a)));
    }
    order.sort_by_key(|&node| partition.block_of[node]);

    let mut fresh = vec![0usize; n];
    let mut block = 0;
    for w in 0..order.len() {
        if w > 0 {
            let (prev, cur) = (order[w - 1], order[w]);
            let same = partition.block_of[prev] == partition.block_of[cur]
                && types[prev * width..(prev + 1) * width] == types[cur * width..(cur + 1) * width];
            if !same {
                block += 1;
            }
        }
        fresh[order[w]] = block;
    }
    Partition::from_keys(&fresh)
}

/// The coarsest partition that is stable under refinement, together with the
/// number of refinement passes made (including the final one that confirmed
/// stability).
pub fn finest_partition_with_rounds(graph: &RbrGraph) -> (Partition, usize) {
    let mut current = initial_partition(graph);
    let mut rounds = 0;
    loop {
        let next = refine_unchecked(graph, &current);
        rounds += 1;
        if next.block_count() == current.block_count() {
            return (current, rounds);
        }
        current = next;
    }
}

/// Blocks are exactly the classes of nodes with equal belief hierarchies.
pub fn finest_partition(graph: &RbrGraph) -> Partition {
    finest_partition_with_rounds(graph).0
}

/// Places `right`'s nodes after `left`'s. Designations are dropped, so the
/// result need not satisfy the reachability rule.
pub fn disjoint_union(left: &RbrGraph, right: &RbrGraph) -> Result<RbrGraph> {
    if left.agent_names() != right.agent_names() {
        return Err(Error::AgentUniverseMismatch);
    }
    let offset = left.node_count();
    let node_names = left
        .nodes()
        .map(|n| left.node_name(n).to_string())
        .chain(right.nodes().map(|n| right.node_name(n).to_string()))
        .collect();
    let labels = left.labels().iter().chain(right.labels()).copied().collect();
    let succ = left
        .nodes()
        .flat_map(|n| left.successor_row(n).iter().copied())
        .chain(
            right
                .nodes()
                .flat_map(|n| right.successor_row(n).iter().map(move |s| s.map(|m| NodeId(m.0 + offset)))),
        )
        .collect();
    Ok(RbrGraph::from_parts_unchecked(
        left.agent_names().to_vec(),
        node_names,
        labels,
        succ,
        vec![None; left.agent_count()],
    ))
}

fn check_node(graph: &RbrGraph, node: NodeId) -> Result<()> {
    if graph.contains(node) {
        Ok(())
    } else {
        Err(Error::UnknownNode(node))
    }
}

/// Whether two nodes, possibly of different graphs over the same agents,
/// have the same belief hierarchy.
pub fn nodes_doxastically_equivalent(
    left: &RbrGraph,
    left_node: NodeId,
    right: &RbrGraph,
    right_node: NodeId,
) -> Result<bool> {
    check_node(left, left_node)?;
    check_node(right, right_node)?;
    let union = disjoint_union(left, right)?;
    let p = finest_partition(&union);
    Ok(p.same_block(left_node, NodeId(right_node.0 + left.node_count())))
}

/// How one agent fares when comparing two graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AgentVerdict {
    /// Designated in neither graph.
    BothIrrational,
    /// Designated in exactly one graph; `in_left` tells which.
    DesignationDomainsDiffer { in_left: bool },
    /// Designated in both, with equal belief hierarchies.
    Equivalent,
    /// Designated in both, with different belief hierarchies.
    HierarchiesDiffer,
}

impl AgentVerdict {
    pub fn is_match(self) -> bool {
        matches!(self, AgentVerdict::BothIrrational | AgentVerdict::Equivalent)
    }
}

/// Per-agent comparison of two graphs over the same agents.
pub fn equivalence_report(left: &RbrGraph, right: &RbrGraph) -> Result<Vec<AgentVerdict>> {
    let union = disjoint_union(left, right)?;
    let p = finest_partition(&union);
    let offset = left.node_count();
    Ok(left
        .agents()
        .map(|a| match (left.designated(a), right.designated(a)) {
            (None, None) => AgentVerdict::BothIrrational,
            (Some(_), None) => AgentVerdict::DesignationDomainsDiffer { in_left: true },
            (None, Some(_)) => AgentVerdict::DesignationDomainsDiffer { in_left: false },
            (Some(n), Some(m)) => {
                if p.same_block(n, NodeId(m.0 + offset)) {
                    AgentVerdict::Equivalent
                } else {
                    AgentVerdict::HierarchiesDiffer
                }
            }
        })
        .collect())
}

/// Same designated agents, and designated nodes pairwise doxastically
/// equivalent.
pub fn graphs_equivalent(left: &RbrGraph, right: &RbrGraph) -> Result<bool> {
    Ok(equivalence_report(left, right)?.into_iter().all(AgentVerdict::is_match))
}

/// No two nodes share a belief hierarchy.
pub fn is_canonical(graph: &RbrGraph) -> bool {
    finest_partition(graph).block_count() == graph.node_count()
}

/// A total map from one graph's nodes into another's.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NodeMapping {
    image: Vec<NodeId>,
}

impl NodeMapping {
    pub fn new(image: Vec<NodeId>) -> Self {
        NodeMapping { image }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn get(&self, node: NodeId) -> NodeId {
        self.image[node.0]
    }

    pub fn images(&self) -> &[NodeId] {
        &self.image
    }

    pub fn is_bijective(&self, target_count: usize) -> bool {
        self.image.len() == target_count
            && self.image.iter().collect::<BTreeSet<_>>().len() == target_count
    }
}

/// Whether `alpha` is a local isomorphism from `source` onto `target`: it is
/// surjective, preserves labels and designations, and maps the successors of
/// each node exactly onto the successors of its image.
pub fn check_local_isomorphism(source: &RbrGraph, target: &RbrGraph, alpha: &NodeMapping) -> Result<bool> {
    if source.agent_names() != target.agent_names() {
        return Err(Error::AgentUniverseMismatch);
    }
    if alpha.len() != source.node_count() {
        return Err(Error::PartialMapping(format!(
            "{} images for {} nodes",
            alpha.len(),
            source.node_count()
        )));
    }
    if let Some(bad) = alpha.images().iter().find(|m| !target.contains(**m)) {
        return Err(Error::PartialMapping(format!("image {bad} is not a node of the target")));
    }
    let hit: BTreeSet<NodeId> = alpha.images().iter().copied().collect();
    if hit.len() != target.node_count() {
        return Ok(false);
    }
    for n in source.nodes() {
        let image = alpha.get(n);
        if source.label(n) != target.label(image) {
            return Ok(false);
        }
        let mapped: BTreeSet<NodeId> = source.successors(n).map(|(_, m)| alpha.get(m)).collect();
        let expected: BTreeSet<NodeId> = target.successors(image).map(|(_, m)| m).collect();
        if mapped != expected {
            return Ok(false);
        }
    }
    for a in source.agents() {
        match (source.designated(a), target.designated(a)) {
            (None, None) => {}
            (Some(n), Some(m)) if alpha.get(n) == m => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}

/// For two canonical graphs, the isomorphism between them if they are
/// equivalent.
pub fn find_isomorphism(left: &RbrGraph, right: &RbrGraph) -> Result<Option<NodeMapping>> {
    if left.agent_names() != right.agent_names() {
        return Err(Error::AgentUniverseMismatch);
    }
    if !is_canonical(left) || !is_canonical(right) {
        return Err(Error::NotCanonical);
    }
    if !graphs_equivalent(left, right)? || left.node_count() != right.node_count() {
        return Ok(None);
    }
    let union = disjoint_union(left, right)?;
    let p = finest_partition(&union);
    let offset = left.node_count();
    let mut image = vec![None; offset];
    for block in p.blocks() {
        match block.as_slice() {
            [l, r] if l.0 < offset && r.0 >= offset => image[l.0] = Some(NodeId(r.0 - offset)),
            _ => return Ok(None),
        }
    }
    let mapping = NodeMapping::new(image.into_iter().map(|m| m.expect("every block pairs two nodes")).collect());
    if check_local_isomorphism(left, right, &mapping)? {
        Ok(Some(mapping))
    } else {
        Ok(None)
    }
}
