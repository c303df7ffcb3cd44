//! RBR graphs: labelled digraphs whose nodes stand for (real or doxastic)
//! agents and whose edges read "believes that ... is rational".
//!
//! Edges live only in a dense per-agent successor table: `successor(n, a)`
//! is the unique `a`-labelled node that `n` believes rational, if any.
//! Graphs are checked once by [`validate_graph`] and immutable afterwards.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::error::{Error, Result};

/// Default cap on the number of belief sequences a single hierarchy query may
/// materialise.
pub const DEFAULT_SEQUENCE_CAP: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AgentId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub usize);

impl AgentId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl NodeId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for AgentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawNode {
    pub name: String,
    pub label: AgentId,
    pub line: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawEdge {
    pub from: NodeId,
    pub to: NodeId,
    pub line: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawDesignation {
    pub agent: AgentId,
    pub node: NodeId,
    pub line: Option<usize>,
}

/// Unchecked graph components, as produced by a parser or built by hand.
///
/// Edges are plain node pairs here; [`validate_graph`] turns them into the
/// successor table.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawGraph {
    pub agents: Vec<String>,
    pub nodes: Vec<RawNode>,
    pub edges: Vec<RawEdge>,
    pub designations: Vec<RawDesignation>,
}

impl RawGraph {
    pub fn new<S: Into<String>>(agents: impl IntoIterator<Item = S>) -> Self {
        RawGraph {
            agents: agents.into_iter().map(Into::into).collect(),
            ..Default::default()
        }
    }

    pub fn agent_id(&self, name: &str) -> Option<AgentId> {
        self.agents.iter().position(|a| a == name).map(AgentId)
    }

    pub fn node_id(&self, name: &str) -> Option<NodeId> {
        self.nodes.iter().position(|n| n.name == name).map(NodeId)
    }

    pub fn add_node(&mut self, name: impl Into<String>, label: AgentId) -> NodeId {
        self.nodes.push(RawNode {
            name: name.into(),
            label,
            line: None,
        });
        NodeId(self.nodes.len() - 1)
    }

    pub fn add_edge(&mut self, from: NodeId, to: NodeId) {
        self.edges.push(RawEdge {
            from,
            to,
            line: None,
        });
    }

    pub fn designate(&mut self, agent: AgentId, node: NodeId) {
        self.designations.push(RawDesignation {
            agent,
            node,
            line: None,
        });
    }

    pub fn validate(self) -> Result<RbrGraph> {
        validate_graph(self)
    }
}

/// A single reason a [`RawGraph`] is not an RBR graph.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphDefect {
    #[error("the agent universe is empty")]
    EmptyAgentUniverse,
    #[error("agent names must be non-empty")]
    EmptyAgentName,
    #[error("agent `{0}` is declared twice")]
    DuplicateAgent(String),
    #[error("{}node `{name}` is declared twice", at(*line))]
    DuplicateNode { name: String, line: Option<usize> },
    #[error("{}node `{node}` is labelled with an unknown agent", at(*line))]
    UnknownLabel { node: String, line: Option<usize> },
    #[error("{}edge refers to a node that does not exist", at(*line))]
    DanglingEdge { line: Option<usize> },
    #[error("{}node `{node}` believes in its own agent's rationality (edge to `{target}`)", at(*line))]
    SelfBelief {
        node: String,
        target: String,
        line: Option<usize>,
    },
    #[error("{}node `{node}` has two distinct successors labelled `{agent}`", at(*line))]
    DuplicateSuccessor {
        node: String,
        agent: String,
        line: Option<usize>,
    },
    #[error("{}designation refers to an unknown agent or node", at(*line))]
    DanglingDesignation { line: Option<usize> },
    #[error("{}agent `{agent}` is designated more than once", at(*line))]
    DuplicateDesignation { agent: String, line: Option<usize> },
    #[error("{}agent `{agent}` is designated to node `{node}` which carries another label", at(*line))]
    DesignationMismatch {
        agent: String,
        node: String,
        line: Option<usize>,
    },
    #[error("{}node `{node}` is not reachable from any designated node", at(*line))]
    UnreachableNode { node: String, line: Option<usize> },
}

fn at(line: Option<usize>) -> String {
    match line {
        Some(l) => format!("line {l}: "),
        None => String::new(),
    }
}

/// A checked RBR graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RbrGraph {
    agents: Vec<String>,
    node_names: Vec<String>,
    labels: Vec<AgentId>,
    /// `succ[n * |A| + a]`
    succ: Vec<Option<NodeId>>,
    designation: Vec<Option<NodeId>>,
}

/// Checks raw components against the RBR graph rules and builds the
/// successor table. All defects found are reported together.
pub fn validate_graph(raw: RawGraph) -> Result<RbrGraph> {
    let mut defects = Vec::new();
    let agent_count = raw.agents.len();
    if agent_count == 0 {
        defects.push(GraphDefect::EmptyAgentUniverse);
    }
    let mut seen = BTreeSet::new();
    for name in &raw.agents {
        if name.is_empty() {
            defects.push(GraphDefect::EmptyAgentName);
        } else if !seen.insert(name.as_str()) {
            defects.push(GraphDefect::DuplicateAgent(name.clone()));
        }
    }
    let mut seen = BTreeSet::new();
    for node in &raw.nodes {
        if !seen.insert(node.name.as_str()) {
            defects.push(GraphDefect::DuplicateNode {
                name: node.name.clone(),
                line: node.line,
            });
        }
        if node.label.0 >= agent_count {
            defects.push(GraphDefect::UnknownLabel {
                node: node.name.clone(),
                line: node.line,
            });
        }
    }
    if !defects.is_empty() {
        return Err(Error::InvalidGraph(defects));
    }

    let node_count = raw.nodes.len();
    let label = |n: NodeId| raw.nodes[n.0].label;
    let name = |n: NodeId| raw.nodes[n.0].name.clone();
    let mut succ = vec![None; node_count * agent_count];
    for edge in &raw.edges {
        if edge.from.0 >= node_count || edge.to.0 >= node_count {
            defects.push(GraphDefect::DanglingEdge { line: edge.line });
            continue;
        }
        let target_label = label(edge.to);
        if label(edge.from) == target_label {
            defects.push(GraphDefect::SelfBelief {
                node: name(edge.from),
                target: name(edge.to),
                line: edge.line,
            });
            continue;
        }
        let slot = &mut succ[edge.from.0 * agent_count + target_label.0];
        match *slot {
            None => *slot = Some(edge.to),
            Some(existing) if existing == edge.to => {}
            Some(_) => defects.push(GraphDefect::DuplicateSuccessor {
                node: name(edge.from),
                agent: raw.agents[target_label.0].clone(),
                line: edge.line,
            }),
        }
    }

    let mut designation = vec![None; agent_count];
    for d in &raw.designations {
        if d.agent.0 >= agent_count || d.node.0 >= node_count {
            defects.push(GraphDefect::DanglingDesignation { line: d.line });
            continue;
        }
        let agent_name = raw.agents[d.agent.0].clone();
        if designation[d.agent.0].is_some() {
            defects.push(GraphDefect::DuplicateDesignation {
                agent: agent_name,
                line: d.line,
            });
            continue;
        }
        if label(d.node) != d.agent {
            defects.push(GraphDefect::DesignationMismatch {
                agent: agent_name,
                node: name(d.node),
                line: d.line,
            });
            continue;
        }
        designation[d.agent.0] = Some(d.node);
    }

    let graph = RbrGraph {
        agents: raw.agents.clone(),
        node_names: raw.nodes.iter().map(|n| n.name.clone()).collect(),
        labels: raw.nodes.iter().map(|n| n.label).collect(),
        succ,
        designation,
    };
    let reached = graph.reachable_from_designated();
    for (i, node) in raw.nodes.iter().enumerate() {
        if !reached[i] {
            defects.push(GraphDefect::UnreachableNode {
                node: node.name.clone(),
                line: node.line,
            });
        }
    }
    if defects.is_empty() {
        Ok(graph)
    } else {
        Err(Error::InvalidGraph(defects))
    }
}

impl RbrGraph {
    /// Builds a graph without the reachability check. Used for internal
    /// constructions such as disjoint unions, where designations are dropped.
    pub(crate) fn from_parts_unchecked(
        agents: Vec<String>,
        node_names: Vec<String>,
        labels: Vec<AgentId>,
        succ: Vec<Option<NodeId>>,
        designation: Vec<Option<NodeId>>,
    ) -> Self {
        debug_assert_eq!(succ.len(), labels.len() * agents.len());
        debug_assert_eq!(designation.len(), agents.len());
        RbrGraph {
            agents,
            node_names,
            labels,
            succ,
            designation,
        }
    }

    pub fn agent_count(&self) -> usize {
        self.agents.len()
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn agents(&self) -> impl Iterator<Item = AgentId> + '_ {
        (0..self.agents.len()).map(AgentId)
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.labels.len()).map(NodeId)
    }

    pub fn agent_names(&self) -> &[String] {
        &self.agents
    }

    pub fn agent_name(&self, agent: AgentId) -> &str {
        &self.agents[agent.0]
    }

    pub fn node_name(&self, node: NodeId) -> &str {
        &self.node_names[node.0]
    }

    pub fn agent_id(&self, name: &str) -> Option<AgentId> {
        self.agents.iter().position(|a| a == name).map(AgentId)
    }

    pub fn node_id(&self, name: &str) -> Option<NodeId> {
        self.node_names.iter().position(|n| n == name).map(NodeId)
    }

    pub fn contains(&self, node: NodeId) -> bool {
        node.0 < self.labels.len()
    }

    pub fn label(&self, node: NodeId) -> AgentId {
        self.labels[node.0]
    }

    pub fn labels(&self) -> &[AgentId] {
        &self.labels
    }

    /// The `agent`-labelled node that `node` believes rational, if any.
    pub fn successor(&self, node: NodeId, agent: AgentId) -> Option<NodeId> {
        self.succ[node.0 * self.agents.len() + agent.0]
    }

    /// The successor row of `node`, indexed by agent.
    pub fn successor_row(&self, node: NodeId) -> &[Option<NodeId>] {
        let width = self.agents.len();
        &self.succ[node.0 * width..(node.0 + 1) * width]
    }

    pub fn successors(&self, node: NodeId) -> impl Iterator<Item = (AgentId, NodeId)> + '_ {
        self.successor_row(node)
            .iter()
            .enumerate()
            .filter_map(|(a, m)| m.map(|m| (AgentId(a), m)))
    }

    pub fn designated(&self, agent: AgentId) -> Option<NodeId> {
        self.designation[agent.0]
    }

    pub fn designations(&self) -> impl Iterator<Item = (AgentId, NodeId)> + '_ {
        self.designation
            .iter()
            .enumerate()
            .filter_map(|(a, n)| n.map(|n| (AgentId(a), n)))
    }

    pub fn is_designated(&self, node: NodeId) -> bool {
        self.designation.contains(&Some(node))
    }

    /// All edges, ordered by source node and then by target label.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.nodes()
            .flat_map(move |n| self.successors(n).map(move |(_, m)| (n, m)))
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().filter(|s| s.is_some()).count()
    }

    pub fn to_raw(&self) -> RawGraph {
        RawGraph {
            agents: self.agents.clone(),
            nodes: self
                .nodes()
                .map(|n| RawNode {
                    name: self.node_names[n.0].clone(),
                    label: self.labels[n.0],
                    line: None,
                })
                .collect(),
            edges: self
                .edges()
                .map(|(from, to)| RawEdge {
                    from,
                    to,
                    line: None,
                })
                .collect(),
            designations: self
                .designations()
                .map(|(agent, node)| RawDesignation {
                    agent,
                    node,
                    line: None,
                })
                .collect(),
        }
    }

    fn reachable_from_designated(&self) -> Vec<bool> {
        let mut reached = vec![false; self.node_count()];
        let mut queue: VecDeque<NodeId> = self.designations().map(|(_, n)| n).collect();
        for &n in &queue {
            reached[n.0] = true;
        }
        while let Some(n) = queue.pop_front() {
            for (_, m) in self.successors(n) {
                if !reached[m.0] {
                    reached[m.0] = true;
                    queue.push_back(m);
                }
            }
        }
        reached
    }

    fn check_node(&self, node: NodeId) -> Result<()> {
        if self.contains(node) {
            Ok(())
        } else {
            Err(Error::UnknownNode(node))
        }
    }

    /// The nodes `node` has an edge to.
    pub fn adjacency(&self, node: NodeId) -> Result<BTreeSet<NodeId>> {
        self.check_node(node)?;
        Ok(self.successors(node).map(|(_, m)| m).collect())
    }

    /// The agents that `node` believes rational: labels of its adjacent nodes.
    pub fn believed_rational(&self, node: NodeId) -> Result<BTreeSet<AgentId>> {
        self.check_node(node)?;
        Ok(self.successors(node).map(|(a, _)| a).collect())
    }

    /// Belief sequences of all paths of exactly `length` nodes starting at
    /// `node`, with the default size cap.
    pub fn path_sequences(&self, node: NodeId, length: usize) -> Result<BeliefSequenceSet> {
        self.path_sequences_capped(node, length, DEFAULT_SEQUENCE_CAP)
    }

    /// Like [`path_sequences`](Self::path_sequences) but fails with
    /// [`Error::SizeCap`] once any intermediate set exceeds `cap` sequences.
    /// The set grows exponentially with `length` on cyclic graphs.
    pub fn path_sequences_capped(
        &self,
        node: NodeId,
        length: usize,
        cap: usize,
    ) -> Result<BeliefSequenceSet> {
        self.check_node(node)?;
        if length == 0 {
            return Err(Error::ZeroLength);
        }
        let mut levels = self.hierarchy_levels(node, length, cap)?;
        Ok(levels.pop().expect("at least one level"))
    }

    /// All belief sequences of length at most `depth` starting at `node`.
    /// Empty when `depth` is zero.
    pub fn belief_hierarchy_bounded(&self, node: NodeId, depth: usize) -> Result<BeliefSequenceSet> {
        self.belief_hierarchy_bounded_capped(node, depth, DEFAULT_SEQUENCE_CAP)
    }

    pub fn belief_hierarchy_bounded_capped(
        &self,
        node: NodeId,
        depth: usize,
        cap: usize,
    ) -> Result<BeliefSequenceSet> {
        self.check_node(node)?;
        let mut out = BeliefSequenceSet::new();
        if depth == 0 {
            return Ok(out);
        }
        for level in self.hierarchy_levels(node, depth, cap)? {
            out.extend(level);
            if out.len() > cap {
                return Err(Error::SizeCap {
                    what: "belief hierarchy",
                    limit: cap,
                });
            }
        }
        Ok(out)
    }

    /// Level sets `Π^1..=Π^length` for `node`, expanded bottom-up over the
    /// nodes reachable within `length - 1` steps and deduplicated per level.
    fn hierarchy_levels(
        &self,
        node: NodeId,
        length: usize,
        cap: usize,
    ) -> Result<Vec<BeliefSequenceSet>> {
        // dist[m] = shortest distance from `node`; only nodes with
        // dist + level <= length contribute.
        let mut dist = vec![usize::MAX; self.node_count()];
        dist[node.0] = 0;
        let mut queue = VecDeque::from([node]);
        while let Some(n) = queue.pop_front() {
            if dist[n.0] + 1 >= length {
                continue;
            }
            for (_, m) in self.successors(n) {
                if dist[m.0] == usize::MAX {
                    dist[m.0] = dist[n.0] + 1;
                    queue.push_back(m);
                }
            }
        }
        let relevant: Vec<NodeId> = self.nodes().filter(|n| dist[n.0] != usize::MAX).collect();

        // memo[m] holds Π_m^level for the current level
        let mut memo: Vec<Option<BTreeSet<Vec<AgentId>>>> = vec![None; self.node_count()];
        for &m in &relevant {
            memo[m.0] = Some(BTreeSet::from([vec![self.label(m)]]));
        }
        let mut levels = vec![BeliefSequenceSet(memo[node.0].clone().unwrap())];
        for level in 2..=length {
            let mut next: Vec<Option<BTreeSet<Vec<AgentId>>>> = vec![None; self.node_count()];
            for &m in &relevant {
                if dist[m.0] + level > length {
                    continue;
                }
                let head = self.label(m);
                let mut set = BTreeSet::new();
                for (_, child) in self.successors(m) {
                    let Some(tails) = &memo[child.0] else { continue };
                    for tail in tails {
                        let mut seq = Vec::with_capacity(tail.len() + 1);
                        seq.push(head);
                        seq.extend_from_slice(tail);
                        set.insert(seq);
                    }
                    if set.len() > cap {
                        return Err(Error::SizeCap {
                            what: "belief sequence set",
                            limit: cap,
                        });
                    }
                }
                next[m.0] = Some(set);
            }
            memo = next;
            levels.push(BeliefSequenceSet(memo[node.0].clone().unwrap_or_default()));
        }
        Ok(levels)
    }
}

/// A finite set of belief sequences, kept in lexicographic order of agent
/// indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BeliefSequenceSet(BTreeSet<Vec<AgentId>>);

impl BeliefSequenceSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, seq: &[AgentId]) -> bool {
        self.0.contains(seq)
    }

    pub fn insert(&mut self, seq: Vec<AgentId>) -> bool {
        self.0.insert(seq)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vec<AgentId>> {
        self.0.iter()
    }

    pub fn is_subset(&self, other: &BeliefSequenceSet) -> bool {
        self.0.is_subset(&other.0)
    }

    /// Renders the set with agent names, e.g. `{(a), (a,b)}`.
    pub fn display_with(&self, agents: &[String]) -> String {
        let items: Vec<String> = self
            .0
            .iter()
            .map(|seq| {
                let names: Vec<&str> = seq.iter().map(|a| agents[a.0].as_str()).collect();
                format!("({})", names.join(","))
            })
            .collect();
        format!("{{{}}}", items.join(", "))
    }
}

impl Extend<Vec<AgentId>> for BeliefSequenceSet {
    fn extend<T: IntoIterator<Item = Vec<AgentId>>>(&mut self, iter: T) {
        self.0.extend(iter)
    }
}

impl Extend<BeliefSequenceSet> for BeliefSequenceSet {
    fn extend<T: IntoIterator<Item = BeliefSequenceSet>>(&mut self, iter: T) {
        for set in iter {
            self.0.extend(set.0)
        }
    }
}

impl FromIterator<Vec<AgentId>> for BeliefSequenceSet {
    fn from_iter<T: IntoIterator<Item = Vec<AgentId>>>(iter: T) -> Self {
        BeliefSequenceSet(iter.into_iter().collect())
    }
}

impl IntoIterator for BeliefSequenceSet {
    type Item = Vec<AgentId>;
    type IntoIter = std::collections::btree_set::IntoIter<Vec<AgentId>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a> IntoIterator for &'a BeliefSequenceSet {
    type Item = &'a Vec<AgentId>;
    type IntoIter = std::collections::btree_set::Iter<'a, Vec<AgentId>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}
