//! Random RBR graphs for property tests and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{validate_graph, AgentId, NodeId, RawGraph, RbrGraph};

/// Shape parameters for [`random_graph`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphShape {
    pub nodes: usize,
    pub agents: usize,
    /// Chance that a node gets an extra successor for a given other agent.
    pub edge_probability: f64,
    /// Chance that an agent without a designated node gets one.
    pub designation_probability: f64,
}

impl GraphShape {
    pub fn new(nodes: usize, agents: usize) -> Self {
        GraphShape {
            nodes,
            agents,
            edge_probability: 0.5,
            designation_probability: 0.5,
        }
    }
}

pub fn agent_names(count: usize) -> Vec<String> {
    (0..count)
        .map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("a{i}")
            }
        })
        .collect()
}

/// A valid graph with exactly `shape.nodes` nodes (or a single node when
/// there is only one agent). Every node after the first hangs off an earlier
/// node or is designated, which keeps all of them reachable; further edges
/// and designations are then added at random.
pub fn random_graph<R: Rng + ?Sized>(rng: &mut R, shape: GraphShape) -> RbrGraph {
    assert!(shape.nodes >= 1 && shape.agents >= 1, "need at least one node and one agent");
    let agents = shape.agents;
    let nodes = if agents == 1 { 1 } else { shape.nodes };
    let mut labels: Vec<usize> = Vec::with_capacity(nodes);
    let mut succ: Vec<Option<usize>> = vec![None; nodes * agents];
    let mut designated: Vec<Option<usize>> = vec![None; agents];

    let first = rng.gen_range(0..agents);
    labels.push(first);
    designated[first] = Some(0);

    let mut order: Vec<usize> = (0..agents).collect();
    for i in 1..nodes {
        order.shuffle(rng);
        let preferred = rng.gen_range(0..agents);
        order.retain(|&a| a != preferred);
        order.insert(0, preferred);
        let mut placed = false;
        for &label in &order {
            if let Some(parent) = find_parent(rng, &labels, &succ, agents, label) {
                succ[parent * agents + label] = Some(i);
                labels.push(label);
                placed = true;
                break;
            }
            if designated[label].is_none() {
                designated[label] = Some(i);
                labels.push(label);
                placed = true;
                break;
            }
        }
        assert!(placed, "with two or more agents some label always fits");
    }

    let mut by_label: Vec<Vec<usize>> = vec![Vec::new(); agents];
    for (n, &l) in labels.iter().enumerate() {
        by_label[l].push(n);
    }
    for n in 0..nodes {
        for a in 0..agents {
            if a == labels[n] || succ[n * agents + a].is_some() || by_label[a].is_empty() {
                continue;
            }
            if rng.gen_bool(shape.edge_probability) {
                succ[n * agents + a] = by_label[a].choose(rng).copied();
            }
        }
    }
    for a in 0..agents {
        if designated[a].is_none() && !by_label[a].is_empty() && rng.gen_bool(shape.designation_probability) {
            designated[a] = by_label[a].choose(rng).copied();
        }
    }

    let mut raw = RawGraph::new(agent_names(agents));
    for (n, &l) in labels.iter().enumerate() {
        raw.add_node(format!("n{n}"), AgentId(l));
    }
    for n in 0..nodes {
        for a in 0..agents {
            if let Some(m) = succ[n * agents + a] {
                raw.add_edge(NodeId(n), NodeId(m));
            }
        }
    }
    for (a, n) in designated.iter().enumerate() {
        if let Some(n) = n {
            raw.designate(AgentId(a), NodeId(*n));
        }
    }
    validate_graph(raw).expect("generated graphs are valid by construction")
}

fn find_parent<R: Rng + ?Sized>(
    rng: &mut R,
    labels: &[usize],
    succ: &[Option<usize>],
    agents: usize,
    label: usize,
) -> Option<usize> {
    let free = |j: usize| labels[j] != label && succ[j * agents + label].is_none();
    for _ in 0..8 {
        let j = rng.gen_range(0..labels.len());
        if free(j) {
            return Some(j);
        }
    }
    (0..labels.len()).filter(|&j| free(j)).collect::<Vec<_>>().choose(rng).copied()
}

/// `graph` plus an undesignated copy of each of its nodes. Some edges, of
/// originals and copies alike, are redirected from a node to its copy, which
/// keeps every belief hierarchy unchanged. Copies that end up unreachable are
/// dropped.
pub fn with_redundant_copies<R: Rng + ?Sized>(rng: &mut R, graph: &RbrGraph) -> RbrGraph {
    let n = graph.node_count();
    let pick = |rng: &mut R, m: NodeId| if rng.gen_bool(0.5) { m.0 + n } else { m.0 };
    let mut edges = Vec::new();
    for src in graph.nodes() {
        for (_, m) in graph.successors(src) {
            edges.push((src.0, pick(rng, m)));
            edges.push((src.0 + n, pick(rng, m)));
        }
    }
    // keep only nodes reachable from the designated originals
    let mut reached = vec![false; 2 * n];
    let mut stack: Vec<usize> = graph.designations().map(|(_, d)| d.0).collect();
    for &d in &stack {
        reached[d] = true;
    }
    while let Some(x) = stack.pop() {
        for &(from, to) in &edges {
            if from == x && !reached[to] {
                reached[to] = true;
                stack.push(to);
            }
        }
    }
    let mut index = vec![None; 2 * n];
    let mut raw = RawGraph::new(graph.agent_names().iter().cloned());
    for x in (0..2 * n).filter(|&x| reached[x]) {
        let original = NodeId(x % n);
        let name = if x < n {
            graph.node_name(original).to_string()
        } else {
            format!("{}'", graph.node_name(original))
        };
        index[x] = Some(raw.add_node(name, graph.label(original)));
    }
    for &(from, to) in &edges {
        if let (Some(f), Some(t)) = (index[from], index[to]) {
            raw.add_edge(f, t);
        }
    }
    for (a, d) in graph.designations() {
        raw.designate(a, index[d.0].expect("designated nodes are reachable"));
    }
    validate_graph(raw).expect("redirecting edges to copies keeps the graph valid")
}

/// Reproducible corpus of small random graphs with 1 to `max_nodes` nodes
/// over 1 to `max_agents` agents.
pub fn small_corpus<R: Rng + ?Sized>(rng: &mut R, count: usize, max_nodes: usize, max_agents: usize) -> Vec<RbrGraph> {
    (0..count)
        .map(|_| {
            let agents = rng.gen_range(1..=max_agents);
            let nodes = rng.gen_range(1..=max_nodes);
            let mut shape = GraphShape::new(nodes, agents);
            shape.edge_probability = rng.gen_range(0.2..=0.9);
            random_graph(rng, shape)
        })
        .collect()
}
