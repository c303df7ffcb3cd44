//! Naive reference implementations used as ground truth in tests.
//!
//! Nothing here calls into the hierarchy, dominance, rationalisation or
//! partition code: paths are enumerated by plain DFS and dominance by nested
//! loops over outcomes through [`Game::compare`].

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::game::{make_sequence_game, Game, StrategyId};
use crate::graph::{AgentId, BeliefSequenceSet, NodeId, RbrGraph};
use crate::rationalise::Solution;

/// Longest path the DFS oracle agrees to enumerate.
pub const ORACLE_DEPTH_CAP: usize = 12;

/// Label sequences of all paths from `node` with at most `depth` nodes.
pub fn brute_force_hierarchy(graph: &RbrGraph, node: NodeId, depth: usize) -> Result<BeliefSequenceSet> {
    if !graph.contains(node) {
        return Err(Error::UnknownNode(node));
    }
    if depth > ORACLE_DEPTH_CAP {
        return Err(Error::SizeCap {
            what: "oracle path depth",
            limit: ORACLE_DEPTH_CAP,
        });
    }
    fn walk(graph: &RbrGraph, at: NodeId, depth: usize, path: &mut Vec<AgentId>, out: &mut BeliefSequenceSet) {
        path.push(graph.label(at));
        out.insert(path.clone());
        if path.len() < depth {
            for m in graph.nodes() {
                if graph.successor(at, graph.label(m)) == Some(m) {
                    walk(graph, m, depth, path, out);
                }
            }
        }
        path.pop();
    }
    let mut out = BeliefSequenceSet::new();
    if depth > 0 {
        walk(graph, node, depth, &mut Vec::new(), &mut out);
    }
    Ok(out)
}

fn check_agents(graph: &RbrGraph, game: &Game) -> Result<()> {
    if graph.agent_names() != game.agent_names() {
        let missing = graph
            .agent_names()
            .iter()
            .find(|a| game.agent_id(a).is_none())
            .cloned()
            .unwrap_or_default();
        return Err(Error::AgentMissingFromGame(missing));
    }
    Ok(())
}

/// Is `s` strictly worse than `t` for `agent` against every combination of
/// the opponents' `sets`? Enumerates outcomes recursively.
fn strictly_worse_everywhere(
    game: &Game,
    agent: usize,
    sets: &[Vec<usize>],
    s: usize,
    t: usize,
    outcome: &mut Vec<StrategyId>,
) -> bool {
    let i = outcome.len();
    if i == sets.len() {
        let mut with_s = outcome.clone();
        let mut with_t = outcome.clone();
        with_s[agent] = StrategyId(s);
        with_t[agent] = StrategyId(t);
        return game.compare(AgentId(agent), &with_s, &with_t) == crate::game::Comparison::Less;
    }
    if i == agent {
        outcome.push(StrategyId(s));
        let r = strictly_worse_everywhere(game, agent, sets, s, t, outcome);
        outcome.pop();
        return r;
    }
    for &x in &sets[i] {
        outcome.push(StrategyId(x));
        let r = strictly_worse_everywhere(game, agent, sets, s, t, outcome);
        outcome.pop();
        if !r {
            return false;
        }
    }
    true
}

/// Iterates rationalisation from the full solution on the given nodes, which
/// must be closed under successors. Returns entries indexed like `graph`'s
/// nodes; entries of nodes outside `nodes` are left empty.
fn fixpoint_on(graph: &RbrGraph, game: &Game, nodes: &[NodeId]) -> Result<Vec<Vec<usize>>> {
    let mut sets: Vec<Vec<usize>> = vec![Vec::new(); graph.node_count()];
    let mut profile_count: usize = 1;
    for &n in nodes {
        sets[n.0] = (0..game.strategy_count(graph.label(n))).collect();
    }
    for a in 0..game.agent_count() {
        profile_count = profile_count.saturating_mul(game.strategy_count(AgentId(a)));
    }
    if profile_count > 10_000_000 {
        return Err(Error::SizeCap {
            what: "oracle outcome count",
            limit: 10_000_000,
        });
    }
    loop {
        let mut next = sets.clone();
        for &n in nodes {
            let agent = graph.label(n).0;
            let scene: Vec<Vec<usize>> = (0..game.agent_count())
                .map(|b| {
                    if b == agent {
                        Vec::new()
                    } else {
                        match graph.successor(n, AgentId(b)) {
                            Some(m) => sets[m.0].clone(),
                            None => (0..game.strategy_count(AgentId(b))).collect(),
                        }
                    }
                })
                .collect();
            let space = game.strategy_count(AgentId(agent));
            next[n.0] = (0..space)
                .filter(|&s| {
                    !(0..space).any(|t| {
                        t != s && strictly_worse_everywhere(game, agent, &scene, s, t, &mut Vec::new())
                    })
                })
                .collect();
        }
        if next == sets {
            return Ok(sets);
        }
        sets = next;
    }
}

/// The rational solution computed literally from the definitions.
pub fn brute_force_rational_solution(graph: &RbrGraph, game: &Game) -> Result<Solution> {
    check_agents(graph, game)?;
    let nodes: Vec<NodeId> = graph.nodes().collect();
    let sets = fixpoint_on(graph, game, &nodes)?;
    Solution::new(
        graph,
        game,
        sets.into_iter()
            .map(|set| set.into_iter().map(StrategyId).collect())
            .collect(),
    )
}

fn reachable(graph: &RbrGraph, from: NodeId) -> Vec<NodeId> {
    let mut seen = BTreeSet::from([from]);
    let mut stack = vec![from];
    while let Some(n) = stack.pop() {
        for m in graph.nodes() {
            if graph.successor(n, graph.label(m)) == Some(m) && seen.insert(m) {
                stack.push(m);
            }
        }
    }
    seen.into_iter().collect()
}

fn gk_entry(graph: &RbrGraph, node: NodeId, game: &Game) -> Result<BTreeSet<String>> {
    let sets = fixpoint_on(graph, game, &reachable(graph, node))?;
    let agent = graph.label(node);
    Ok(sets[node.0]
        .iter()
        .map(|&s| game.token(agent, StrategyId(s)).to_string())
        .collect())
}

/// The smallest `k <= k_max` at which the bounded hierarchies of the two
/// nodes differ, confirmed by checking that the sequence game of that length
/// gives the nodes different rational-solution entries. `None` if the
/// hierarchies agree up to `k_max`.
pub fn gk_distinguisher(
    left: &RbrGraph,
    left_node: NodeId,
    right: &RbrGraph,
    right_node: NodeId,
    k_max: usize,
) -> Result<Option<usize>> {
    if left.agent_names() != right.agent_names() {
        return Err(Error::AgentUniverseMismatch);
    }
    for k in 1..=k_max {
        let l = brute_force_hierarchy(left, left_node, k)?;
        let r = brute_force_hierarchy(right, right_node, k)?;
        if l == r {
            continue;
        }
        if left.label(left_node) != right.label(right_node) {
            // Different agents play in different strategy spaces.
            return Ok(Some(k));
        }
        let game = make_sequence_game(left.agent_names(), k)?;
        if gk_entry(left, left_node, &game)? == gk_entry(right, right_node, &game)? {
            return Err(Error::InvalidSolution(format!(
                "hierarchies differ at length {k} but the sequence game does not separate the nodes"
            )));
        }
        return Ok(Some(k));
    }
    Ok(None)
}

/// Graph equivalence decided from bounded hierarchies at depth
/// `|N_left| + |N_right|`.
pub fn brute_force_graphs_equivalent(left: &RbrGraph, right: &RbrGraph) -> Result<bool> {
    if left.agent_names() != right.agent_names() {
        return Err(Error::AgentUniverseMismatch);
    }
    let depth = left.node_count() + right.node_count();
    for a in left.agents() {
        match (left.designated(a), right.designated(a)) {
            (None, None) => {}
            (Some(n), Some(m)) => {
                if brute_force_hierarchy(left, n, depth)? != brute_force_hierarchy(right, m, depth)? {
                    return Ok(false);
                }
            }
            _ => return Ok(false),
        }
    }
    Ok(true)
}

/// Number of distinct hierarchies at depth `|N|` over the graph's nodes.
pub fn distinct_hierarchy_count(graph: &RbrGraph) -> Result<usize> {
    let depth = graph.node_count();
    let mut seen = BTreeSet::new();
    for n in graph.nodes() {
        seen.insert(brute_force_hierarchy(graph, n, depth)?);
    }
    Ok(seen.len())
}
