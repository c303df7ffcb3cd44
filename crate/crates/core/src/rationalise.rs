//! Solutions over RBR graphs and iterated rationalisation.

use crate::error::{Error, Result};
use crate::game::{rational_response, Game, ReasoningScene, StrategyId};
use crate::graph::{AgentId, NodeId, RbrGraph};

/// A nonempty set of strategies for every node, drawn from the strategy space
/// of the node's agent. Sets are kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Solution {
    sets: Vec<Vec<StrategyId>>,
}

impl Solution {
    /// Checks `sets` against the graph and game, then sorts and deduplicates
    /// each entry.
    pub fn new(graph: &RbrGraph, game: &Game, sets: Vec<Vec<StrategyId>>) -> Result<Self> {
        check_compatible(graph, game)?;
        if sets.len() != graph.node_count() {
            return Err(Error::InvalidSolution(format!(
                "{} node entries for a graph with {} nodes",
                sets.len(),
                graph.node_count()
            )));
        }
        let mut sets = sets;
        for (n, set) in sets.iter_mut().enumerate() {
            set.sort_unstable();
            set.dedup();
            let agent = graph.label(NodeId(n));
            if set.is_empty() {
                return Err(Error::InvalidSolution(format!(
                    "node `{}` has an empty strategy set",
                    graph.node_name(NodeId(n))
                )));
            }
            if set.iter().any(|s| s.0 >= game.strategy_count(agent)) {
                return Err(Error::InvalidSolution(format!(
                    "node `{}` uses strategies outside the space of agent `{}`",
                    graph.node_name(NodeId(n)),
                    graph.agent_name(agent)
                )));
            }
        }
        Ok(Solution { sets })
    }

    pub fn node_count(&self) -> usize {
        self.sets.len()
    }

    pub fn get(&self, node: NodeId) -> &[StrategyId] {
        &self.sets[node.0]
    }

    pub fn entries(&self) -> &[Vec<StrategyId>] {
        &self.sets
    }

    /// Pointwise inclusion: every entry of `other` is a subset of the
    /// matching entry of `self`.
    pub fn includes(&self, other: &Solution) -> bool {
        self.sets.len() == other.sets.len()
            && self
                .sets
                .iter()
                .zip(&other.sets)
                .all(|(big, small)| small.iter().all(|s| big.binary_search(s).is_ok()))
    }

    /// Total number of strategies over all nodes.
    pub fn total_size(&self) -> usize {
        self.sets.iter().map(Vec::len).sum()
    }
}

/// Checks that the game's agents are exactly the graph's agents, in order.
pub fn check_compatible(graph: &RbrGraph, game: &Game) -> Result<()> {
    for (i, name) in graph.agent_names().iter().enumerate() {
        if game.agent_names().get(i) != Some(name) {
            return Err(Error::AgentMissingFromGame(name.clone()));
        }
    }
    if game.agent_count() != graph.agent_count() {
        return Err(Error::InvalidGame(format!(
            "game has {} agents, graph has {}",
            game.agent_count(),
            graph.agent_count()
        )));
    }
    Ok(())
}

/// Every node may play anything in its agent's strategy space.
pub fn full_solution(graph: &RbrGraph, game: &Game) -> Result<Solution> {
    check_compatible(graph, game)?;
    Ok(Solution {
        sets: graph
            .nodes()
            .map(|n| game.strategies(graph.label(n)).collect())
            .collect(),
    })
}

fn check_solution(graph: &RbrGraph, game: &Game, solution: &Solution) -> Result<()> {
    check_compatible(graph, game)?;
    if solution.node_count() != graph.node_count() {
        return Err(Error::InvalidSolution(format!(
            "{} node entries for a graph with {} nodes",
            solution.node_count(),
            graph.node_count()
        )));
    }
    for n in graph.nodes() {
        let limit = game.strategy_count(graph.label(n));
        if solution.get(n).last().is_some_and(|s| s.0 >= limit) {
            return Err(Error::InvalidSolution(format!(
                "node `{}` uses strategies outside its agent's space",
                graph.node_name(n)
            )));
        }
    }
    Ok(())
}

fn scene_for(graph: &RbrGraph, game: &Game, solution: &Solution, node: NodeId) -> ReasoningScene {
    let owner = graph.label(node);
    let sets = graph
        .agents()
        .map(|b| {
            if b == owner {
                Vec::new()
            } else {
                match graph.successor(node, b) {
                    Some(m) => solution.get(m).to_vec(),
                    None => game.strategies(b).collect(),
                }
            }
        })
        .collect();
    ReasoningScene::new(game, owner, sets).expect("solution entries are valid scene sets")
}

/// The scene of `node`: for each other agent `b`, the solution entry of the
/// `b`-successor of `node` when there is one, and all of `b`'s strategies
/// otherwise.
pub fn belief_scene(graph: &RbrGraph, game: &Game, solution: &Solution, node: NodeId) -> Result<ReasoningScene> {
    if !graph.contains(node) {
        return Err(Error::UnknownNode(node));
    }
    check_solution(graph, game, solution)?;
    Ok(scene_for(graph, game, solution, node))
}

fn rationalise_unchecked(graph: &RbrGraph, game: &Game, solution: &Solution) -> Result<Solution> {
    let sets = graph
        .nodes()
        .map(|n| rational_response(game, graph.label(n), &scene_for(graph, game, solution, n)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Solution { sets })
}

/// One round: every node keeps its rational response in its belief scene.
pub fn rationalise(graph: &RbrGraph, game: &Game, solution: &Solution) -> Result<Solution> {
    check_solution(graph, game, solution)?;
    rationalise_unchecked(graph, game, solution)
}

/// Applies [`rationalise`] `rounds` times.
pub fn iterate(graph: &RbrGraph, game: &Game, solution: &Solution, rounds: usize) -> Result<Solution> {
    check_solution(graph, game, solution)?;
    let mut current = solution.clone();
    for _ in 0..rounds {
        current = rationalise_unchecked(graph, game, &current)?;
    }
    Ok(current)
}

pub fn is_stable(graph: &RbrGraph, game: &Game, solution: &Solution) -> Result<bool> {
    Ok(rationalise(graph, game, solution)? == *solution)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSolutionReport {
    pub solution: Solution,
    /// Smallest `i` such that the `i`-th rationalisation of the full solution
    /// is stable.
    pub iterations: usize,
    /// Rounds `1..=iterations + 1`, when requested. The last two entries
    /// coincide unless `iterations` is zero.
    pub trace: Option<Vec<Solution>>,
}

/// Number of rounds after which iteration from the full solution must have
/// stabilised: every unstable round removes at least one strategy somewhere.
pub fn iteration_bound(graph: &RbrGraph, game: &Game) -> usize {
    1 + graph
        .nodes()
        .map(|n| game.strategy_count(graph.label(n)) - 1)
        .sum::<usize>()
}

/// Iterates from the full solution to its fixpoint.
pub fn rational_solution(graph: &RbrGraph, game: &Game, keep_trace: bool) -> Result<RationalSolutionReport> {
    check_compatible(graph, game)?;
    rational_solution_bounded(graph, game, keep_trace, iteration_bound(graph, game))
}

/// Like [`rational_solution`] with an explicit iteration limit; fails with
/// [`Error::NonTermination`] if no fixpoint is certified within `max_iterations`
/// rounds.
pub fn rational_solution_bounded(
    graph: &RbrGraph,
    game: &Game,
    keep_trace: bool,
    max_iterations: usize,
) -> Result<RationalSolutionReport> {
    let mut current = full_solution(graph, game)?;
    let mut trace = keep_trace.then(Vec::new);
    let mut iterations = 0;
    loop {
        let next = rationalise_unchecked(graph, game, &current)?;
        if let Some(t) = trace.as_mut() {
            t.push(next.clone());
        }
        if next == current {
            return Ok(RationalSolutionReport {
                solution: current,
                iterations,
                trace,
            });
        }
        iterations += 1;
        if iterations > max_iterations {
            return Err(Error::NonTermination {
                bound: max_iterations,
            });
        }
        current = next;
    }
}

/// The predicted play of every agent: the rational-solution entry of the
/// agent's designated node, or the whole strategy space for agents without
/// one. Indexed by agent.
pub fn doxastic_rationalisability(graph: &RbrGraph, game: &Game) -> Result<Vec<Vec<StrategyId>>> {
    let report = rational_solution(graph, game, false)?;
    Ok(graph
        .agents()
        .map(|a: AgentId| match graph.designated(a) {
            Some(n) => report.solution.get(n).to_vec(),
            None => game.strategies(a).collect(),
        })
        .collect())
}
