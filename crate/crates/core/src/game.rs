//! Finite games with partial-order preferences, reasoning scenes and strict
//! dominance over pure strategies.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::graph::AgentId;

/// Exact utilities.
pub type Rational = Ratio<i64>;

/// Upper bound on the number of opponent profiles enumerated by one dominance
/// query.
pub const DEFAULT_PROFILE_CAP: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StrategyId(pub usize);

impl fmt::Display for StrategyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Result of comparing two outcomes under one agent's preference:
/// `Less` means the first outcome is strictly worse for that agent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Comparison {
    Less,
    Greater,
    Equivalent,
    Incomparable,
}

type UtilityFn = dyn Fn(AgentId, &[StrategyId]) -> Rational + Send + Sync;
type OrderFn = dyn Fn(AgentId, &[StrategyId], &[StrategyId]) -> Comparison + Send + Sync;

#[derive(Clone)]
enum Preference {
    Utility(Arc<UtilityFn>),
    Order(Arc<OrderFn>),
}

/// A finite game: per-agent strategy spaces and a preference oracle over full
/// outcomes. Outcomes are slices with one strategy per agent, in agent order.
#[derive(Clone)]
pub struct Game {
    agents: Vec<String>,
    strategies: Vec<Vec<String>>,
    preference: Preference,
}

impl fmt::Debug for Game {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Game")
            .field("agents", &self.agents)
            .field("strategies", &self.strategies)
            .field("utility", &matches!(self.preference, Preference::Utility(_)))
            .finish()
    }
}

fn check_spaces(agents: &[String], strategies: &[Vec<String>]) -> Result<()> {
    if agents.len() != strategies.len() {
        return Err(Error::InvalidGame(format!(
            "{} agents but {} strategy spaces",
            agents.len(),
            strategies.len()
        )));
    }
    for (agent, tokens) in agents.iter().zip(strategies) {
        if tokens.is_empty() {
            return Err(Error::InvalidGame(format!(
                "agent `{agent}` has an empty strategy space"
            )));
        }
        let unique: BTreeSet<&String> = tokens.iter().collect();
        if unique.len() != tokens.len() {
            return Err(Error::InvalidGame(format!(
                "agent `{agent}` has duplicate strategy tokens"
            )));
        }
    }
    Ok(())
}

impl Game {
    /// A game whose preferences are induced by utilities: `x ≼_a y` iff
    /// `u_a(x) <= u_a(y)`.
    pub fn from_utility<F>(agents: Vec<String>, strategies: Vec<Vec<String>>, utility: F) -> Result<Self>
    where
        F: Fn(AgentId, &[StrategyId]) -> Rational + Send + Sync + 'static,
    {
        check_spaces(&agents, &strategies)?;
        Ok(Game {
            agents,
            strategies,
            preference: Preference::Utility(Arc::new(utility)),
        })
    }

    /// A game given by an arbitrary comparison oracle. The oracle must behave
    /// as a partial order per agent.
    pub fn from_order<F>(agents: Vec<String>, strategies: Vec<Vec<String>>, order: F) -> Result<Self>
    where
        F: Fn(AgentId, &[StrategyId], &[StrategyId]) -> Comparison + Send + Sync + 'static,
    {
        check_spaces(&agents, &strategies)?;
        Ok(Game {
            agents,
            strategies,
            preference: Preference::Order(Arc::new(order)),
        })
    }

    /// Same game with the agents renamed. Strategy spaces stay positional.
    pub fn with_agent_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.agents.len() {
            return Err(Error::InvalidGame(format!(
                "expected {} agent names, got {}",
                self.agents.len(),
                names.len()
            )));
        }
        self.agents = names;
        Ok(self)
    }

    pub fn agent_count(&self) -> usize {
        self.agents.len()
    }

    pub fn agent_names(&self) -> &[String] {
        &self.agents
    }

    pub fn agent_id(&self, name: &str) -> Option<AgentId> {
        self.agents.iter().position(|a| a == name).map(AgentId)
    }

    pub fn strategy_count(&self, agent: AgentId) -> usize {
        self.strategies[agent.0].len()
    }

    pub fn strategies(&self, agent: AgentId) -> impl Iterator<Item = StrategyId> {
        (0..self.strategies[agent.0].len()).map(StrategyId)
    }

    pub fn token(&self, agent: AgentId, strategy: StrategyId) -> &str {
        &self.strategies[agent.0][strategy.0]
    }

    pub fn tokens(&self, agent: AgentId) -> &[String] {
        &self.strategies[agent.0]
    }

    pub fn strategy_id(&self, agent: AgentId, token: &str) -> Option<StrategyId> {
        self.strategies[agent.0]
            .iter()
            .position(|t| t == token)
            .map(StrategyId)
    }

    pub fn is_utility_game(&self) -> bool {
        matches!(self.preference, Preference::Utility(_))
    }

    /// `u_a(outcome)`, when the game is utility-defined.
    pub fn utility(&self, agent: AgentId, outcome: &[StrategyId]) -> Option<Rational> {
        match &self.preference {
            Preference::Utility(u) => Some(u(agent, outcome)),
            Preference::Order(_) => None,
        }
    }

    /// Compares outcome `x` with outcome `y` from `agent`'s point of view.
    pub fn compare(&self, agent: AgentId, x: &[StrategyId], y: &[StrategyId]) -> Comparison {
        match &self.preference {
            Preference::Utility(u) => match u(agent, x).cmp(&u(agent, y)) {
                std::cmp::Ordering::Less => Comparison::Less,
                std::cmp::Ordering::Greater => Comparison::Greater,
                std::cmp::Ordering::Equal => Comparison::Equivalent,
            },
            Preference::Order(o) => o(agent, x, y),
        }
    }

    fn check_strategy(&self, agent: AgentId, s: StrategyId) -> Result<()> {
        if s.0 < self.strategy_count(agent) {
            Ok(())
        } else {
            Err(Error::ForeignStrategy {
                agent,
                strategy: s.0,
            })
        }
    }
}

/// For each opponent `b` of `owner`, the nonempty set of strategies `owner`
/// thinks `b` may play.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReasoningScene {
    owner: AgentId,
    /// Indexed by agent; the owner's own entry is empty.
    sets: Vec<Vec<StrategyId>>,
}

impl ReasoningScene {
    /// Builds a scene from one set per agent (the owner's entry is ignored).
    /// Sets are sorted and deduplicated.
    pub fn new(game: &Game, owner: AgentId, sets: Vec<Vec<StrategyId>>) -> Result<Self> {
        if owner.0 >= game.agent_count() {
            return Err(Error::InvalidScene(format!("unknown owner {owner}")));
        }
        if sets.len() != game.agent_count() {
            return Err(Error::InvalidScene(format!(
                "expected {} opponent sets, got {}",
                game.agent_count(),
                sets.len()
            )));
        }
        let mut sets = sets;
        for (b, set) in sets.iter_mut().enumerate() {
            if b == owner.0 {
                set.clear();
                continue;
            }
            set.sort_unstable();
            set.dedup();
            if set.is_empty() {
                return Err(Error::InvalidScene(format!(
                    "opponent set for agent `{}` is empty",
                    game.agents[b]
                )));
            }
            if let Some(s) = set.iter().find(|s| s.0 >= game.strategy_count(AgentId(b))) {
                return Err(Error::ForeignStrategy {
                    agent: AgentId(b),
                    strategy: s.0,
                });
            }
        }
        Ok(ReasoningScene { owner, sets })
    }

    /// Every opponent may play anything.
    pub fn full(game: &Game, owner: AgentId) -> Self {
        let sets = (0..game.agent_count())
            .map(|b| {
                if b == owner.0 {
                    Vec::new()
                } else {
                    game.strategies(AgentId(b)).collect()
                }
            })
            .collect();
        ReasoningScene { owner, sets }
    }

    pub fn owner(&self) -> AgentId {
        self.owner
    }

    /// The set entertained for `agent`; empty for the owner.
    pub fn opponent_set(&self, agent: AgentId) -> &[StrategyId] {
        &self.sets[agent.0]
    }

    /// Number of opponent profiles, or `None` on overflow.
    pub fn profile_count(&self) -> Option<usize> {
        self.sets
            .iter()
            .enumerate()
            .filter(|(b, _)| *b != self.owner.0)
            .try_fold(1usize, |acc, (_, s)| acc.checked_mul(s.len()))
    }

    /// Calls `visit` with every outcome whose opponent coordinates range over
    /// the scene. The owner's coordinate is left at `StrategyId(0)` for the
    /// caller to overwrite. Stops early when `visit` returns `false`.
    fn for_each_profile(&self, mut visit: impl FnMut(&mut [StrategyId]) -> bool) {
        let n = self.sets.len();
        let opponents: Vec<usize> = (0..n).filter(|&b| b != self.owner.0).collect();
        let mut digits = vec![0usize; n];
        let mut outcome = vec![StrategyId(0); n];
        for &b in &opponents {
            outcome[b] = self.sets[b][0];
        }
        loop {
            if !visit(&mut outcome) {
                return;
            }
            let mut carried = true;
            for &b in &opponents {
                digits[b] += 1;
                if digits[b] < self.sets[b].len() {
                    outcome[b] = self.sets[b][digits[b]];
                    carried = false;
                    break;
                }
                digits[b] = 0;
                outcome[b] = self.sets[b][0];
            }
            if carried {
                return;
            }
        }
    }
}

fn check_profile_cap(scene: &ReasoningScene) -> Result<usize> {
    match scene.profile_count() {
        Some(c) if c <= DEFAULT_PROFILE_CAP => Ok(c),
        _ => Err(Error::SizeCap {
            what: "opponent profile count",
            limit: DEFAULT_PROFILE_CAP,
        }),
    }
}

fn check_owner(agent: AgentId, scene: &ReasoningScene) -> Result<()> {
    if scene.owner == agent {
        Ok(())
    } else {
        Err(Error::SceneOwnerMismatch {
            agent,
            scene_owner: scene.owner,
        })
    }
}

/// Whether `s_prime` strictly dominates `s` for `agent` in `scene`: the
/// outcome with `s` is strictly worse than the one with `s_prime` against
/// every opponent profile. Equivalence and incomparability both break
/// dominance.
pub fn dominates(
    game: &Game,
    agent: AgentId,
    scene: &ReasoningScene,
    s: StrategyId,
    s_prime: StrategyId,
) -> Result<bool> {
    check_owner(agent, scene)?;
    game.check_strategy(agent, s)?;
    game.check_strategy(agent, s_prime)?;
    check_profile_cap(scene)?;
    let mut other = Vec::new();
    let mut all = true;
    scene.for_each_profile(|outcome| {
        outcome[agent.0] = s;
        other.clear();
        other.extend_from_slice(outcome);
        other[agent.0] = s_prime;
        all = game.compare(agent, outcome, &other) == Comparison::Less;
        all
    });
    Ok(all)
}

/// The strategies of `agent` not dominated by any other strategy in `scene`,
/// in ascending order. Never empty.
pub fn rational_response(game: &Game, agent: AgentId, scene: &ReasoningScene) -> Result<Vec<StrategyId>> {
    check_owner(agent, scene)?;
    let profiles = check_profile_cap(scene)?;
    let count = game.strategy_count(agent);
    match &game.preference {
        Preference::Utility(u) => {
            if count.saturating_mul(profiles) > DEFAULT_PROFILE_CAP * 8 {
                return Err(Error::SizeCap {
                    what: "utility table",
                    limit: DEFAULT_PROFILE_CAP * 8,
                });
            }
            // table[s * profiles + p] = u_a(p with s)
            let mut table = Vec::with_capacity(count * profiles);
            for s in 0..count {
                scene.for_each_profile(|outcome| {
                    outcome[agent.0] = StrategyId(s);
                    table.push(u(agent, outcome));
                    true
                });
            }
            let row = |s: usize| &table[s * profiles..(s + 1) * profiles];
            Ok((0..count)
                .filter(|&s| {
                    !(0..count).any(|t| t != s && row(s).iter().zip(row(t)).all(|(x, y)| x < y))
                })
                .map(StrategyId)
                .collect())
        }
        Preference::Order(_) => {
            let mut out = Vec::new();
            for s in game.strategies(agent) {
                let mut dominated = false;
                for t in game.strategies(agent) {
                    if t != s && dominates(game, agent, scene, s, t)? {
                        dominated = true;
                        break;
                    }
                }
                if !dominated {
                    out.push(s);
                }
            }
            Ok(out)
        }
    }
}

fn default_agent_names(count: usize) -> Vec<String> {
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

/// The guess-2/3-of-the-average game: every agent picks an integer in
/// `1..=max_int` and is paid minus the distance to two thirds of the mean of
/// the other agents' picks. Agents are named `a`, `b`, `c`, ...
pub fn make_guess_average_game(agent_count: usize, max_int: u32) -> Result<Game> {
    if agent_count < 2 {
        return Err(Error::TooFewAgents {
            required: 2,
            actual: agent_count,
        });
    }
    if max_int == 0 {
        return Err(Error::InvalidGame("max_int must be at least 1".into()));
    }
    let tokens: Vec<String> = (1..=max_int).map(|v| v.to_string()).collect();
    let others = (agent_count - 1) as i64;
    Game::from_utility(
        default_agent_names(agent_count),
        vec![tokens; agent_count],
        move |agent, outcome| {
            let value = |s: StrategyId| s.0 as i64 + 1;
            let sum: i64 = outcome
                .iter()
                .enumerate()
                .filter(|(b, _)| *b != agent.0)
                .map(|(_, &s)| value(s))
                .sum();
            let target = Rational::new(2 * sum, 3 * others);
            let gap = Rational::from_integer(value(outcome[agent.0])) - target;
            if gap < Rational::from_integer(0) {
                gap
            } else {
                -gap
            }
        },
    )
}

/// Nonempty alternating agent sequences starting with `head`, of length at
/// most `k`, ordered by length and then lexicographically.
pub fn alternating_sequences(agent_count: usize, head: AgentId, k: usize) -> Vec<Vec<AgentId>> {
    let mut out = Vec::new();
    if k == 0 {
        return out;
    }
    let mut level = vec![vec![head]];
    for _ in 1..k {
        let mut next = Vec::new();
        for seq in &level {
            let last = *seq.last().unwrap();
            for b in (0..agent_count).map(AgentId).filter(|&b| b != last) {
                let mut ext = seq.clone();
                ext.push(b);
                next.push(ext);
            }
        }
        out.append(&mut level);
        level = next;
    }
    out.append(&mut level);
    out
}

/// Token of the quit strategy in the sequence game.
pub const QUIT_TOKEN: &str = "bot";

/// The sequence game `G_k`. Each agent either quits (token `bot`, utility 0)
/// or names an alternating sequence starting with itself (tokens such as
/// `a.b.a`); a sequence pays 1 when its tail equals the strategy of the
/// agent it names next, and -1 otherwise.
pub fn make_sequence_game(agents: &[String], k: usize) -> Result<Game> {
    if agents.len() < 2 {
        return Err(Error::TooFewAgents {
            required: 2,
            actual: agents.len(),
        });
    }
    if k == 0 {
        return Err(Error::InvalidGame("sequence length bound must be at least 1".into()));
    }
    let n = agents.len();
    // spaces[a][s]: None for quitting
    let spaces: Vec<Vec<Option<Vec<AgentId>>>> = (0..n)
        .map(|a| {
            std::iter::once(None)
                .chain(alternating_sequences(n, AgentId(a), k).into_iter().map(Some))
                .collect()
        })
        .collect();
    let tokens = spaces
        .iter()
        .map(|space| {
            space
                .iter()
                .map(|s| match s {
                    None => QUIT_TOKEN.to_string(),
                    Some(seq) => seq
                        .iter()
                        .map(|b| agents[b.0].as_str())
                        .collect::<Vec<_>>()
                        .join("."),
                })
                .collect()
        })
        .collect();
    Game::from_utility(agents.to_vec(), tokens, move |agent, outcome| {
        let Some(seq) = &spaces[agent.0][outcome[agent.0].0] else {
            return Rational::from_integer(0);
        };
        let tail = &seq[1..];
        let wins = match tail.first() {
            None => false,
            Some(b) => spaces[b.0][outcome[b.0].0].as_deref() == Some(tail),
        };
        Rational::from_integer(if wins { 1 } else { -1 })
    })
}

/// The binary game: every agent picks `0` or `1` and prefers a higher own
/// pick regardless of the others.
pub fn make_binary_game(agents: &[String]) -> Result<Game> {
    if agents.is_empty() {
        return Err(Error::TooFewAgents {
            required: 1,
            actual: 0,
        });
    }
    let tokens = vec![vec!["0".to_string(), "1".to_string()]; agents.len()];
    Game::from_utility(agents.to_vec(), tokens, |agent, outcome| {
        Rational::from_integer(outcome[agent.0].0 as i64)
    })
}
