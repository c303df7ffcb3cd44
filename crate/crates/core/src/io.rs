//! Text formats: the graph and game description languages, canonical graph
//! serialization and DOT export.
//!
//! Graph documents are line oriented; `#` starts a comment:
//!
//! ```text
//! agents a b
//! node na a
//! node nb b
//! edge na nb
//! edge nb na
//! real a na
//! real b nb
//! ```
//!
//! Game documents list every agent's strategies and one utility per agent
//! and outcome:
//!
//! ```text
//! game normal-form
//! agents a b
//! strategies a: 0 1
//! strategies b: 0 1
//! utility a 0 0 0
//! utility a 1 0 1/2
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::error::Result;
use crate::game::{Game, Rational, StrategyId};
use crate::graph::{validate_graph, AgentId, NodeId, RawDesignation, RawEdge, RawGraph, RawNode, RbrGraph};

/// A problem with the text of a document. Lines are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    SyntaxError { line: usize, message: String },
    #[error("line {line}: {kind} `{name}` is declared twice")]
    DuplicateDeclaration { line: usize, kind: &'static str, name: String },
    #[error("line {line}: unknown {kind} `{name}`")]
    UnknownIdentifier { line: usize, kind: &'static str, name: String },
    #[error("line {line}: no utility for agent `{agent}` at outcome ({outcome})")]
    MissingUtilityEntry { line: usize, agent: String, outcome: String },
    #[error("line {line}: strategy `{token}` of agent `{agent}` is listed twice")]
    DuplicateStrategy { line: usize, agent: String, token: String },
}

impl ParseError {
    pub fn line(&self) -> usize {
        match self {
            ParseError::SyntaxError { line, .. }
            | ParseError::DuplicateDeclaration { line, .. }
            | ParseError::UnknownIdentifier { line, .. }
            | ParseError::MissingUtilityEntry { line, .. }
            | ParseError::DuplicateStrategy { line, .. } => *line,
        }
    }
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::SyntaxError {
        line,
        message: message.into(),
    }
}

/// Non-empty lines with comments removed, as (1-based line number, tokens).
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let content = raw.split('#').next().unwrap_or("").trim();
        (!content.is_empty()).then_some((i + 1, content))
    })
}

/// Parses a graph document into unchecked components. Declarations may come
/// in any order; structural rules are left to [`validate_graph`].
pub fn parse_rbr(text: &str) -> Result<RawGraph, ParseError> {
    let mut agents: Option<(usize, Vec<String>)> = None;
    let mut nodes: Vec<(usize, String, String)> = Vec::new();
    let mut edges: Vec<(usize, String, String)> = Vec::new();
    let mut reals: Vec<(usize, String, String)> = Vec::new();
    for (line, content) in lines(text) {
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let args = &tokens[1..];
        let expect = |n: usize| {
            if args.len() == n {
                Ok(())
            } else {
                Err(syntax(line, format!("`{}` takes {n} arguments, got {}", tokens[0], args.len())))
            }
        };
        match tokens[0] {
            "agents" => {
                if agents.is_some() {
                    return Err(ParseError::DuplicateDeclaration {
                        line,
                        kind: "agent list",
                        name: "agents".into(),
                    });
                }
                if args.is_empty() {
                    return Err(syntax(line, "`agents` needs at least one name"));
                }
                agents = Some((line, args.iter().map(|s| s.to_string()).collect()));
            }
            "node" => {
                expect(2)?;
                nodes.push((line, args[0].into(), args[1].into()));
            }
            "edge" => {
                expect(2)?;
                edges.push((line, args[0].into(), args[1].into()));
            }
            "real" => {
                expect(2)?;
                reals.push((line, args[0].into(), args[1].into()));
            }
            other => return Err(syntax(line, format!("unknown directive `{other}`"))),
        }
    }
    let Some((agents_line, agent_names)) = agents else {
        let line = lines(text).next().map_or(1, |(l, _)| l);
        return Err(syntax(line, "missing `agents` declaration"));
    };

    let mut agent_ids = BTreeMap::new();
    for (i, name) in agent_names.iter().enumerate() {
        if agent_ids.insert(name.as_str(), AgentId(i)).is_some() {
            return Err(ParseError::DuplicateDeclaration {
                line: agents_line,
                kind: "agent",
                name: name.clone(),
            });
        }
    }
    let agent = |line: usize, name: &str| {
        agent_ids.get(name).copied().ok_or_else(|| ParseError::UnknownIdentifier {
            line,
            kind: "agent",
            name: name.into(),
        })
    };

    let mut raw = RawGraph::new(agent_names.iter().cloned());
    let mut node_ids = BTreeMap::new();
    for (line, name, label) in &nodes {
        let label = agent(*line, label)?;
        if node_ids.insert(name.clone(), NodeId(raw.nodes.len())).is_some() {
            return Err(ParseError::DuplicateDeclaration {
                line: *line,
                kind: "node",
                name: name.clone(),
            });
        }
        raw.nodes.push(RawNode {
            name: name.clone(),
            label,
            line: Some(*line),
        });
    }
    let node = |line: usize, name: &str| {
        node_ids.get(name).copied().ok_or_else(|| ParseError::UnknownIdentifier {
            line,
            kind: "node",
            name: name.into(),
        })
    };
    for (line, from, to) in &edges {
        raw.edges.push(RawEdge {
            from: node(*line, from)?,
            to: node(*line, to)?,
            line: Some(*line),
        });
    }
    for (line, a, n) in &reals {
        raw.designations.push(RawDesignation {
            agent: agent(*line, a)?,
            node: node(*line, n)?,
            line: Some(*line),
        });
    }
    Ok(raw)
}

/// Either stage of reading a graph document can fail.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoadError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Invalid(#[from] crate::error::Error),
}

/// Parses and validates a graph document.
pub fn read_rbr(text: &str) -> Result<RbrGraph, LoadError> {
    Ok(validate_graph(parse_rbr(text)?)?)
}

/// Canonical text form: agents in order, nodes by id, edges by source and
/// target label, designations by agent.
pub fn serialize_rbr(graph: &RbrGraph) -> String {
    let mut out = String::new();
    writeln!(out, "agents {}", graph.agent_names().join(" ")).unwrap();
    for n in graph.nodes() {
        writeln!(out, "node {} {}", graph.node_name(n), graph.agent_name(graph.label(n))).unwrap();
    }
    for (from, to) in graph.edges() {
        writeln!(out, "edge {} {}", graph.node_name(from), graph.node_name(to)).unwrap();
    }
    for (a, n) in graph.designations() {
        writeln!(out, "real {} {}", graph.agent_name(a), graph.node_name(n)).unwrap();
    }
    out
}

fn dot_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz description. Designated nodes are drawn solid, the others dashed;
/// nodes show their agent's name.
pub fn export_dot(graph: &RbrGraph) -> String {
    let mut out = String::from("digraph rbr {\n");
    for n in graph.nodes() {
        let style = if graph.is_designated(n) { "solid" } else { "dashed" };
        writeln!(
            out,
            "  {} [label={}, shape=circle, style={style}];",
            dot_quote(graph.node_name(n)),
            dot_quote(graph.agent_name(graph.label(n)))
        )
        .unwrap();
    }
    for (from, to) in graph.edges() {
        writeln!(out, "  {} -> {};", dot_quote(graph.node_name(from)), dot_quote(graph.node_name(to))).unwrap();
    }
    out.push_str("}\n");
    out
}

fn parse_rational(line: usize, text: &str) -> Result<Rational, ParseError> {
    let bad = || syntax(line, format!("`{text}` is not a rational number"));
    match text.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.parse().map_err(|_| bad())?;
            let q: i64 = q.parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(syntax(line, "zero denominator"));
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(text.parse().map_err(|_| bad())?)),
    }
}

/// Parses a utility game document. Every agent needs a utility at every
/// outcome.
pub fn parse_game(text: &str) -> Result<Game, ParseError> {
    let mut header = false;
    let mut agents: Option<(usize, Vec<String>)> = None;
    let mut spaces: BTreeMap<usize, (usize, Vec<String>)> = BTreeMap::new();
    let mut utilities: Vec<(usize, usize, Vec<usize>, Rational)> = Vec::new();
    let mut last_line = 1;
    for (line, content) in lines(text) {
        last_line = line;
        let (directive, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let rest = rest.trim();
        if !header {
            if content.split_whitespace().collect::<Vec<_>>() != ["game", "normal-form"] {
                return Err(syntax(line, "expected `game normal-form` header"));
            }
            header = true;
            continue;
        }
        match directive {
            "agents" => {
                if agents.is_some() {
                    return Err(ParseError::DuplicateDeclaration {
                        line,
                        kind: "agent list",
                        name: "agents".into(),
                    });
                }
                let names: Vec<String> = rest.split_whitespace().map(String::from).collect();
                if names.is_empty() {
                    return Err(syntax(line, "`agents` needs at least one name"));
                }
                for (i, name) in names.iter().enumerate() {
                    if names[..i].contains(name) {
                        return Err(ParseError::DuplicateDeclaration {
                            line,
                            kind: "agent",
                            name: name.clone(),
                        });
                    }
                }
                agents = Some((line, names));
            }
            "strategies" => {
                let names = &agents.as_ref().ok_or_else(|| syntax(line, "`strategies` before `agents`"))?.1;
                let (agent, tokens) = rest
                    .split_once(':')
                    .ok_or_else(|| syntax(line, "expected `strategies <agent>: <token>+`"))?;
                let agent = agent.trim();
                let index = names.iter().position(|a| a == agent).ok_or_else(|| ParseError::UnknownIdentifier {
                    line,
                    kind: "agent",
                    name: agent.into(),
                })?;
                let tokens: Vec<String> = tokens.split_whitespace().map(String::from).collect();
                if tokens.is_empty() {
                    return Err(syntax(line, format!("agent `{agent}` has no strategies")));
                }
                for (i, token) in tokens.iter().enumerate() {
                    if tokens[..i].contains(token) {
                        return Err(ParseError::DuplicateStrategy {
                            line,
                            agent: agent.into(),
                            token: token.clone(),
                        });
                    }
                }
                if spaces.insert(index, (line, tokens)).is_some() {
                    return Err(ParseError::DuplicateDeclaration {
                        line,
                        kind: "strategy space of agent",
                        name: agent.into(),
                    });
                }
            }
            "utility" => {
                let names = &agents.as_ref().ok_or_else(|| syntax(line, "`utility` before `agents`"))?.1;
                let args: Vec<&str> = rest.split_whitespace().collect();
                if args.len() != names.len() + 2 {
                    return Err(syntax(
                        line,
                        format!("`utility` takes an agent, {} strategies and a value", names.len()),
                    ));
                }
                let agent = names.iter().position(|a| a == args[0]).ok_or_else(|| ParseError::UnknownIdentifier {
                    line,
                    kind: "agent",
                    name: args[0].into(),
                })?;
                let mut outcome = Vec::with_capacity(names.len());
                for (b, token) in args[1..=names.len()].iter().enumerate() {
                    let space = &spaces
                        .get(&b)
                        .ok_or_else(|| syntax(line, format!("strategies of agent `{}` are not declared yet", names[b])))?
                        .1;
                    let s = space.iter().position(|t| t == token).ok_or_else(|| ParseError::UnknownIdentifier {
                        line,
                        kind: "strategy",
                        name: (*token).into(),
                    })?;
                    outcome.push(s);
                }
                let value = parse_rational(line, args[names.len() + 1])?;
                utilities.push((line, agent, outcome, value));
            }
            other => return Err(syntax(line, format!("unknown directive `{other}`"))),
        }
    }
    if !header {
        return Err(syntax(last_line, "expected `game normal-form` header"));
    }
    let Some((_, names)) = agents else {
        return Err(syntax(last_line, "missing `agents` declaration"));
    };
    let mut strategy_tokens = Vec::with_capacity(names.len());
    for (b, name) in names.iter().enumerate() {
        match spaces.remove(&b) {
            Some((_, tokens)) => strategy_tokens.push(tokens),
            None => return Err(syntax(last_line, format!("missing strategies for agent `{name}`"))),
        }
    }

    // Outcomes are numbered in mixed radix, first agent most significant.
    let radix: Vec<usize> = strategy_tokens.iter().map(Vec::len).collect();
    let outcome_count = radix.iter().product::<usize>();
    let index_of = |outcome: &[usize]| outcome.iter().zip(&radix).fold(0, |acc, (&s, &r)| acc * r + s);
    let mut table: Vec<Vec<Option<Rational>>> = vec![vec![None; outcome_count]; names.len()];
    for (line, agent, outcome, value) in utilities {
        let slot = &mut table[agent][index_of(&outcome)];
        if slot.is_some() {
            let tokens: Vec<&str> = outcome
                .iter()
                .enumerate()
                .map(|(b, &s)| strategy_tokens[b][s].as_str())
                .collect();
            return Err(ParseError::DuplicateDeclaration {
                line,
                kind: "utility entry",
                name: format!("{} ({})", names[agent], tokens.join(" ")),
            });
        }
        *slot = Some(value);
    }
    let mut complete: Vec<Vec<Rational>> = Vec::with_capacity(names.len());
    for (agent, row) in table.into_iter().enumerate() {
        let mut values = Vec::with_capacity(outcome_count);
        for (index, value) in row.into_iter().enumerate() {
            match value {
                Some(v) => values.push(v),
                None => {
                    let mut rest = index;
                    let mut tokens = vec![""; radix.len()];
                    for b in (0..radix.len()).rev() {
                        tokens[b] = strategy_tokens[b][rest % radix[b]].as_str();
                        rest /= radix[b];
                    }
                    return Err(ParseError::MissingUtilityEntry {
                        line: last_line,
                        agent: names[agent].clone(),
                        outcome: tokens.join(" "),
                    });
                }
            }
        }
        complete.push(values);
    }
    let game = Game::from_utility(names, strategy_tokens, move |agent, outcome: &[StrategyId]| {
        let index = outcome.iter().zip(&radix).fold(0, |acc, (s, &r)| acc * r + s.0);
        complete[agent.0][index]
    });
    Ok(game.expect("spaces were checked while parsing"))
}
