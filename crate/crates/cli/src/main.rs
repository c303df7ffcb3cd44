use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rbr_core::rationalise::{iteration_bound, rational_solution_bounded};
use rbr_core::{
    equivalence_report, export_dot, make_binary_game, make_guess_average_game, make_sequence_game, minimise,
    parse_game, parse_rbr, serialize_rbr, validate_graph, AgentVerdict, Error, Game, RbrGraph, StrategyId,
};

/// Work with rationality-and-beliefs-in-rationality graphs.
#[derive(Debug, Parser)]
#[command(name = "rbr", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a graph file and list every problem found.
    Validate { graph: PathBuf },
    /// Compress a graph to its minimal equivalent form.
    Minimize {
        graph: PathBuf,
        /// Write the minimised graph here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether two graphs describe the same beliefs.
    Equiv { first: PathBuf, second: PathBuf },
    /// Predict play: the rational solution of a game over a graph.
    Solve {
        graph: PathBuf,
        /// A game file, or one of `guess23:<agents>:<max>`, `gk:<k>`, `binary`.
        game: String,
        /// Print the strategy sets of every node after each round.
        #[arg(long)]
        trace: bool,
        /// Override the iteration safety bound.
        #[arg(long)]
        max_iterations: Option<usize>,
    },
    /// Print the graph in Graphviz DOT format.
    ExportDot { graph: PathBuf },
}

/// Outcome of a command that did not succeed.
enum Failure {
    /// A negative answer: invalid graph, graphs not equivalent.
    Negative,
    /// Bad input or I/O.
    Usage(String),
    /// Something that should be impossible happened.
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NonTermination { .. } => Failure::Internal(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<RbrGraph, Failure> {
    let text = read(path)?;
    let raw = parse_rbr(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    validate_graph(raw).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn validate(path: &Path) -> Result<(), Failure> {
    let text = read(path)?;
    let raw = parse_rbr(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    match validate_graph(raw) {
        Ok(g) => {
            println!(
                "{}: valid ({} nodes, {} edges, {} agents)",
                path.display(),
                g.node_count(),
                g.edge_count(),
                g.agent_count()
            );
            Ok(())
        }
        Err(Error::InvalidGraph(defects)) => {
            eprintln!("{}: {} problem(s)", path.display(), defects.len());
            for d in defects {
                eprintln!("  {d}");
            }
            Err(Failure::Negative)
        }
        Err(e) => Err(e.into()),
    }
}

fn minimize(path: &Path, out: Option<&Path>) -> Result<(), Failure> {
    let g = load_graph(path)?;
    let report = minimise(&g);
    let rounds = report.refinement_rounds;
    let summary = format!(
        "{} -> {} nodes ({rounds} refinement round{})",
        g.node_count(),
        report.output.node_count(),
        if rounds == 1 { "" } else { "s" }
    );
    let text = serialize_rbr(&report.output);
    match out {
        Some(out) => {
            fs::write(out, text).map_err(|e| Failure::Usage(format!("{}: {e}", out.display())))?;
            println!("{summary}");
        }
        None => {
            print!("{text}");
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn equiv(first: &Path, second: &Path) -> Result<(), Failure> {
    let a = load_graph(first)?;
    let b = load_graph(second)?;
    let report = equivalence_report(&a, &b).map_err(|e| match e {
        Error::AgentUniverseMismatch => Failure::Usage(format!(
            "agent lists differ: [{}] vs [{}]",
            a.agent_names().join(" "),
            b.agent_names().join(" ")
        )),
        other => other.into(),
    })?;
    let equivalent = report.iter().all(|v| v.is_match());
    println!("{}", if equivalent { "equivalent" } else { "not equivalent" });
    for (name, verdict) in a.agent_names().iter().zip(&report) {
        let reason = match verdict {
            AgentVerdict::BothIrrational => "irrational in both graphs".to_string(),
            AgentVerdict::Equivalent => "same belief hierarchy".to_string(),
            AgentVerdict::HierarchiesDiffer => "hierarchies differ".to_string(),
            AgentVerdict::DesignationDomainsDiffer { in_left } => format!(
                "designation domains differ (real only in the {} graph)",
                if *in_left { "first" } else { "second" }
            ),
        };
        println!("  agent {name}: {reason}");
    }
    if equivalent {
        Ok(())
    } else {
        Err(Failure::Negative)
    }
}

fn builtin_game(game_arg: &str, graph: &RbrGraph) -> Option<Result<Game, Failure>> {
    let names = graph.agent_names();
    let bad = |msg: String| Some(Err(Failure::Usage(msg)));
    let parts: Vec<&str> = game_arg.split(':').collect();
    match parts.as_slice() {
        ["binary"] => Some(make_binary_game(names).map_err(Failure::from)),
        ["gk", k] => match k.parse::<usize>() {
            Ok(k) => Some(make_sequence_game(names, k).map_err(Failure::from)),
            Err(_) => bad(format!("`{game_arg}`: expected gk:<k> with a positive integer k")),
        },
        ["guess23", agents, max] => {
            let (Ok(agents), Ok(max)) = (agents.parse::<usize>(), max.parse::<u32>()) else {
                return bad(format!("`{game_arg}`: expected guess23:<agents>:<max>"));
            };
            if agents != names.len() {
                return bad(format!("`{game_arg}` has {agents} agents but the graph has {}", names.len()));
            }
            Some(
                make_guess_average_game(agents, max)
                    .and_then(|g| g.with_agent_names(names.to_vec()))
                    .map_err(Failure::from),
            )
        }
        _ => None,
    }
}

fn token_set(game: &Game, agent: rbr_core::AgentId, set: &[StrategyId]) -> String {
    let tokens: Vec<&str> = set.iter().map(|&s| game.token(agent, s)).collect();
    format!("{{{}}}", tokens.join(","))
}

fn solve(path: &Path, game_arg: &str, trace: bool, max_iterations: Option<usize>) -> Result<(), Failure> {
    let g = load_graph(path)?;
    let game = match builtin_game(game_arg, &g) {
        Some(game) => game?,
        None => {
            let file = Path::new(game_arg);
            let text = read(file)?;
            parse_game(&text).map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?
        }
    };
    rbr_core::rationalise::check_compatible(&g, &game)?;
    let bound = max_iterations.unwrap_or_else(|| iteration_bound(&g, &game));
    let report = rational_solution_bounded(&g, &game, trace, bound)?;

    let mut out = String::new();
    if let Some(rounds) = &report.trace {
        let mut rows: Vec<Vec<String>> = vec![];
        let mut header = vec!["node".to_string(), "agent".to_string()];
        header.extend((1..=rounds.len()).map(|i| format!("round {i}")));
        rows.push(header);
        for n in g.nodes() {
            let a = g.label(n);
            let mut row = vec![g.node_name(n).to_string(), g.agent_name(a).to_string()];
            row.extend(rounds.iter().map(|r| token_set(&game, a, r.get(n))));
            rows.push(row);
        }
        let widths: Vec<usize> = (0..rows[0].len())
            .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0))
            .collect();
        for row in &rows {
            let cells: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            writeln!(out, "{}", cells.join("  ").trim_end()).unwrap();
        }
        out.push('\n');
    }
    writeln!(out, "stable after {} rationalisation(s)", report.iterations).unwrap();
    let width = g.agent_names().iter().map(String::len).max().unwrap_or(0).max("agent".len());
    writeln!(out, "{:<width$}  {:<8}  strategies", "agent", "status").unwrap();
    for a in g.agents() {
        let (status, set): (&str, Vec<StrategyId>) = match g.designated(a) {
            Some(n) => ("rational", report.solution.get(n).to_vec()),
            None => ("-", game.strategies(a).collect()),
        };
        writeln!(out, "{:<width$}  {status:<8}  {}", g.agent_name(a), token_set(&game, a, &set)).unwrap();
    }
    print!("{out}");
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Validate { graph } => validate(&graph),
        Command::Minimize { graph, out } => minimize(&graph, out.as_deref()),
        Command::Equiv { first, second } => equiv(&first, &second),
        Command::Solve {
            graph,
            game,
            trace,
            max_iterations,
        } => solve(&graph, &game, trace, max_iterations),
        Command::ExportDot { graph } => {
            print!("{}", export_dot(&load_graph(&graph)?));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(Failure::Negative)) => ExitCode::from(1),
        Ok(Err(Failure::Usage(msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Ok(Err(Failure::Internal(msg))) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
        Err(_) => ExitCode::from(3),
    }
}
