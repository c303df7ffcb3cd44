use rbr_core::fixtures;
use rbr_core::{
    export_dot, minimise, parse_game, parse_rbr, rational_response, read_rbr, serialize_rbr, AgentId, LoadError,
    ParseError, Rational, ReasoningScene, StrategyId,
};

#[test]
fn round_trip_bundled_graphs() {
    for text in [
        fixtures::RCBR,
        fixtures::TWO_AGENT_RCBR,
        fixtures::UNCOMMON_BELIEF,
        fixtures::UNCOMMON_BELIEF_DOXASTIC,
        fixtures::BELIEF_COLLECTION,
    ] {
        let g = read_rbr(text).unwrap();
        let again = read_rbr(&serialize_rbr(&g)).unwrap();
        assert_eq!(again, g);
        assert_eq!(serialize_rbr(&again), serialize_rbr(&g));
    }
}

#[test]
fn serialization_lists_each_edge_once() {
    let text = serialize_rbr(&fixtures::uncommon_belief());
    assert_eq!(text.lines().filter(|l| l.starts_with("edge ")).count(), 4);
}

#[test]
fn minimised_output_serializes_deterministically() {
    let a = serialize_rbr(&minimise(&fixtures::belief_collection()).output);
    let b = serialize_rbr(&minimise(&fixtures::belief_collection()).output);
    assert_eq!(a, b);
}

#[test]
fn comments_and_blank_lines_are_ignored() {
    let g = read_rbr("# header\n\nagents a   b # trailing\nnode x a\n  real a x\n").unwrap();
    assert_eq!(g.node_count(), 1);
}

#[test]
fn declarations_may_come_in_any_order() {
    let g = read_rbr("real a x\nedge x y\nnode y b\nagents a b\nnode x a\n").unwrap();
    assert_eq!(g.edge_count(), 1);
}

#[test]
fn graph_parse_errors_carry_lines() {
    let missing = parse_rbr("node x a\n").unwrap_err();
    assert!(matches!(missing, ParseError::SyntaxError { line: 1, .. }));

    let cases: [(&str, usize); 6] = [
        ("agents a\nagents b\n", 2),
        ("agents a a\n", 1),
        ("agents a\nnode x a\nnode x a\n", 3),
        ("agents a\nnode x q\n", 2),
        ("agents a b\nnode x a\n\nedge x nowhere\n", 4),
        ("agents a\nnode x a extra\n", 2),
    ];
    for (text, line) in cases {
        let err = parse_rbr(text).unwrap_err();
        assert_eq!(err.line(), line, "{text:?}: {err}");
        assert!(err.to_string().starts_with(&format!("line {line}:")));
    }
    assert!(matches!(
        parse_rbr("agents a\nnode x a\nnode x a\n").unwrap_err(),
        ParseError::DuplicateDeclaration { .. }
    ));
    assert!(matches!(
        parse_rbr("agents a\nnode x q\n").unwrap_err(),
        ParseError::UnknownIdentifier { .. }
    ));
    assert!(matches!(parse_rbr("bogus\n").unwrap_err(), ParseError::SyntaxError { line: 1, .. }));
}

#[test]
fn load_distinguishes_parse_and_validation() {
    assert!(matches!(read_rbr("agents a\nfoo\n"), Err(LoadError::Parse(_))));
    assert!(matches!(read_rbr("agents a\nnode x a\n"), Err(LoadError::Invalid(_))));
}

#[test]
fn dot_styles() {
    let dot = export_dot(&fixtures::uncommon_belief_doxastic());
    assert_eq!(dot.matches("style=dashed").count(), 2);
    assert_eq!(dot.matches("style=solid").count(), 3);
    assert!(dot.starts_with("digraph"));

    let dot = export_dot(&fixtures::rcbr());
    assert_eq!(dot.matches("->").count(), 6);
    assert!(dot.contains("\"na\" [label=\"a\""));

    let dot = export_dot(&read_rbr("agents a\nnode n a\nreal a n\n").unwrap());
    assert_eq!(dot.matches("style=solid").count(), 1);
    assert_eq!(dot.matches("->").count(), 0);
}

#[test]
fn coordination_game() {
    let game = parse_game(fixtures::COORDINATION_GAME).unwrap();
    assert_eq!(game.agent_names(), ["a", "b"]);
    assert_eq!(game.utility(AgentId(0), &[StrategyId(1), StrategyId(1)]), Some(Rational::from_integer(2)));
    assert_eq!(game.utility(AgentId(1), &[StrategyId(0), StrategyId(1)]), Some(Rational::from_integer(0)));
    let full = ReasoningScene::full(&game, AgentId(0));
    assert_eq!(rational_response(&game, AgentId(0), &full).unwrap().len(), 2);
}

#[test]
fn rationals_in_game_documents() {
    let text = "game normal-form\nagents a b\nstrategies a: x\nstrategies b: y\nutility a x y -3/6\nutility b x y 7\n";
    let game = parse_game(text).unwrap();
    assert_eq!(game.utility(AgentId(0), &[StrategyId(0), StrategyId(0)]), Some(Rational::new(-1, 2)));
}

#[test]
fn binary_game_document_behaves_like_builtin() {
    let game = parse_game(fixtures::BINARY3_GAME).unwrap();
    for a in 0..3 {
        let scene = ReasoningScene::full(&game, AgentId(a));
        assert_eq!(rational_response(&game, AgentId(a), &scene).unwrap(), vec![StrategyId(1)]);
    }
}

#[test]
fn game_parse_errors() {
    let missing: String = fixtures::COORDINATION_GAME
        .lines()
        .filter(|l| *l != "utility b 1 0 0")
        .map(|l| format!("{l}\n"))
        .collect();
    let err = parse_game(&missing).unwrap_err();
    assert!(
        matches!(&err, ParseError::MissingUtilityEntry { agent, outcome, .. } if agent == "b" && outcome == "1 0"),
        "{err}"
    );

    let dup = "game normal-form\nagents a\nstrategies a: x x\n";
    assert!(matches!(parse_game(dup).unwrap_err(), ParseError::DuplicateStrategy { line: 3, .. }));

    let no_header = "agents a\n";
    assert!(matches!(parse_game(no_header).unwrap_err(), ParseError::SyntaxError { line: 1, .. }));

    let bad_value = "game normal-form\nagents a\nstrategies a: x\nutility a x 1/0\n";
    assert!(matches!(parse_game(bad_value).unwrap_err(), ParseError::SyntaxError { line: 4, .. }));

    let unknown = "game normal-form\nagents a\nstrategies a: x\nutility a z 1\n";
    assert!(matches!(parse_game(unknown).unwrap_err(), ParseError::UnknownIdentifier { line: 4, .. }));

    let twice = "game normal-form\nagents a\nstrategies a: x\nutility a x 1\nutility a x 2\n";
    assert!(matches!(parse_game(twice).unwrap_err(), ParseError::DuplicateDeclaration { line: 5, .. }));
}
