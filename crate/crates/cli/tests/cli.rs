use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data").join(name)
}

fn rbr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rbr")).args(args).output().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn validate_reports_all_problems() {
    let ok = rbr(&["validate", path(&data("rcbr.rbr"))]);
    assert_eq!(ok.status.code(), Some(0));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("loop.rbr");
    fs::write(&bad, "agents a b\nnode x a\nnode y b\nedge x x\nreal a x\n").unwrap();
    let out = rbr(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.contains("line 4") && err.contains("own agent"), "{err}");
    assert!(err.contains("`y` is not reachable"), "{err}");

    let missing = rbr(&["validate", "/nonexistent/graph.rbr"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn minimize_summaries() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("min.rbr");
    let out = rbr(&["minimize", path(&data("belief_collection.rbr")), "--out", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("7 -> 3 nodes"), "{}", stdout(&out));
    let written = fs::read_to_string(&target).unwrap();
    assert_eq!(written.lines().filter(|l| l.starts_with("node ")).count(), 3);

    let out = rbr(&["minimize", path(&data("uncommon_belief.rbr"))]);
    assert!(stderr(&out).starts_with("3 -> 3 nodes"));
    assert!(stdout(&out).starts_with("agents a b c\n"));

    let single = dir.path().join("single.rbr");
    fs::write(&single, "agents a\nnode n a\nreal a n\n").unwrap();
    let out = rbr(&["minimize", single.to_str().unwrap()]);
    assert!(stderr(&out).starts_with("1 -> 1 nodes"));
}

#[test]
fn minimize_output_is_equivalent_to_the_compact_graph() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("min.rbr");
    rbr(&["minimize", path(&data("belief_collection.rbr")), "--out", target.to_str().unwrap()]);
    let out = rbr(&["equiv", target.to_str().unwrap(), path(&data("uncommon_belief.rbr"))]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn equiv_verdicts() {
    let out = rbr(&["equiv", path(&data("belief_collection.rbr")), path(&data("uncommon_belief.rbr"))]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("equivalent\n"));

    let out = rbr(&["equiv", path(&data("rcbr.rbr")), path(&data("two_agent_rcbr.rbr"))]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("agent c: designation domains differ"), "{}", stdout(&out));

    let out = rbr(&["equiv", path(&data("uncommon_belief.rbr")), path(&data("uncommon_belief_doxastic.rbr"))]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("agent c: hierarchies differ"));
    assert!(stdout(&out).contains("agent a: same belief hierarchy"));
}

#[test]
fn solve_builtin_guess_game() {
    let out = rbr(&["solve", path(&data("rcbr.rbr")), "guess23:3:10"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for agent in ["a", "b", "c"] {
        assert!(text.contains(&format!("{agent}      rational  {{1}}")), "{text}");
    }

    let out = rbr(&["solve", path(&data("two_agent_rcbr.rbr")), "guess23:3:10"]);
    let text = stdout(&out);
    assert!(text.contains("a      rational  {1,2,3,4,5}\n"), "{text}");
    assert!(text.contains("c      -         {1,2,3,4,5,6,7,8,9,10}\n"), "{text}");
}

#[test]
fn solve_trace_columns() {
    let out = rbr(&["solve", path(&data("uncommon_belief.rbr")), "guess23:3:10", "--trace"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let row = text.lines().find(|l| l.starts_with("nc ")).unwrap();
    let cells: Vec<&str> = row.split_whitespace().skip(2).collect();
    assert_eq!(cells, ["{1,2,3,4,5,6,7}", "{1,2,3,4,5}", "{1,2,3,4}", "{1,2,3}", "{1,2,3}"]);
    // columns line up
    let header = text.lines().next().unwrap();
    assert_eq!(header.find("round 2"), row.find("{1,2,3,4,5}"));
}

#[test]
fn solve_other_games() {
    let out = rbr(&["solve", path(&data("uncommon_belief_doxastic.rbr")), "binary"]);
    assert_eq!(stdout(&out).matches("{1}").count(), 3);

    let out = rbr(&["solve", path(&data("two_agent_rcbr.rbr")), "gk:2"]);
    assert!(stdout(&out).contains("a      rational  {bot,a.c}"), "{}", stdout(&out));

    let out = rbr(&["solve", path(&data("rcbr.rbr")), path(&data("binary3.game"))]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).matches("{1}").count(), 3);

    let out = rbr(&["solve", path(&data("rcbr.rbr")), path(&data("coordination.game"))]);
    assert_eq!(out.status.code(), Some(2), "agents of the game do not match the graph");

    let out = rbr(&["solve", path(&data("rcbr.rbr")), "guess23:2:10"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn iteration_cap_is_an_internal_error() {
    let out = rbr(&["solve", path(&data("rcbr.rbr")), "guess23:3:10", "--max-iterations", "2"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn export_dot_styles() {
    let out = rbr(&["export-dot", path(&data("uncommon_belief_doxastic.rbr"))]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).matches("style=dashed").count(), 2);

    let out = rbr(&["export-dot", path(&data("rcbr.rbr"))]);
    assert_eq!(stdout(&out).matches("->").count(), 6);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.rbr");
    fs::write(&bad, "nodes only\n").unwrap();
    let out = rbr(&["export-dot", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(rbr(&[]).status.code(), Some(2));
    assert_eq!(rbr(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(rbr(&["--help"]).status.code(), Some(0));
}

#[test]
fn outputs_are_deterministic() {
    let graph = data("uncommon_belief_doxastic.rbr");
    let args = ["solve", path(&graph), "guess23:3:10", "--trace"];
    assert_eq!(rbr(&args).stdout, rbr(&args).stdout);
}
