use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_treeparity"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_treeparity"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn golden(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name].iter().collect();
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn member_of_known_tree() {
    let o = run(&["member", "@A_G", "@T_ALL_A"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("member_A_G_T_ALL_A.txt"));
}

#[test]
fn member_rejects_with_exit_one() {
    let o = run(&["member", "@A_L", "@T_ALL_A"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "answer no\n");
}

#[test]
fn member_from_other_state() {
    // From `top` every tree is accepted.
    let o = run(&["member", "@A_W", "@F_NEG_ALLB", "--from", "top"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["member", "@A_W", "@F_NEG_ALLB", "--from", "nope"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn partition_check_on_bad_formula() {
    let o = run(&["partition-check", "@F_BAD"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("accepted-by A_W\n"), "{out}");
    assert!(out.ends_with("holds yes\n"));
}

#[test]
fn partition_check_on_fixture_formulas() {
    let args = ["partition-check", "@F_BAD", "@F_NEG_ALLB", "@F_OR_LOOP", "@F_NEG_LOOP"];
    assert_eq!(stdout(&run(&args)), golden("partition_fixtures.txt"));
    let mut json_args = vec!["--json"];
    json_args.extend(args);
    assert_eq!(stdout(&run(&json_args)), golden("partition_fixtures.json"));
}

#[test]
fn partition_check_on_corpus() {
    let o = run(&["partition-check", "--corpus", "random:5:3:40:a,b,or,neg"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().count(), 41);
}

#[test]
fn ambiguous_automaton_reports_witness() {
    let o = run(&["unambiguous", "@B_G"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.starts_with("answer no\nwitness-tree\n"));
    assert!(out.contains("\nrun 1\n") && out.contains("\nrun 2\n"));
    assert_eq!(out, golden("unambiguous_B_G.txt"));
    assert_eq!(stdout(&run(&["--json", "unambiguous", "@B_G"])), golden("unambiguous_B_G.json"));
}

#[test]
fn unambiguous_automata() {
    for name in ["@A_L", "@A_G", "@A_W"] {
        let o = run(&["unambiguous", name]);
        assert_eq!(o.status.code(), Some(0), "{name}");
    }
}

#[test]
fn emptiness_with_witness() {
    let o = run(&["empty", "@A_G"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    let tree = out.strip_prefix("answer no\nwitness-tree\n").expect("witness tree");
    // The witness is itself an accepted tree.
    let o = run_stdin(&["member", "@A_G", "-"], tree);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn ambiguous_on_all_a() {
    assert_eq!(run(&["ambiguous-on", "@B_G", "@T_ALL_A"]).status.code(), Some(0));
    assert_eq!(run(&["ambiguous-on", "@A_G", "@T_ALL_A"]).status.code(), Some(1));
}

#[test]
fn branch_commands() {
    assert_eq!(run(&["good-branch", "@T_ALL_A"]).status.code(), Some(0));
    assert_eq!(run(&["good-branch", "@T_RSPINE"]).status.code(), Some(1));
    let o = run(&["leftmost", "@T_ALL_A"]);
    assert_eq!(stdout(&o), "answer yes\nbranch (l)^w\n");
    let o = run(&["--json", "leftmost", "@T_ZIGZAG"]);
    assert_eq!(stdout(&o), "{\"answer\":true,\"cycle\":\"rl\",\"prefix\":\"\"}\n");
}

#[test]
fn formula_commands() {
    let o = run(&["shape", "@F_BAD"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), golden("shape_F_BAD.txt"));
    assert_eq!(stdout(&run(&["--json", "shape", "@F_BAD"])), golden("shape_F_BAD.json"));

    assert_eq!(stdout(&run(&["eval", "@F_NEG_ALLB"])), "value true\n");
    assert_eq!(run(&["eval", "@F_OR_LOOP"]).status.code(), Some(1));
    assert_eq!(run(&["eval", "@F_BAD"]).status.code(), Some(2));
    assert_eq!(stdout(&run(&["rank", "@F_NEG_ALLB"])), "rank 1\n");
}

#[test]
fn build_commands_round_trip_through_eval() {
    let neg = stdout(&run(&["build-neg", "@F_NEG_ALLB"]));
    assert_eq!(stdout(&run_stdin(&["eval", "-"], &neg)), "value false\n");
    let or = stdout(&run(&["build-or", "@F_OR_LOOP", "@F_NEG_ALLB", "--tail", "@F_OR_LOOP"]));
    assert_eq!(stdout(&run_stdin(&["eval", "-"], &or)), "value true\n");
}

#[test]
fn reduce_if_tracks_pumping() {
    let pumped = "tnode eps\ntnode 0\npump 0\n";
    let f = stdout(&run_stdin(&["reduce-if", "-"], pumped));
    assert_eq!(run_stdin(&["good-branch", "-"], &f).status.code(), Some(0));
    let plain = "tnode eps\ntnode 0\ntnode 1\n";
    let f = stdout(&run_stdin(&["reduce-if", "-"], plain));
    assert_eq!(run_stdin(&["member", "@A_G", "-"], &f).status.code(), Some(1));
}

#[test]
fn solve_game_with_each_solver() {
    let game = "vertex 0 owner P pri 1\nvertex 1 owner A pri 2\nedge 0 1\nedge 1 0\nedge 0 0\n";
    for solver in ["zielonka", "brute-force"] {
        let o = run_stdin(&["solve-game", "--solver", solver, "-"], game);
        assert_eq!(o.status.code(), Some(0), "{solver}: {}", stderr(&o));
        let out = stdout(&o);
        assert!(out.contains("vertex 0 winner P\nvertex 1 winner P\n"), "{solver}: {out}");
    }
    let o = run_stdin(&["solve-game", "--solver", "iar", "-"], game);
    assert_eq!(o.status.code(), Some(2));
    let o = run_stdin(&["solve-game", "--solver", "nope", "-"], game);
    assert_eq!(o.status.code(), Some(2));

    // Always moving to vertex 1 keeps the second coordinate odd.
    let pair = "vertex 0 owner A pri 0,0\nvertex 1 owner P pri 2,1\nvertex 2 owner P pri 1,2\n\
                edge 0 1\nedge 0 2\nedge 1 0\nedge 2 0\n";
    for solver in ["iar", "brute-force"] {
        let o = run_stdin(&["solve-game", "--solver", solver, "-"], pair);
        assert_eq!(o.status.code(), Some(0), "{solver}: {}", stderr(&o));
        assert!(stdout(&o).contains("vertex 0 winner A\n"), "{solver}: {}", stdout(&o));
    }
    let o = run_stdin(&["solve-game", "-"], pair);
    assert!(stdout(&o).starts_with("solver iar\n"));
    assert!(stdout(&o).contains("strategy A verified\n"));
}

#[test]
fn fixture_emit_round_trips() {
    let text = stdout(&run(&["fixture", "A_W", "--emit"]));
    assert_eq!(text, golden("fixture_A_W.txt"));
    let o = run_stdin(&["member", "-", "@F_BAD"], &text);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(run(&["fixture", "NOPE"]).status.code(), Some(2));
}

#[test]
fn malformed_input_is_line_numbered() {
    let o = run_stdin(&["good-branch", "-"], "alphabet a\nnode x a x y\nroot x\n");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("-:2: undefined node `y`"), "{}", stderr(&o));
    let o = run_stdin(&["empty", "-"], "alphabet a\nstate q rank x initial\n");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("-:2:"), "{}", stderr(&o));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["member", "@A_G"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["member", "@T_ALL_A", "@T_ALL_A"]).status.code(), Some(2));
    assert_eq!(run(&["good-branch", "/no/such/file"]).status.code(), Some(2));
}

#[test]
fn verify_all_is_deterministic() {
    let a = run(&["--json", "verify-all", "--seed", "11"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    let b = run(&["--json", "verify-all", "--seed", "11"]);
    assert_eq!(stdout(&a), stdout(&b));
    let text = stdout(&run(&["verify-all"]));
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 9);
}
