use std::fmt::Write;

use serde_json::{json, Value};
use treeparity::acceptance::{run_criterion, AcceptanceConfig, CriterionReport, CRITERIA};
use treeparity::analysis::{Analyzer, RunGraph, Verdict, Witness};
use treeparity::automata::{ParityTreeAutomaton, TreeAcceptor};
use treeparity::corpus::{generate_corpus, CorpusDescriptor};
use treeparity::fixtures::{automaton, fixture, Fixture};
use treeparity::games::{verify_strategy, GeneralizedParityGame, Player, SolverRegistry};
use treeparity::oracles::{
    eval_formula, formula_rank, good_branch_exists, leftmost_good_branch, shape_check, ShapeWitness,
};
use treeparity::reductions::{build_neg, build_or, reduce_if, CountableTree};
use treeparity::tree::RegularTree;

use crate::input::{load, CliError};
use crate::{Command, Output};

pub fn run(cmd: &Command) -> Result<Output, CliError> {
    let az = Analyzer::default();
    match cmd {
        Command::Member { automaton, tree, from } => {
            let mut a: ParityTreeAutomaton = load(automaton)?;
            if let Some(q) = from {
                a = a.with_initial(q)?;
            }
            let t: RegularTree = load(tree)?;
            Ok(verdict(&az.member(&a, &t)?, &a))
        }
        Command::Empty { automaton } => {
            let a: ParityTreeAutomaton = load(automaton)?;
            Ok(verdict(&az.empty(&a)?, &a))
        }
        Command::Unambiguous { automaton } => {
            let a: ParityTreeAutomaton = load(automaton)?;
            Ok(verdict(&az.is_unambiguous(&a)?, &a))
        }
        Command::AmbiguousOn { automaton, tree } => {
            let a: ParityTreeAutomaton = load(automaton)?;
            let t: RegularTree = load(tree)?;
            Ok(verdict(&az.ambiguous_on(&a, &t)?, &a))
        }
        Command::GoodBranch { tree } => {
            let t: RegularTree = load(tree)?;
            let yes = good_branch_exists(&t);
            Ok(Output {
                holds: yes,
                text: format!("answer {}\n", yes_no(yes)),
                json: json!({ "answer": yes }),
            })
        }
        Command::Leftmost { tree } => {
            let t: RegularTree = load(tree)?;
            if !good_branch_exists(&t) {
                return Ok(Output {
                    holds: false,
                    text: "answer no\n".into(),
                    json: json!({ "answer": false }),
                });
            }
            let b = leftmost_good_branch(&t)?;
            let (prefix, cycle) = (dirs(b.prefix()), dirs(b.cycle()));
            Ok(Output {
                holds: true,
                text: format!("answer yes\nbranch {b}\n"),
                json: json!({ "answer": true, "prefix": prefix, "cycle": cycle }),
            })
        }
        Command::Shape { tree } => {
            let t: RegularTree = load(tree)?;
            let v = shape_check(&t);
            let witness = match &v.witness {
                None => None,
                Some(ShapeWitness::Branch(b)) => Some(format!("branch {b}")),
                Some(ShapeWitness::Path(p)) => Some(format!("path {p}")),
            };
            let mut text = format!("well-shaped {}\nreason {}\n", yes_no(v.well_shaped), v.reason);
            if let Some(w) = &witness {
                let _ = writeln!(text, "witness {w}");
            }
            Ok(Output {
                holds: v.well_shaped,
                text,
                json: json!({ "well_shaped": v.well_shaped, "reason": v.reason.to_string(), "witness": witness }),
            })
        }
        Command::Eval { tree } => {
            let t: RegularTree = load(tree)?;
            let value = eval_formula(&t)?;
            Ok(Output {
                holds: value,
                text: format!("value {value}\n"),
                json: json!({ "value": value }),
            })
        }
        Command::Rank { tree } => {
            let t: RegularTree = load(tree)?;
            let rank = formula_rank(&t)?;
            Ok(Output {
                holds: true,
                text: format!("rank {rank}\n"),
                json: json!({ "rank": rank }),
            })
        }
        Command::PartitionCheck { trees, corpus } => {
            let labelled: Vec<(String, RegularTree)> = match corpus {
                Some(desc) => {
                    let desc = CorpusDescriptor::parse(desc)?;
                    let corpus = generate_corpus(&desc)?;
                    corpus.trees.into_iter().enumerate().map(|(i, t)| (format!("#{i}"), t)).collect()
                }
                None if trees.is_empty() => return Err(CliError::Usage("give trees or --corpus".into())),
                None => trees.iter().map(|a| Ok((a.clone(), load(a)?))).collect::<Result<_, CliError>>()?,
            };
            partition_check(&az, &labelled)
        }
        Command::ReduceIf { ctree } => {
            let t: CountableTree = load(ctree)?;
            Ok(tree_output(&reduce_if(&t)))
        }
        Command::BuildNeg { tree } => {
            let t: RegularTree = load(tree)?;
            Ok(tree_output(&build_neg(&t)?))
        }
        Command::BuildOr { trees, tail } => {
            let disjuncts = trees.iter().map(|a| load(a)).collect::<Result<Vec<RegularTree>, _>>()?;
            let tail: RegularTree = load(tail)?;
            Ok(tree_output(&build_or(&disjuncts, &tail)?))
        }
        Command::SolveGame { game, solver } => {
            let g: GeneralizedParityGame = load(game)?;
            solve_game(&SolverRegistry::default(), &g, solver.as_deref())
        }
        Command::Fixture { name, emit } => {
            let f = fixture(name)?;
            let (kind, summary) = match f {
                Fixture::Automaton(a) => (
                    "automaton",
                    format!(
                        "automaton {name}\nstates {}\nindex {}\ninitial {}\n",
                        a.state_count(),
                        a.index(),
                        a.state_name(a.initial())
                    ),
                ),
                Fixture::Tree(t) => ("tree", format!("tree {name}\nnodes {}\n", t.len())),
            };
            let text = if *emit { f.emit() } else { summary };
            Ok(Output {
                holds: true,
                json: json!({ "name": name, "kind": kind, "text": f.emit() }),
                text,
            })
        }
        Command::VerifyAll { seed, corpus } => {
            let cfg = AcceptanceConfig {
                seed: *seed,
                extra_corpus: corpus.as_deref().map(CorpusDescriptor::parse).transpose()?,
                ..AcceptanceConfig::default()
            };
            verify_all(&cfg)
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn dirs(ds: &[treeparity::tree::Dir]) -> String {
    ds.iter().map(|d| d.as_char()).collect()
}

fn run_lines<A: TreeAcceptor + ?Sized>(r: &RunGraph, a: &A) -> Vec<String> {
    r.listing(a).lines().map(String::from).collect()
}

fn verdict<A: TreeAcceptor + ?Sized>(v: &Verdict, a: &A) -> Output {
    let witness = match &v.witness {
        None => Value::Null,
        Some(Witness::Tree(t)) => json!({ "kind": "tree", "tree": t.to_string() }),
        Some(Witness::Run(r)) => json!({ "kind": "run", "run": run_lines(r, a) }),
        Some(Witness::Ambiguity { tree, runs, split }) => json!({
            "kind": "ambiguity",
            "tree": tree.to_string(),
            "split": split.to_string(),
            "runs": [run_lines(&runs[0], a), run_lines(&runs[1], a)],
        }),
    };
    Output {
        holds: v.answer,
        text: v.report(a),
        json: json!({ "answer": v.answer, "witness": witness }),
    }
}

fn tree_output(t: &RegularTree) -> Output {
    Output {
        holds: true,
        text: t.to_string(),
        json: json!({ "tree": t.to_string() }),
    }
}

const PARTITION: [&str; 3] = ["C_from_P", "C_from_N", "A_W"];

fn partition_check(az: &Analyzer, trees: &[(String, RegularTree)]) -> Result<Output, CliError> {
    let automata = PARTITION.map(|n| automaton(n).expect("built-in fixture"));
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut holds = true;
    for (label, t) in trees {
        let mut by = Vec::new();
        for (name, a) in PARTITION.iter().zip(automata) {
            if az.accepts(a, t)? {
                by.push(*name);
            }
        }
        let ok = by.len() == 1;
        holds &= ok;
        let _ = writeln!(
            text,
            "{:<4} {label} accepted-by {}",
            if ok { "ok" } else { "FAIL" },
            if by.is_empty() { "none".to_string() } else { by.join(",") }
        );
        rows.push(json!({ "tree": label, "accepted_by": by, "ok": ok }));
    }
    let _ = writeln!(text, "holds {}", yes_no(holds));
    Ok(Output {
        holds,
        text,
        json: json!({ "holds": holds, "trees": rows }),
    })
}

fn solve_game(
    registry: &SolverRegistry,
    g: &GeneralizedParityGame,
    solver: Option<&str>,
) -> Result<Output, CliError> {
    let s = match solver {
        Some(name) => registry.get(name)?,
        None => registry.for_dimension(g.dimension())?,
    };
    if !s.supports(g.dimension()) {
        return Err(CliError::Usage(format!(
            "solver `{}` does not handle {} priority coordinates",
            s.name(),
            g.dimension()
        )));
    }
    let sol = s.solve(g)?;
    let mut text = format!("solver {}\n", s.name());
    for (v, w) in sol.winner.iter().enumerate() {
        let _ = writeln!(text, "vertex {v} winner {w}");
    }
    let mut verified = serde_json::Map::new();
    let mut holds = true;
    for p in [Player::Protagonist, Player::Antagonist] {
        let status = match sol.strategy(p) {
            None => "absent",
            Some(st) if verify_strategy(g, st, p, &sol.region(p)) => "verified",
            Some(_) => {
                holds = false;
                "FAILED"
            }
        };
        let _ = writeln!(text, "strategy {p} {status}");
        verified.insert(p.to_string(), json!(status));
    }
    let winners: Vec<String> = sol.winner.iter().map(|w| w.to_string()).collect();
    Ok(Output {
        holds,
        text,
        json: json!({ "solver": s.name(), "winner": winners, "strategies": verified }),
    })
}

fn verify_all(cfg: &AcceptanceConfig) -> Result<Output, CliError> {
    // Criteria are independent; run them side by side and report in order.
    let reports: Vec<Result<CriterionReport, treeparity::Error>> = std::thread::scope(|s| {
        let handles: Vec<_> = CRITERIA
            .iter()
            .map(|&(id, _)| s.spawn(move || run_criterion(id, cfg)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("criterion thread panicked"))
            .collect()
    });
    let reports = reports.into_iter().collect::<Result<Vec<_>, _>>()?;
    let holds = reports.iter().all(CriterionReport::passed);
    let mut text = String::new();
    for r in &reports {
        let _ = writeln!(text, "{r}");
    }
    let _ = writeln!(text, "{}", if holds { "all criteria pass" } else { "some criteria FAIL" });
    let rows: Vec<Value> = reports
        .iter()
        .map(|r| {
            json!({
                "id": r.id,
                "title": r.title,
                "passed": r.passed(),
                "checked": r.checked,
                "failures": r.failure_count,
                "examples": r.failures,
            })
        })
        .collect();
    Ok(Output {
        holds,
        text,
        json: json!({ "passed": holds, "seed": cfg.seed, "criteria": rows }),
    })
}
