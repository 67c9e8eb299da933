mod common;

use proptest::prelude::*;
use treeparity::analysis::{first_difference, verify_run, Analyzer, RunGraph, RunNode, Witness};
use treeparity::automata::{conjunction_product, ParityTreeAutomaton, TreeAcceptor};
use treeparity::fixtures::{automaton, tree, AB, FORMULA_ALPHABET, G_TRACKING};
use treeparity::oracles::leftmost_good_branch;
use treeparity::tree::{BranchLasso, RegularTree};

fn transition(a: &ParityTreeAutomaton, src: &str, sym: &str, l: &str, r: &str) -> usize {
    let q = |s| a.state_index(s).unwrap();
    a.transitions()
        .iter()
        .position(|t| {
            t.source == q(src) && t.symbol == a.symbol_index(sym).unwrap() && t.left == q(l) && t.right == q(r)
        })
        .expect("transition exists")
}

#[test]
fn member_examples() {
    let az = Analyzer::default();
    let (a_g, a_l) = (automaton("A_G").unwrap(), automaton("A_L").unwrap());
    assert!(az.member(a_g, tree("T_ALL_A").unwrap()).unwrap().answer);
    assert!(!az.member(a_g, tree("T_ALL_B").unwrap()).unwrap().answer);
    assert!(!az.member(a_g, tree("T_RSPINE").unwrap()).unwrap().answer);
    assert!(az.member(a_l, tree("T_RSPINE").unwrap()).unwrap().answer);
}

#[test]
fn emptiness_examples() {
    let az = Analyzer::default();
    let a_g = automaton("A_G").unwrap();
    let v = az.empty(a_g).unwrap();
    assert!(!v.answer);
    let Some(Witness::Tree(t)) = v.witness else { panic!("no witness") };
    assert!(az.member(a_g, &t).unwrap().answer);
    let p = conjunction_product(automaton("C_from_P").unwrap(), automaton("C_from_N").unwrap()).unwrap();
    assert!(az.empty(&p).unwrap().answer);
}

#[test]
fn hand_built_runs_on_all_a() {
    let t = tree("T_ALL_A").unwrap();
    // A_L stays in l1 along the leftmost branch: rank 1 forever.
    let a_l = automaton("A_L").unwrap();
    let (l0, l1) = (a_l.state_index("l0").unwrap(), a_l.state_index("l1").unwrap());
    let run = RunGraph {
        nodes: vec![
            RunNode { tree_node: 0, state: l1, memory: 0, transition: transition(a_l, "l1", "a", "l1", "l0"), left: 0, right: 1 },
            RunNode { tree_node: 0, state: l0, memory: 1, transition: transition(a_l, "l0", "a", "l1", "l0"), left: 0, right: 1 },
        ],
    };
    assert!(!verify_run(a_l, t, &run));

    // A_G labelled with bot1 everywhere: wrong root state and an odd loop.
    let a_g = automaton("A_G").unwrap();
    let bot = a_g.state_index("bot1").unwrap();
    let run = RunGraph {
        nodes: vec![RunNode {
            tree_node: 0,
            state: bot,
            memory: 0,
            transition: transition(a_g, "bot1", "a", "bot1", "bot1"),
            left: 0,
            right: 0,
        }],
    };
    assert!(!verify_run(a_g, t, &run));
}

#[test]
fn extracted_runs_verify_on_every_fixture() {
    let az = Analyzer::default();
    let ab = common::exhaustive(&AB, 2);
    let four = common::random(&FORMULA_ALPHABET, 5, 11, 120);
    let cases: [(&str, &Vec<RegularTree>); 8] = [
        ("A_L", &ab),
        ("A_G", &ab),
        ("A_G_13", &ab),
        ("B_G", &ab),
        ("C", &four),
        ("C_from_N", &four),
        ("A_W", &four),
        ("A_COMPL_C", &four),
    ];
    for (name, trees) in cases {
        let a = automaton(name).unwrap();
        for t in trees {
            let v = az.member(a, t).unwrap();
            match &v.witness {
                Some(Witness::Run(r)) => assert!(v.answer && verify_run(a, t, r), "{name}"),
                None => assert!(!v.answer),
                Some(_) => panic!("unexpected witness kind"),
            }
        }
    }
}

#[test]
fn unambiguity_examples() {
    let az = Analyzer::default();
    assert!(az.is_unambiguous(automaton("A_G").unwrap()).unwrap().answer);
    assert!(az.is_unambiguous(automaton("C").unwrap()).unwrap().answer);
    let b_g = automaton("B_G").unwrap();
    let v = az.is_unambiguous(b_g).unwrap();
    assert!(!v.answer);
    let Some(Witness::Ambiguity { tree, runs, split }) = v.witness else { panic!("no witness") };
    assert!(runs.iter().all(|r| verify_run(b_g, &tree, r)));
    assert_eq!(first_difference(&runs[0], &runs[1]), Some(split));
}

#[test]
fn ambiguous_on_examples() {
    let az = Analyzer::default();
    let all_a = tree("T_ALL_A").unwrap();
    let v = az.ambiguous_on(automaton("B_G").unwrap(), all_a).unwrap();
    assert!(v.answer);
    let Some(Witness::Ambiguity { tree, runs, .. }) = v.witness else { panic!("no witness") };
    assert_eq!(&tree, all_a);
    assert!(runs.iter().all(|r| verify_run(automaton("B_G").unwrap(), all_a, r)));
    assert!(!az.ambiguous_on(automaton("A_G").unwrap(), all_a).unwrap().answer);
    let a_l = automaton("A_L").unwrap();
    for t in common::exhaustive(&AB, 2) {
        assert!(!az.ambiguous_on(a_l, &t).unwrap().answer);
    }
}

#[test]
fn unique_run_trace_examples() {
    let az = Analyzer::default();
    let a_g = automaton("A_G").unwrap();
    let trace = |name| az.unique_run_trace(a_g, tree(name).unwrap(), &G_TRACKING);
    assert_eq!(trace("T_ALL_A").unwrap().normalized(), BranchLasso::parse("eps", "l").unwrap());
    assert!(trace("T_ZIGZAG").unwrap().same_branch(&BranchLasso::parse("eps", "rl").unwrap()));
    assert!(trace("T_ALL_B").is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn good_and_leftmost_are_complementary(t in common::ab_tree(6)) {
        let az = Analyzer::default();
        let g = az.accepts(automaton("A_G").unwrap(), &t).unwrap();
        let l = az.accepts(automaton("A_L").unwrap(), &t).unwrap();
        prop_assert!(g ^ l);
    }

    #[test]
    fn trace_follows_leftmost_good_branch(t in common::ab_tree(6)) {
        let az = Analyzer::default();
        let a_g = automaton("A_G").unwrap();
        if az.accepts(a_g, &t).unwrap() {
            let trace = az.unique_run_trace(a_g, &t, &G_TRACKING).unwrap();
            prop_assert!(trace.same_branch(&leftmost_good_branch(&t).unwrap()));
        }
    }

    #[test]
    fn formula_trees_fall_in_exactly_one_class(t in common::formula_alphabet_tree(6)) {
        let az = Analyzer::default();
        let hits = ["C_from_P", "C_from_N", "A_W"]
            .iter()
            .filter(|n| az.accepts(automaton(n).unwrap(), &t).unwrap())
            .count();
        prop_assert_eq!(hits, 1);
    }
}
