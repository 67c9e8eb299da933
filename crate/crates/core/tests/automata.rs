mod common;

use proptest::prelude::*;
use treeparity::analysis::Analyzer;
use treeparity::automata::{
    ambiguity_product, conjunction_product, disjoint_union, AutomatonBuilder, AutomatonIndex, ParityTreeAutomaton,
};
use treeparity::fixtures::{automaton, AB, FORMULA_ALPHABET};
use treeparity::Error;

fn idx(iota: u32, kappa: u32) -> AutomatonIndex {
    AutomatonIndex { iota, kappa }
}

const AB_FIXTURES: [&str; 4] = ["A_L", "A_G", "A_G_13", "B_G"];

#[test]
fn index_examples() {
    assert_eq!(automaton("A_L").unwrap().index(), idx(0, 1));
    assert_eq!(automaton("A_G").unwrap().index(), idx(0, 2));
    let fours = AutomatonBuilder::new(&["a"])
        .state("p", 4)
        .state("q", 4)
        .initial("p")
        .trans(&["p"], &["a"], "q", "q")
        .sink("q")
        .build()
        .unwrap();
    assert_eq!(fours.index(), idx(0, 0));
}

#[test]
fn index_is_invariant_under_even_shifts() {
    for name in ["A_L", "A_G", "A_G_13", "B_G", "C", "A_W"] {
        let a = automaton(name).unwrap();
        for k in [0, 2, 4, 10] {
            assert_eq!(a.shift_ranks(k).unwrap().index(), a.index(), "{name} +{k}");
        }
    }
    assert_eq!(automaton("A_L").unwrap().shift_ranks(0).unwrap(), *automaton("A_L").unwrap());
    assert!(matches!(automaton("A_G").unwrap().shift_ranks(1), Err(Error::OddShift(1))));
}

#[test]
fn shifted_automaton_accepts_the_same_trees() {
    let az = Analyzer::default();
    let a_l = automaton("A_L").unwrap();
    let shifted = a_l.shift_ranks(2).unwrap();
    assert_eq!(shifted.ranks().iter().min(), Some(&2));
    assert_eq!(shifted.ranks().iter().max(), Some(&3));
    for t in common::exhaustive(&AB, 2) {
        assert_eq!(az.accepts(&shifted, &t).unwrap(), az.accepts(a_l, &t).unwrap());
    }
}

#[test]
fn with_initial_examples() {
    let c = automaton("C").unwrap();
    assert_eq!(&c.with_initial("N").unwrap(), automaton("C_from_N").unwrap());
    assert_eq!(&c.with_initial("top_S").unwrap(), automaton("C_from_TS").unwrap());
    let a_l = automaton("A_L").unwrap();
    assert_eq!(&a_l.with_initial("l1").unwrap(), a_l);
}

#[test]
fn product_examples() {
    let az = Analyzer::default();
    let (a_g, a_l) = (automaton("A_G").unwrap(), automaton("A_L").unwrap());
    assert!(az.empty(&conjunction_product(a_g, a_l).unwrap()).unwrap().answer);
    let gg = conjunction_product(a_g, a_g).unwrap();
    assert!(az.accepts(&gg, treeparity::fixtures::tree("T_ALL_A").unwrap()).unwrap());
    assert!(matches!(
        conjunction_product(a_g, automaton("C").unwrap()),
        Err(Error::AlphabetMismatch(_))
    ));
    assert!(matches!(
        disjoint_union(a_g, automaton("A_W").unwrap()),
        Err(Error::AlphabetMismatch(_))
    ));
}

#[test]
fn ambiguity_product_examples() {
    let az = Analyzer::default();
    assert!(az.empty(&ambiguity_product(automaton("A_L").unwrap())).unwrap().answer);
    assert!(az.empty(&ambiguity_product(automaton("A_G").unwrap())).unwrap().answer);
    assert!(!az.empty(&ambiguity_product(automaton("B_G").unwrap())).unwrap().answer);
}

#[test]
fn conjunction_is_intersection_on_small_corpora() {
    let az = Analyzer::default();
    let trees = common::exhaustive(&AB, 2);
    for x in AB_FIXTURES {
        for y in AB_FIXTURES {
            let (a, b) = (automaton(x).unwrap(), automaton(y).unwrap());
            let p = conjunction_product(a, b).unwrap();
            for t in &trees {
                let both = az.accepts(a, t).unwrap() && az.accepts(b, t).unwrap();
                assert_eq!(az.accepts(&p, t).unwrap(), both, "{x} x {y} on\n{t}");
            }
        }
    }
}

#[test]
fn union_is_disjunction_on_small_corpora() {
    let az = Analyzer::default();
    let trees = common::exhaustive(&FORMULA_ALPHABET, 1)
        .into_iter()
        .chain(common::random(&FORMULA_ALPHABET, 5, 3, 150));
    let pairs = [("A_W", "C_from_N"), ("C_from_P", "A_W"), ("A_L4", "A_G4"), ("C_from_TS", "C_from_N")];
    let unions: Vec<_> = pairs
        .iter()
        .map(|(x, y)| disjoint_union(automaton(x).unwrap(), automaton(y).unwrap()).unwrap())
        .collect();
    for t in trees {
        for ((x, y), u) in pairs.iter().zip(&unions) {
            let either = az.accepts(automaton(x).unwrap(), &t).unwrap() || az.accepts(automaton(y).unwrap(), &t).unwrap();
            assert_eq!(az.accepts(u, &t).unwrap(), either, "{x} + {y} on\n{t}");
        }
    }
}

/// A deterministic automaton over `a b` from a table of successor pairs.
fn deterministic(ranks: &[u32], table: &[(usize, usize)]) -> ParityTreeAutomaton {
    let n = ranks.len();
    let names: Vec<String> = (0..n).map(|i| format!("q{i}")).collect();
    let mut b = AutomatonBuilder::new(&AB);
    for (q, &r) in ranks.iter().enumerate() {
        b = b.state(&names[q], r);
    }
    b = b.initial("q0");
    for q in 0..n {
        for s in 0..2 {
            let (l, r) = table[(q * 2 + s) % table.len()];
            b = b.trans(&[names[q].as_str()], &[AB[s]], &names[l % n], &names[r % n]);
        }
    }
    b.build().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn deterministic_automata_are_unambiguous(
        ranks in prop::collection::vec(0u32..4, 1..4),
        table in prop::collection::vec((0usize..4, 0usize..4), 8),
    ) {
        let a = deterministic(&ranks, &table);
        prop_assert!(a.is_deterministic());
        let az = Analyzer::default();
        prop_assert!(az.empty(&ambiguity_product(&a)).unwrap().answer);
    }

    #[test]
    fn text_round_trip(
        ranks in prop::collection::vec(0u32..4, 1..4),
        table in prop::collection::vec((0usize..4, 0usize..4), 8),
    ) {
        let a = deterministic(&ranks, &table);
        let back: ParityTreeAutomaton = a.to_string().parse().unwrap();
        prop_assert_eq!(back.to_string(), a.to_string());
        prop_assert_eq!(back, a);
    }
}
