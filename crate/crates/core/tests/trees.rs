mod common;

use proptest::prelude::*;
use treeparity::corpus::{generate_corpus, CorpusDescriptor};
use treeparity::fixtures::tree;
use treeparity::tree::{BranchLasso, Dir, Path, RegularTree};

fn path() -> impl Strategy<Value = Path> {
    prop::collection::vec(prop_oneof![Just(Dir::L), Just(Dir::R)], 0..12).prop_map(Path)
}

fn lasso() -> impl Strategy<Value = BranchLasso> {
    let dirs = |n| prop::collection::vec(prop_oneof![Just(Dir::L), Just(Dir::R)], n);
    (dirs(0..5), dirs(1..5)).prop_map(|(p, c)| BranchLasso::new(p, c).unwrap())
}

proptest! {
    #[test]
    fn unfolding_is_consistent(t in common::ab_tree(6), p in path(), q in path()) {
        let sub = t.subtree(&p);
        prop_assert_eq!(sub.label_at(&q), t.label_at(&p.concat(&q)));
    }

    #[test]
    fn lasso_walk_pumps_through_the_graph(t in common::formula_alphabet_tree(6), b in lasso()) {
        let (p, c, n) = (b.prefix().len(), b.cycle().len(), t.len());
        let nodes = t.walk(&b, p + 3 * (n + 1) * c);
        let at = |k: usize| nodes[p + k * c];
        let (i, j) = (0..=n)
            .flat_map(|j| (0..j).map(move |i| (i, j)))
            .find(|&(i, j)| at(i) == at(j))
            .expect("a node repeats within |nodes| + 1 cycle boundaries");
        for k in i..=2 * (n + 1) {
            prop_assert_eq!(at(k), at(k + (j - i)));
        }
    }

    #[test]
    fn normalizing_keeps_the_branch(b in lasso()) {
        let n = b.normalized();
        prop_assert!(n.same_branch(&b));
        prop_assert!(n.prefix().len() <= b.prefix().len());
        prop_assert_eq!(n.normalized(), n.clone());
    }

    #[test]
    fn text_round_trip(t in common::formula_alphabet_tree(6)) {
        let back: RegularTree = t.to_string().parse().unwrap();
        prop_assert_eq!(back, t);
    }

    #[test]
    fn corpus_is_reproducible(seed in any::<u64>(), count in 1usize..20) {
        let d = CorpusDescriptor::random(&["a", "b", "or", "neg"], 5, seed, count);
        let a = generate_corpus(&d).unwrap().to_text();
        let b = generate_corpus(&d).unwrap().to_text();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn named_subtrees_and_labels() {
    let rspine = tree("T_RSPINE").unwrap();
    assert_eq!(&rspine.subtree(&Path::empty()), rspine);
    assert_eq!(&rspine.subtree(&"r".parse().unwrap()), rspine);
    assert_eq!(rspine.subtree(&"l".parse().unwrap()).label_at(&"lrl".parse().unwrap()), "b");
    assert_eq!(tree("T_ALL_A").unwrap().label_at(&"lrlr".parse().unwrap()), "a");
    assert_eq!(rspine.label_at(&"rrr".parse().unwrap()), "a");
    assert_eq!(rspine.label_at(&"rl".parse().unwrap()), "b");
}

#[test]
fn exhaustive_counts() {
    assert_eq!(common::exhaustive(&["a", "b"], 1).len(), 2);
    // sizes 1 and 2: 2 one-node trees and 2·(2·2·2)² two-node graphs
    assert_eq!(common::exhaustive(&["a", "b"], 2).len(), 2 + 128);
    let d = CorpusDescriptor::random(&["a", "b"], 4, 7, 5);
    assert_eq!(generate_corpus(&d).unwrap(), generate_corpus(&d).unwrap());
}
