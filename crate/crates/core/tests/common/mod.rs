#![allow(dead_code)]

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use treeparity::corpus::{generate_corpus, random_tree, CorpusDescriptor};
use treeparity::fixtures::{AB, FORMULA_ALPHABET};
use treeparity::tree::RegularTree;

fn seeded(alphabet: &'static [&'static str], max_nodes: usize) -> impl Strategy<Value = RegularTree> {
    let alphabet: Vec<String> = alphabet.iter().map(|s| s.to_string()).collect();
    any::<u64>().prop_map(move |seed| {
        random_tree(&mut ChaCha8Rng::seed_from_u64(seed), &alphabet, max_nodes).expect("valid alphabet")
    })
}

/// Random trees over `a b` with at most `max_nodes` graph nodes.
pub fn ab_tree(max_nodes: usize) -> impl Strategy<Value = RegularTree> {
    seeded(&AB, max_nodes)
}

/// Random trees over `a b or neg`.
pub fn formula_alphabet_tree(max_nodes: usize) -> impl Strategy<Value = RegularTree> {
    seeded(&FORMULA_ALPHABET, max_nodes)
}

pub fn exhaustive(alphabet: &[&str], max_nodes: usize) -> Vec<RegularTree> {
    generate_corpus(&CorpusDescriptor::exhaustive(alphabet, max_nodes)).unwrap().trees
}

pub fn random(alphabet: &[&str], max_nodes: usize, seed: u64, count: usize) -> Vec<RegularTree> {
    generate_corpus(&CorpusDescriptor::random(alphabet, max_nodes, seed, count)).unwrap().trees
}
