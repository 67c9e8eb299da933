//! Deterministic generation of regular-tree corpora.
//!
//! Exhaustive mode lists every rooted labelled graph with `1..=max_nodes`
//! nodes. Isomorphic graphs are not identified, so a graph with `m` nodes
//! over `k` symbols contributes `m · (k·m·m)^m` entries (a root choice plus a
//! label and two successors per node). The bound-`n` corpus therefore holds
//! `Σ_{m=1..n} m · (k·m²)^m` trees.
//!
//! Order: sizes ascending; within a size, graphs are read off a mixed-radix
//! counter whose most significant digit is the root, followed by
//! `(label, left, right)` of node 0, node 1, …, with the right successor of
//! the last node varying fastest.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::tree::{RegularTree, TreeNode};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CorpusMode {
    Exhaustive,
    Random { seed: u64, count: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusDescriptor {
    pub alphabet: Vec<String>,
    pub max_nodes: usize,
    pub mode: CorpusMode,
}

impl CorpusDescriptor {
    pub fn exhaustive(alphabet: &[&str], max_nodes: usize) -> Self {
        CorpusDescriptor {
            alphabet: alphabet.iter().map(|s| s.to_string()).collect(),
            max_nodes,
            mode: CorpusMode::Exhaustive,
        }
    }

    pub fn random(alphabet: &[&str], max_nodes: usize, seed: u64, count: usize) -> Self {
        CorpusDescriptor {
            alphabet: alphabet.iter().map(|s| s.to_string()).collect(),
            max_nodes,
            mode: CorpusMode::Random { seed, count },
        }
    }

    /// Parses `exhaustive:<max>:<sym,sym,...>` or
    /// `random:<max>:<seed>:<count>:<sym,sym,...>`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::Precondition(format!("bad corpus descriptor `{text}`"));
        let parts: Vec<&str> = text.split(':').collect();
        let nat = |s: &str| s.parse::<u64>().map_err(|_| bad());
        let alpha = |s: &str| -> Vec<String> {
            s.split(',').filter(|x| !x.is_empty()).map(String::from).collect()
        };
        match parts.as_slice() {
            ["exhaustive", max, syms] => Ok(CorpusDescriptor {
                alphabet: alpha(syms),
                max_nodes: nat(max)? as usize,
                mode: CorpusMode::Exhaustive,
            }),
            ["random", max, seed, count, syms] => Ok(CorpusDescriptor {
                alphabet: alpha(syms),
                max_nodes: nat(max)? as usize,
                mode: CorpusMode::Random {
                    seed: nat(seed)?,
                    count: nat(count)? as usize,
                },
            }),
            _ => Err(bad()),
        }
    }

    /// Number of trees the descriptor yields.
    pub fn expected_len(&self) -> u128 {
        match self.mode {
            CorpusMode::Exhaustive => {
                let k = self.alphabet.len() as u128;
                (1..=self.max_nodes as u128)
                    .map(|m| m * (k * m * m).pow(m as u32))
                    .sum()
            }
            CorpusMode::Random { count, .. } => count as u128,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeCorpus {
    pub descriptor: CorpusDescriptor,
    pub trees: Vec<RegularTree>,
}

impl TreeCorpus {
    /// All trees in the external tree format, separated by a comment line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, t) in self.trees.iter().enumerate() {
            out.push_str(&format!("# tree {i}\n{t}"));
        }
        out
    }
}

/// Refuses exhaustive corpora beyond this many trees.
pub const EXHAUSTIVE_LIMIT: u128 = 5_000_000;

pub fn generate_corpus(descriptor: &CorpusDescriptor) -> Result<TreeCorpus> {
    if descriptor.max_nodes == 0 {
        return Err(Error::Precondition("corpus node bound must be at least 1".into()));
    }
    if descriptor.alphabet.is_empty() {
        return Err(Error::Precondition("corpus alphabet must be nonempty".into()));
    }
    let trees = match descriptor.mode {
        CorpusMode::Exhaustive => {
            if descriptor.expected_len() > EXHAUSTIVE_LIMIT {
                return Err(Error::Precondition(format!(
                    "exhaustive corpus would hold {} trees (limit {EXHAUSTIVE_LIMIT})",
                    descriptor.expected_len()
                )));
            }
            let mut trees = Vec::new();
            for m in 1..=descriptor.max_nodes {
                exhaustive_size(&descriptor.alphabet, m, &mut trees)?;
            }
            trees
        }
        CorpusMode::Random { seed, count } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count)
                .map(|_| random_tree(&mut rng, &descriptor.alphabet, descriptor.max_nodes))
                .collect::<Result<Vec<_>>>()?
        }
    };
    Ok(TreeCorpus {
        descriptor: descriptor.clone(),
        trees,
    })
}

fn exhaustive_size(alphabet: &[String], m: usize, out: &mut Vec<RegularTree>) -> Result<()> {
    let k = alphabet.len();
    // digits: root, then (label, left, right) per node
    let radices: Vec<usize> = std::iter::once(m)
        .chain((0..m).flat_map(|_| [k, m, m]))
        .collect();
    let mut digits = vec![0usize; radices.len()];
    loop {
        let nodes = (0..m)
            .map(|i| TreeNode {
                label: digits[1 + 3 * i],
                left: digits[2 + 3 * i],
                right: digits[3 + 3 * i],
            })
            .collect();
        out.push(RegularTree::new(alphabet.to_vec(), nodes, digits[0])?);

        let mut pos = digits.len();
        loop {
            if pos == 0 {
                return Ok(());
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < radices[pos] {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// A uniformly random graph with between 1 and `max_nodes` nodes, rooted at
/// node 0.
pub fn random_tree(rng: &mut ChaCha8Rng, alphabet: &[String], max_nodes: usize) -> Result<RegularTree> {
    let m = rng.random_range(1..=max_nodes);
    let nodes = (0..m)
        .map(|_| TreeNode {
            label: rng.random_range(0..alphabet.len()),
            left: rng.random_range(0..m),
            right: rng.random_range(0..m),
        })
        .collect();
    RegularTree::new(alphabet.to_vec(), nodes, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn one_node_corpus_is_the_two_constant_trees() {
        let c = generate_corpus(&CorpusDescriptor::exhaustive(&["a", "b"], 1)).unwrap();
        assert_eq!(c.trees.len(), 2);
        assert_eq!(c.trees[0], RegularTree::constant(&["a", "b"], "a").unwrap());
        assert_eq!(c.trees[1], RegularTree::constant(&["a", "b"], "b").unwrap());
    }

    #[test]
    fn two_node_graphs_are_counted_by_enumeration() {
        let c = generate_corpus(&CorpusDescriptor::exhaustive(&["a", "b"], 2)).unwrap();
        let two: Vec<_> = c.trees.iter().filter(|t| t.len() == 2).collect();
        assert_eq!(two.len(), 128);
        // every entry is a different (graph, root) pair
        let distinct: HashSet<_> = two.iter().collect();
        assert_eq!(distinct.len(), 128);
        assert_eq!(c.trees.len() as u128, c.descriptor.expected_len());
        assert_eq!(c.trees.len(), 130);
    }

    #[test]
    fn random_corpus_is_reproducible() {
        let d = CorpusDescriptor::random(&["a", "b"], 4, 7, 5);
        let first = generate_corpus(&d).unwrap();
        let second = generate_corpus(&d).unwrap();
        assert_eq!(first.trees.len(), 5);
        assert_eq!(first.to_text(), second.to_text());
        let other = generate_corpus(&CorpusDescriptor::random(&["a", "b"], 4, 8, 5)).unwrap();
        assert_ne!(first.to_text(), other.to_text());
    }

    #[test]
    fn rejects_degenerate_descriptors() {
        assert!(generate_corpus(&CorpusDescriptor::exhaustive(&["a"], 0)).is_err());
        assert!(generate_corpus(&CorpusDescriptor::exhaustive(&[], 2)).is_err());
    }

    #[test]
    fn descriptor_strings() {
        let d = CorpusDescriptor::parse("random:6:7:500:a,b").unwrap();
        assert_eq!(d, CorpusDescriptor::random(&["a", "b"], 6, 7, 500));
        let d = CorpusDescriptor::parse("exhaustive:2:a,b,or,neg").unwrap();
        assert_eq!(d.expected_len(), 4 + 2 * 16 * 16);
        assert!(CorpusDescriptor::parse("weird").is_err());
    }
}
