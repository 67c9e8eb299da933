//! Reductions into tree languages.
//!
//! # Trees on ω
//!
//! A [`CountableTree`] is a finite prefix-closed set of sequences of
//! naturals, some of whose leaves are *pumped*: a pumped leaf `u` stands
//! for the infinite branch `u, u·0, u·0·0, …`. The encoded tree has an
//! infinite branch iff something is pumped.
//!
//! # The embedding into good branches
//!
//! [`reduce_if`] labels with `a` the root, every right child, and the left
//! child position `r^n1 l r^n2 l … r^nk l` of every node `n1 … nk`. All other
//! left children get `b`. An infinite `a`-branch turning left infinitely
//! often then spells out an infinite branch of the input and vice versa.
//! "Every right child" is read globally, also outside the image of the
//! input; this keeps the equivalence and makes the default region a
//! two-node graph.
//!
//! # Formula builders
//!
//! [`build_neg`] and [`build_or`] assemble formula trees over `a b or neg`:
//! a `neg` root with an all-`b` filler on the left, and an `or` left spine
//! whose right children are the disjuncts followed by a looping `or` node
//! repeating the tail forever.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{parse_err, Error, Result};
use crate::fixtures::FORMULA_ALPHABET;
use crate::text;
use crate::tree::{RegularTree, TreeNode};

pub type Seq = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CountableTree {
    nodes: BTreeSet<Seq>,
    pumped: BTreeSet<Seq>,
}

impl CountableTree {
    /// Requires a nonempty prefix-closed node set and pumped leaves.
    pub fn new(nodes: impl IntoIterator<Item = Seq>, pumped: impl IntoIterator<Item = Seq>) -> Result<Self> {
        let nodes: BTreeSet<Seq> = nodes.into_iter().collect();
        let pumped: BTreeSet<Seq> = pumped.into_iter().collect();
        if !nodes.contains(&Vec::new()) {
            return Err(Error::InvalidTree("a tree on ω must contain the empty sequence".into()));
        }
        for s in &nodes {
            if let Some((_, parent)) = s.split_last() {
                if !nodes.contains(parent) {
                    return Err(Error::InvalidTree(format!("{} has no parent", show_seq(s))));
                }
            }
        }
        let t = CountableTree { nodes, pumped };
        for u in &t.pumped {
            if !t.nodes.contains(u) || !t.children(u).is_empty() {
                return Err(Error::InvalidTree(format!("pumped sequence {} is not a leaf", show_seq(u))));
            }
        }
        Ok(t)
    }

    pub fn nodes(&self) -> &BTreeSet<Seq> {
        &self.nodes
    }

    pub fn pumped(&self) -> &BTreeSet<Seq> {
        &self.pumped
    }

    pub fn has_infinite_branch(&self) -> bool {
        !self.pumped.is_empty()
    }

    /// Child indices of `s`, increasing.
    pub fn children(&self, s: &[u32]) -> Vec<u32> {
        self.nodes
            .iter()
            .filter(|c| c.len() == s.len() + 1 && c.starts_with(s))
            .map(|c| c[s.len()])
            .collect()
    }

    pub fn leaves(&self) -> Vec<Seq> {
        self.nodes.iter().filter(|s| self.children(s).is_empty()).cloned().collect()
    }
}

fn show_seq(s: &[u32]) -> String {
    if s.is_empty() {
        "eps".into()
    } else {
        s.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(".")
    }
}

fn parse_seq(line: usize, tok: &str) -> Result<Seq> {
    if tok == "eps" || tok == "ε" {
        return Ok(Vec::new());
    }
    tok.split('.').map(|p| text::parse_nat(line, p)).collect()
}

impl fmt::Display for CountableTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.nodes {
            writeln!(f, "tnode {}", show_seq(s))?;
        }
        for s in &self.pumped {
            writeln!(f, "pump {}", show_seq(s))?;
        }
        Ok(())
    }
}

impl FromStr for CountableTree {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        let mut nodes = Vec::new();
        let mut pumped = Vec::new();
        let mut last = 0;
        for (line, toks) in text::lines(input) {
            last = line;
            text::expect_len(line, &toks, 2)?;
            let s = parse_seq(line, toks[1])?;
            match toks[0] {
                "tnode" => nodes.push(s),
                "pump" => pumped.push(s),
                other => return Err(parse_err(line, format!("unknown directive `{other}`"))),
            }
        }
        CountableTree::new(nodes, pumped).map_err(|e| parse_err(last.max(1), e.to_string()))
    }
}

/// Every tree on ω with at most `max_nodes` nodes and child indices below
/// `branching`, each with every subset of its leaves pumped.
pub fn enumerate_countable_trees(max_nodes: usize, branching: u32) -> Vec<CountableTree> {
    let mut shapes: BTreeSet<BTreeSet<Seq>> = BTreeSet::new();
    let mut frontier = vec![BTreeSet::from([Vec::new()])];
    while let Some(shape) = frontier.pop() {
        if !shapes.insert(shape.clone()) || shape.len() >= max_nodes {
            continue;
        }
        for s in &shape {
            for i in 0..branching {
                let mut c = s.clone();
                c.push(i);
                if !shape.contains(&c) {
                    let mut next = shape.clone();
                    next.insert(c);
                    if !shapes.contains(&next) {
                        frontier.push(next);
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    for shape in shapes {
        let base = CountableTree::new(shape, []).expect("generated shapes are prefix closed");
        let leaves = base.leaves();
        for mask in 0u32..(1 << leaves.len()) {
            let pumped = (0..leaves.len()).filter(|i| mask & (1 << i) != 0).map(|i| leaves[i].clone());
            out.push(CountableTree::new(base.nodes.clone(), pumped).expect("leaves may be pumped"));
        }
    }
    out
}

/// The tree `f(t)` over `a b`, pruned to its reachable part.
///
/// Graph layout: for each node `s` of `t` a chain of `a`-nodes for the
/// positions `image(s)·r^j`, `j` up to the largest child index. The left
/// child of `image(s)·r^j` is the chain of `s·j` when that is a node, the
/// default `b`-node otherwise. Two default nodes cover everything outside
/// the image (`a` for right children, `b` for left children) and one
/// `a`-node with a left self-loop carries the pumped branches.
pub fn reduce_if(t: &CountableTree) -> RegularTree {
    const D_A: usize = 0;
    const D_B: usize = 1;
    const PUMP: usize = 2;
    let (a, b) = (0, 1);
    let mut nodes = vec![
        TreeNode { label: a, left: D_B, right: D_A },
        TreeNode { label: b, left: D_B, right: D_A },
        TreeNode { label: a, left: PUMP, right: D_A },
    ];
    // chain start for every node of t, allocated up front
    let seqs: Vec<&Seq> = t.nodes.iter().collect();
    let mut start = Vec::with_capacity(seqs.len());
    for s in &seqs {
        start.push(nodes.len());
        let len = t.children(s).last().map_or(1, |&m| m as usize + 1);
        for _ in 0..len {
            nodes.push(TreeNode { label: a, left: D_B, right: D_A });
        }
    }
    let chain_of = |s: &Seq| seqs.binary_search(&s).ok().map(|i| start[i]);
    for (i, s) in seqs.iter().enumerate() {
        let kids = t.children(s);
        let len = kids.last().map_or(1, |&m| m as usize + 1);
        for j in 0..len {
            let x = start[i] + j;
            let mut c = (*s).clone();
            c.push(j as u32);
            nodes[x].left = match chain_of(&c) {
                Some(y) => y,
                None if j == 0 && t.pumped.contains(*s) => PUMP,
                None => D_B,
            };
            nodes[x].right = if j + 1 < len { x + 1 } else { D_A };
        }
    }
    let root = start[0];
    RegularTree::new(vec!["a".into(), "b".into()], nodes, root)
        .expect("reduction graph is well formed")
        .pruned()
}

fn formula_alphabet() -> Vec<String> {
    FORMULA_ALPHABET.iter().map(|s| s.to_string()).collect()
}

/// Places copies of `parts` after `prefix` nodes in one node list over the
/// formula alphabet and returns the list and each part's new root.
fn graft(prefix: usize, parts: &[&RegularTree]) -> Result<(Vec<TreeNode>, Vec<usize>)> {
    let alphabet = formula_alphabet();
    let mut nodes = vec![
        TreeNode {
            label: 0,
            left: 0,
            right: 0
        };
        prefix
    ];
    let mut roots = Vec::new();
    for p in parts {
        let p = p.over_alphabet(&alphabet)?;
        let off = nodes.len();
        roots.push(off + p.root());
        nodes.extend(p.nodes().iter().map(|n| TreeNode {
            label: n.label,
            left: n.left + off,
            right: n.right + off,
        }));
    }
    Ok((nodes, roots))
}

fn symbol(name: &str) -> usize {
    FORMULA_ALPHABET.iter().position(|s| *s == name).expect("formula letter")
}

/// `neg` root with an all-`b` left filler and `t` on the right.
pub fn build_neg(t: &RegularTree) -> Result<RegularTree> {
    let (mut nodes, roots) = graft(2, &[t])?;
    nodes[0] = TreeNode {
        label: symbol("neg"),
        left: 1,
        right: roots[0],
    };
    nodes[1] = TreeNode {
        label: symbol("b"),
        left: 1,
        right: 1,
    };
    Ok(RegularTree::new(formula_alphabet(), nodes, 0)?.pruned())
}

/// `or` left spine with the disjuncts on the right, then a looping `or`
/// node with `tail` on the right.
pub fn build_or(disjuncts: &[RegularTree], tail: &RegularTree) -> Result<RegularTree> {
    if disjuncts.is_empty() {
        return Err(Error::Precondition("a disjunction needs at least one disjunct".into()));
    }
    let k = disjuncts.len();
    let mut parts: Vec<&RegularTree> = disjuncts.iter().collect();
    parts.push(tail);
    let (mut nodes, roots) = graft(k + 1, &parts)?;
    for i in 0..=k {
        nodes[i] = TreeNode {
            label: symbol("or"),
            left: (i + 1).min(k),
            right: roots[i],
        };
    }
    Ok(RegularTree::new(formula_alphabet(), nodes, 0)?.pruned())
}

/// Random formula trees built from small atoms over `a b`, with at most
/// `max_nodes` graph nodes.
pub struct FormulaGenerator {
    rng: ChaCha8Rng,
    pub max_nodes: usize,
}

impl FormulaGenerator {
    pub fn new(seed: u64, max_nodes: usize) -> Self {
        FormulaGenerator {
            rng: ChaCha8Rng::seed_from_u64(seed),
            max_nodes,
        }
    }

    pub fn atom(&mut self) -> RegularTree {
        let ab = ["a".to_string(), "b".to_string()];
        crate::corpus::random_tree(&mut self.rng, &ab, 2).expect("nonempty alphabet")
    }

    /// A random formula of nesting depth at most `depth`.
    pub fn formula(&mut self, depth: u32) -> RegularTree {
        loop {
            let t = self.attempt(depth);
            if t.len() <= self.max_nodes {
                return t;
            }
        }
    }

    fn attempt(&mut self, depth: u32) -> RegularTree {
        let choice = if depth == 0 { 0 } else { self.rng.random_range(0..3) };
        match choice {
            0 => self.atom(),
            1 => build_neg(&self.attempt(depth - 1)).expect("formula alphabet"),
            _ => {
                let k = self.rng.random_range(1..=2);
                let ds: Vec<RegularTree> = (0..k).map(|_| self.attempt(depth - 1)).collect();
                let tail = self.attempt(depth - 1);
                build_or(&ds, &tail).expect("nonempty disjunct list")
            }
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}
