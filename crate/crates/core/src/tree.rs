//! Regular infinite binary trees and eventually periodic branches.
//!
//! An infinite binary tree over an alphabet is a labelling of `{l,r}*`.
//! A *regular* tree has finitely many distinct subtrees, so it is presented
//! as a finite rooted graph in which every node carries a label and two
//! successors. The infinite tree is the unfolding of that graph from the
//! root; moving the root along a path gives the subtree at that path.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{parse_err, Error, Result};
use crate::text;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    L,
    R,
}

impl Dir {
    pub fn as_char(self) -> char {
        match self {
            Dir::L => 'l',
            Dir::R => 'r',
        }
    }
}

/// A finite word over `{l,r}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path(pub Vec<Dir>);

impl Path {
    pub fn empty() -> Self {
        Path(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Dir> + '_ {
        self.0.iter().copied()
    }

    pub fn concat(&self, other: &Path) -> Path {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Path(v)
    }
}

impl FromStr for Path {
    type Err = Error;

    /// Parses `lrl`-style words; `eps` and the empty string denote the root.
    fn from_str(s: &str) -> Result<Self> {
        if s == "eps" || s == "ε" {
            return Ok(Path::empty());
        }
        s.chars()
            .map(|c| match c {
                'l' => Ok(Dir::L),
                'r' => Ok(Dir::R),
                other => Err(Error::Precondition(format!(
                    "path letters are `l` and `r`, found `{other}`"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Path)
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("eps");
        }
        for d in &self.0 {
            write!(f, "{}", d.as_char())?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TreeNode {
    /// Index into the tree's alphabet.
    pub label: usize,
    pub left: usize,
    pub right: usize,
}

impl TreeNode {
    pub fn child(&self, dir: Dir) -> usize {
        match dir {
            Dir::L => self.left,
            Dir::R => self.right,
        }
    }
}

/// A finite rooted graph presenting an infinite binary tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RegularTree {
    alphabet: Vec<String>,
    nodes: Vec<TreeNode>,
    root: usize,
}

impl RegularTree {
    pub fn new(alphabet: Vec<String>, nodes: Vec<TreeNode>, root: usize) -> Result<Self> {
        if alphabet.is_empty() {
            return Err(Error::InvalidTree("empty alphabet".into()));
        }
        for (i, sym) in alphabet.iter().enumerate() {
            if !text::is_ident(sym) {
                return Err(Error::InvalidTree(format!("bad symbol `{sym}`")));
            }
            if alphabet[..i].contains(sym) {
                return Err(Error::InvalidTree(format!("duplicate symbol `{sym}`")));
            }
        }
        let n = nodes.len();
        if root >= n {
            return Err(Error::InvalidTree(format!(
                "root {root} out of range for {n} node(s)"
            )));
        }
        for (i, node) in nodes.iter().enumerate() {
            if node.label >= alphabet.len() {
                return Err(Error::InvalidTree(format!("node {i} has an undeclared label")));
            }
            if node.left >= n || node.right >= n {
                return Err(Error::InvalidTree(format!("node {i} has a dangling successor")));
            }
        }
        Ok(RegularTree {
            alphabet,
            nodes,
            root,
        })
    }

    /// Convenience constructor from `(label, left, right)` triples with
    /// symbolic labels.
    pub fn from_triples(alphabet: &[&str], triples: &[(&str, usize, usize)], root: usize) -> Result<Self> {
        let alphabet: Vec<String> = alphabet.iter().map(|s| s.to_string()).collect();
        let nodes = triples
            .iter()
            .map(|&(sym, left, right)| {
                let label = alphabet
                    .iter()
                    .position(|a| a == sym)
                    .ok_or_else(|| Error::InvalidTree(format!("label `{sym}` not in alphabet")))?;
                Ok(TreeNode { label, left, right })
            })
            .collect::<Result<Vec<_>>>()?;
        RegularTree::new(alphabet, nodes, root)
    }

    /// The tree labelled `sym` everywhere.
    pub fn constant(alphabet: &[&str], sym: &str) -> Result<Self> {
        RegularTree::from_triples(alphabet, &[(sym, 0, 0)], 0)
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &TreeNode {
        &self.nodes[i]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn symbol(&self, node: usize) -> &str {
        &self.alphabet[self.nodes[node].label]
    }

    /// Graph node reached from `from` by following `path`.
    pub fn follow(&self, from: usize, path: &Path) -> usize {
        path.iter().fold(from, |x, d| self.nodes[x].child(d))
    }

    pub fn node_at(&self, path: &Path) -> usize {
        self.follow(self.root, path)
    }

    pub fn label_at(&self, path: &Path) -> &str {
        self.symbol(self.node_at(path))
    }

    /// The subtree rooted at `path`: the same graph with the root moved.
    pub fn subtree(&self, path: &Path) -> RegularTree {
        self.rooted_at(self.node_at(path))
    }

    pub fn rooted_at(&self, node: usize) -> RegularTree {
        RegularTree {
            alphabet: self.alphabet.clone(),
            nodes: self.nodes.clone(),
            root: node,
        }
    }

    /// Graph nodes reachable from the root, in breadth-first order with the
    /// left successor before the right one.
    pub fn reachable(&self) -> Vec<usize> {
        let mut seen = vec![false; self.nodes.len()];
        let mut order = vec![self.root];
        seen[self.root] = true;
        let mut i = 0;
        while i < order.len() {
            let x = order[i];
            i += 1;
            for y in [self.nodes[x].left, self.nodes[x].right] {
                if !seen[y] {
                    seen[y] = true;
                    order.push(y);
                }
            }
        }
        order
    }

    /// Drops unreachable nodes and renumbers the rest in breadth-first
    /// order, so the root becomes node 0.
    pub fn pruned(&self) -> RegularTree {
        let order = self.reachable();
        let mut index = vec![usize::MAX; self.nodes.len()];
        for (new, &old) in order.iter().enumerate() {
            index[old] = new;
        }
        let nodes = order
            .iter()
            .map(|&old| {
                let n = self.nodes[old];
                TreeNode {
                    label: n.label,
                    left: index[n.left],
                    right: index[n.right],
                }
            })
            .collect();
        RegularTree {
            alphabet: self.alphabet.clone(),
            nodes,
            root: 0,
        }
    }

    /// Re-expresses the labels over `alphabet`, which must contain every
    /// symbol of this tree's alphabet.
    pub fn over_alphabet(&self, alphabet: &[String]) -> Result<RegularTree> {
        let map = symbol_map(&self.alphabet, alphabet)?;
        let nodes = self
            .nodes
            .iter()
            .map(|n| TreeNode {
                label: map[n.label],
                ..*n
            })
            .collect();
        RegularTree::new(alphabet.to_vec(), nodes, self.root)
    }

    /// Follows a lasso from the root and returns the graph nodes visited
    /// along the first `steps` directions (including the start node).
    pub fn walk(&self, branch: &BranchLasso, steps: usize) -> Vec<usize> {
        let mut x = self.root;
        let mut out = Vec::with_capacity(steps + 1);
        out.push(x);
        for i in 0..steps {
            x = self.nodes[x].child(branch.dir_at(i));
            out.push(x);
        }
        out
    }
}

/// Maps each symbol of `from` to its index in `to`.
pub(crate) fn symbol_map(from: &[String], to: &[String]) -> Result<Vec<usize>> {
    from.iter()
        .map(|s| {
            to.iter().position(|t| t == s).ok_or_else(|| {
                Error::AlphabetMismatch(format!("symbol `{s}` is not in [{}]", to.join(" ")))
            })
        })
        .collect()
}

impl fmt::Display for RegularTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "alphabet {}", self.alphabet.join(" "))?;
        for (i, n) in self.nodes.iter().enumerate() {
            writeln!(f, "node {i} {} {} {}", self.alphabet[n.label], n.left, n.right)?;
        }
        writeln!(f, "root {}", self.root)
    }
}

impl FromStr for RegularTree {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        let mut alphabet: Option<Vec<String>> = None;
        let mut ids: HashMap<String, usize> = HashMap::new();
        // (line, label, left id, right id)
        let mut raw: Vec<(usize, String, String, String)> = Vec::new();
        let mut root: Option<(usize, String)> = None;

        for (line, toks) in text::lines(input) {
            match toks[0] {
                "alphabet" => {
                    if alphabet.is_some() {
                        return Err(parse_err(line, "duplicate `alphabet`"));
                    }
                    if toks.len() < 2 {
                        return Err(parse_err(line, "`alphabet` needs at least one symbol"));
                    }
                    for t in &toks[1..] {
                        text::check_ident(line, t)?;
                    }
                    alphabet = Some(toks[1..].iter().map(|s| s.to_string()).collect());
                }
                "node" => {
                    text::expect_len(line, &toks, 5)?;
                    text::check_ident(line, toks[1])?;
                    if ids.insert(toks[1].to_string(), raw.len()).is_some() {
                        return Err(parse_err(line, format!("duplicate node `{}`", toks[1])));
                    }
                    raw.push((line, toks[2].into(), toks[3].into(), toks[4].into()));
                }
                "root" => {
                    text::expect_len(line, &toks, 2)?;
                    if root.is_some() {
                        return Err(parse_err(line, "duplicate `root`"));
                    }
                    root = Some((line, toks[1].to_string()));
                }
                other => return Err(parse_err(line, format!("unknown directive `{other}`"))),
            }
        }

        let alphabet = alphabet.ok_or_else(|| parse_err(0, "missing `alphabet` line"))?;
        let lookup = |line: usize, id: &str| {
            ids.get(id)
                .copied()
                .ok_or_else(|| parse_err(line, format!("undefined node `{id}`")))
        };
        let mut nodes = Vec::with_capacity(raw.len());
        for (line, label, left, right) in &raw {
            let label = alphabet
                .iter()
                .position(|a| a == label)
                .ok_or_else(|| parse_err(*line, format!("label `{label}` not in alphabet")))?;
            nodes.push(TreeNode {
                label,
                left: lookup(*line, left)?,
                right: lookup(*line, right)?,
            });
        }
        let (line, root) = root.ok_or_else(|| parse_err(0, "missing `root` line"))?;
        let root = lookup(line, &root)?;
        RegularTree::new(alphabet, nodes, root).map_err(|e| parse_err(line, e.to_string()))
    }
}

/// An eventually periodic branch `prefix · cycle · cycle · …`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BranchLasso {
    prefix: Vec<Dir>,
    cycle: Vec<Dir>,
}

impl BranchLasso {
    pub fn new(prefix: Vec<Dir>, cycle: Vec<Dir>) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::Precondition("lasso cycle must be nonempty".into()));
        }
        Ok(BranchLasso { prefix, cycle })
    }

    pub fn parse(prefix: &str, cycle: &str) -> Result<Self> {
        BranchLasso::new(prefix.parse::<Path>()?.0, cycle.parse::<Path>()?.0)
    }

    pub fn prefix(&self) -> &[Dir] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[Dir] {
        &self.cycle
    }

    pub fn dir_at(&self, i: usize) -> Dir {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.cycle[(i - self.prefix.len()) % self.cycle.len()]
        }
    }

    /// The first `n` directions of the branch.
    pub fn unfold(&self, n: usize) -> Vec<Dir> {
        (0..n).map(|i| self.dir_at(i)).collect()
    }

    /// Shortest presentation of the same branch: the cycle is reduced to its
    /// primitive root and the prefix is made as short as possible.
    pub fn normalized(&self) -> BranchLasso {
        let c = &self.cycle;
        let period = (1..=c.len())
            .find(|&p| c.len().is_multiple_of(p) && (p..c.len()).all(|i| c[i] == c[i - p]))
            .unwrap_or(c.len());
        let mut cycle: Vec<Dir> = c[..period].to_vec();
        let mut prefix = self.prefix.clone();
        while let Some(&last) = prefix.last() {
            if last != *cycle.last().unwrap() {
                break;
            }
            prefix.pop();
            cycle.rotate_right(1);
        }
        BranchLasso { prefix, cycle }
    }

    /// Whether two lassos denote the same infinite branch. Two eventually
    /// periodic words agree everywhere once they agree on the first
    /// `max(prefix) + lcm(cycle)` letters.
    pub fn same_branch(&self, other: &BranchLasso) -> bool {
        let n = self.prefix.len().max(other.prefix.len())
            + lcm(self.cycle.len(), other.cycle.len());
        (0..n).all(|i| self.dir_at(i) == other.dir_at(i))
    }

    /// Whether the branch turns left infinitely often.
    pub fn left_turn_in_cycle(&self) -> bool {
        self.cycle.contains(&Dir::L)
    }
}

impl fmt::Display for BranchLasso {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.prefix {
            write!(f, "{}", d.as_char())?;
        }
        f.write_str("(")?;
        for d in &self.cycle {
            write!(f, "{}", d.as_char())?;
        }
        f.write_str(")^w")
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}
