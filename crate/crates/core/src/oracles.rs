//! Direct combinatorial procedures on regular trees: good branches, the
//! leftmost good branch, formula shape, rank and value.
//!
//! A *good branch* is labelled only with `a` and turns left infinitely
//! often. Every letter other than `a` behaves like `b`.
//!
//! Formula trees use `or` and `neg`. Reading from the root, `neg` has its
//! argument on the right, and an `or` node starts a left spine of `or`
//! nodes whose right children are the disjuncts. A tree is *ill-shaped* when
//!
//! 1. some branch labelled only with `or`/`neg`, turning right after every
//!    `neg`, turns right infinitely often (the formula is not well founded), or
//! 2. some path from the root through `or`/`neg` nodes, turning right after
//!    every `neg`, reaches an `or` node whose left child is not `or`.
//!
//! On a well-shaped tree the rank is 0 at an atom, one more than the
//! argument's rank at `neg`, and at an `or` spine one more than the largest
//! rank of a disjunct. For arbitrary trees the last case is a supremum over
//! infinitely many disjuncts and ranks are ordinals, but a regular tree has
//! finitely many distinct subtrees, so the supremum is a maximum and the
//! rank is a natural number.
//!
//! Rank and value are computed by recursion over graph nodes. A neg node
//! depends on its right child, an `or` node on the right children of the
//! `or` nodes on its left spine. A cycle in this dependency relation would
//! be a formula branch with infinitely many right turns, i.e. point 1, so on
//! well-shaped trees the recursion terminates.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph;
use crate::tree::{BranchLasso, Dir, Path, RegularTree};

/// Per graph node: does a good branch start here?
pub fn good_from(t: &RegularTree) -> Vec<bool> {
    let n = t.len();
    let is_a: Vec<bool> = (0..n).map(|x| t.symbol(x) == "a").collect();
    let succ: Vec<Vec<usize>> = (0..n)
        .map(|x| {
            let node = t.node(x);
            [node.left, node.right].into_iter().filter(|&y| is_a[x] && is_a[y]).collect()
        })
        .collect();
    let mut turning = vec![false; n];
    for comp in graph::cyclic_components(&succ, &is_a) {
        let inside = |y: usize| comp.binary_search(&y).is_ok();
        if comp.iter().any(|&x| inside(t.node(x).left)) {
            for &x in &comp {
                turning[x] = true;
            }
        }
    }
    graph::can_reach(&succ, &turning)
}

pub fn good_branch_exists(t: &RegularTree) -> bool {
    good_from(t)[t.root()]
}

/// The leftmost good branch: go left whenever a good branch continues
/// through the left child. The choice depends only on the graph node, so
/// the walk is a lasso.
pub fn leftmost_good_branch(t: &RegularTree) -> Result<BranchLasso> {
    let good = good_from(t);
    if !good[t.root()] {
        return Err(Error::Precondition("the tree has no good branch".into()));
    }
    let mut first_visit = vec![usize::MAX; t.len()];
    let mut dirs = Vec::new();
    let mut x = t.root();
    while first_visit[x] == usize::MAX {
        first_visit[x] = dirs.len();
        let node = t.node(x);
        let d = if good[node.left] { Dir::L } else { Dir::R };
        dirs.push(d);
        x = node.child(d);
    }
    let cycle = dirs.split_off(first_visit[x]);
    let lasso = BranchLasso::new(dirs, cycle)?;

    let steps = lasso.prefix().len() + lasso.cycle().len();
    let nodes = t.walk(&lasso, steps);
    let all_a = nodes.iter().all(|&y| t.symbol(y) == "a");
    let left_clear = (0..steps).all(|i| lasso.dir_at(i) == Dir::L || !good[t.node(nodes[i]).left]);
    if !all_a || !lasso.left_turn_in_cycle() || !left_clear {
        return Err(Error::Internal("greedy walk did not produce the leftmost good branch".into()));
    }
    Ok(lasso.normalized())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShapeReason {
    Ok,
    InfiniteRightFormulaBranch,
    StuckLeftNonVee,
}

impl std::fmt::Display for ShapeReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ShapeReason::Ok => "ok",
            ShapeReason::InfiniteRightFormulaBranch => "infinite-right-formula-branch",
            ShapeReason::StuckLeftNonVee => "stuck-left-nonvee",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShapeWitness {
    Branch(BranchLasso),
    /// Path from the root to the offending left child.
    Path(Path),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeVerdict {
    pub well_shaped: bool,
    pub reason: ShapeReason,
    pub witness: Option<ShapeWitness>,
}

fn is_formula(t: &RegularTree, x: usize) -> bool {
    matches!(t.symbol(x), "or" | "neg")
}

/// Moves allowed on a formula branch: both children of `or`, the right
/// child of `neg`, and only into formula nodes.
fn formula_moves(t: &RegularTree, x: usize) -> Vec<(Dir, usize)> {
    let node = t.node(x);
    let dirs: &[Dir] = match t.symbol(x) {
        "or" => &[Dir::L, Dir::R],
        "neg" => &[Dir::R],
        _ => &[],
    };
    dirs.iter()
        .map(|&d| (d, node.child(d)))
        .filter(|&(_, y)| is_formula(t, y))
        .collect()
}

/// Breadth-first search over formula moves from `from`, restricted to
/// `allowed`. Returns parent links `(previous node, direction)`.
fn formula_bfs(t: &RegularTree, from: usize, allowed: &[bool]) -> Vec<Option<(usize, Dir)>> {
    let mut parent = vec![None; t.len()];
    let mut seen = vec![false; t.len()];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        for (d, y) in formula_moves(t, x) {
            if allowed[y] && !seen[y] {
                seen[y] = true;
                parent[y] = Some((x, d));
                queue.push_back(y);
            }
        }
    }
    parent
}

fn path_to(parent: &[Option<(usize, Dir)>], from: usize, mut to: usize) -> Vec<Dir> {
    let mut dirs = Vec::new();
    while to != from {
        let (x, d) = parent[to].expect("target was reached by the search");
        dirs.push(d);
        to = x;
    }
    dirs.reverse();
    dirs
}

pub fn shape_check(t: &RegularTree) -> ShapeVerdict {
    let ok = ShapeVerdict {
        well_shaped: true,
        reason: ShapeReason::Ok,
        witness: None,
    };
    let root = t.root();
    if !is_formula(t, root) {
        return ok;
    }
    let everywhere = vec![true; t.len()];
    let parent = formula_bfs(t, root, &everywhere);
    let reached: Vec<bool> = (0..t.len()).map(|x| x == root || parent[x].is_some()).collect();

    for x in 0..t.len() {
        if reached[x] && t.symbol(x) == "or" && t.symbol(t.node(x).left) != "or" {
            let mut dirs = path_to(&parent, root, x);
            dirs.push(Dir::L);
            return ShapeVerdict {
                well_shaped: false,
                reason: ShapeReason::StuckLeftNonVee,
                witness: Some(ShapeWitness::Path(Path(dirs))),
            };
        }
    }

    let succ: Vec<Vec<usize>> = (0..t.len())
        .map(|x| {
            if reached[x] {
                formula_moves(t, x).into_iter().map(|(_, y)| y).collect()
            } else {
                Vec::new()
            }
        })
        .collect();
    for comp in graph::cyclic_components(&succ, &reached) {
        let mut inside = vec![false; t.len()];
        for &x in &comp {
            inside[x] = true;
        }
        let Some(&x) = comp.iter().find(|&&x| {
            let y = t.node(x).right;
            inside[y] && formula_moves(t, x).contains(&(Dir::R, y))
        }) else {
            continue;
        };
        // prefix: root to x; cycle: right step, then back to x inside the component
        let prefix = path_to(&parent, root, x);
        let y = t.node(x).right;
        let back = formula_bfs(t, y, &inside);
        let mut cycle = vec![Dir::R];
        cycle.extend(path_to(&back, y, x));
        let lasso = BranchLasso::new(prefix, cycle).expect("cycle has a right step");
        return ShapeVerdict {
            well_shaped: false,
            reason: ShapeReason::InfiniteRightFormulaBranch,
            witness: Some(ShapeWitness::Branch(lasso.normalized())),
        };
    }
    ok
}

/// Graph nodes on the left spine starting at `x` (all labelled `or` in a
/// well-shaped tree), each once.
fn left_spine(t: &RegularTree, x: usize) -> Vec<usize> {
    let mut spine = vec![x];
    let mut y = t.node(x).left;
    while !spine.contains(&y) {
        spine.push(y);
        y = t.node(y).left;
    }
    spine
}

/// Memoized recursion over formula nodes. `atom` gives the value at a non
/// formula node, `neg` combines the argument's value, `or` the disjuncts'.
fn fold_formula<T: Clone>(
    t: &RegularTree,
    atom: &dyn Fn(usize) -> T,
    neg: &dyn Fn(T) -> T,
    or: &dyn Fn(Vec<T>) -> T,
) -> Result<T> {
    let verdict = shape_check(t);
    if !verdict.well_shaped {
        return Err(Error::Precondition(format!("the tree is not well shaped ({})", verdict.reason)));
    }
    let mut memo: Vec<Option<T>> = vec![None; t.len()];
    let mut active = vec![false; t.len()];
    fold_at(t, t.root(), atom, neg, or, &mut memo, &mut active)
}

#[allow(clippy::too_many_arguments)]
fn fold_at<T: Clone>(
    t: &RegularTree,
    x: usize,
    atom: &dyn Fn(usize) -> T,
    neg: &dyn Fn(T) -> T,
    or: &dyn Fn(Vec<T>) -> T,
    memo: &mut Vec<Option<T>>,
    active: &mut Vec<bool>,
) -> Result<T> {
    if let Some(v) = &memo[x] {
        return Ok(v.clone());
    }
    if active[x] {
        return Err(Error::Internal("formula recursion is cyclic on a well-shaped tree".into()));
    }
    active[x] = true;
    let v = match t.symbol(x) {
        "neg" => neg(fold_at(t, t.node(x).right, atom, neg, or, memo, active)?),
        "or" => {
            let mut parts = Vec::new();
            for y in left_spine(t, x) {
                parts.push(fold_at(t, t.node(y).right, atom, neg, or, memo, active)?);
            }
            or(parts)
        }
        _ => atom(x),
    };
    active[x] = false;
    memo[x] = Some(v.clone());
    Ok(v)
}

pub fn formula_rank(t: &RegularTree) -> Result<u32> {
    fold_formula(
        t,
        &|_| 0,
        &|r| r + 1,
        &|rs| rs.into_iter().max().unwrap_or(0) + 1,
    )
}

pub fn eval_formula(t: &RegularTree) -> Result<bool> {
    let good = good_from(t);
    fold_formula(t, &|x| good[x], &|v| !v, &|vs| vs.into_iter().any(|v| v))
}
