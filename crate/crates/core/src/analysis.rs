//! Decision procedures: membership, emptiness and ambiguity.
//!
//! Membership of a regular tree is decided by the acceptance game. Its
//! Protagonist vertices are pairs `(tree node, state)` where she picks a
//! transition for the node's label. Its Antagonist vertices are pairs
//! `(tree node, transition)` where he picks a direction. Acceptance depends
//! only on the subtree, and the subtree only on the graph node, so graph
//! nodes suffice and the game is finite.
//!
//! Emptiness is decided by the emptiness game, where the Protagonist picks
//! a letter together with a transition and the Antagonist a direction. A
//! winning strategy with finite memory unfolds into a regular witness tree.
//!
//! Priorities of Protagonist vertices are the state priorities (a vector for
//! products). Antagonist vertices carry priority 0 in every coordinate, which
//! never decides a cycle because every cycle also passes a state vertex.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use crate::automata::{ambiguity_product, ParityTreeAutomaton, ProductAutomaton, ProductState, Transition, TreeAcceptor};
use crate::error::{Error, Result};
use crate::games::{GeneralizedParityGame, IarSolver, Player, SolverChoice, SolverRegistry, Strategy};
use crate::graph;
use crate::tree::{symbol_map, BranchLasso, Dir, Path, RegularTree, TreeNode};

/// A run of an automaton on a regular tree, as a finite graph.
///
/// Node `i` labels tree node `tree_node` with `state`. Several run nodes may
/// share a tree node and state when the run behaves differently below
/// them; `memory` tells them apart. Node 0 is the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunGraph {
    pub nodes: Vec<RunNode>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunNode {
    pub tree_node: usize,
    pub state: usize,
    pub memory: usize,
    /// Index into the automaton's transition list.
    pub transition: usize,
    pub left: usize,
    pub right: usize,
}

impl RunNode {
    pub fn child(&self, dir: Dir) -> usize {
        match dir {
            Dir::L => self.left,
            Dir::R => self.right,
        }
    }
}

impl RunGraph {
    pub fn root(&self) -> &RunNode {
        &self.nodes[0]
    }

    /// Listing with one line per run node: `(node,state) -> transition`.
    pub fn listing<A: TreeAcceptor + ?Sized>(&self, a: &A) -> String {
        let mut out = String::new();
        for n in &self.nodes {
            let mem = if n.memory == 0 {
                String::new()
            } else {
                format!("[{}]", n.memory)
            };
            let _ = writeln!(
                out,
                "({},{}){} -> {}",
                n.tree_node,
                a.state_name(n.state),
                mem,
                show_transition(a, &a.transitions()[n.transition])
            );
        }
        out
    }
}

pub fn show_transition<A: TreeAcceptor + ?Sized>(a: &A, t: &Transition) -> String {
    format!(
        "({}, {}, {}, {})",
        a.state_name(t.source),
        a.alphabet()[t.symbol],
        a.state_name(t.left),
        a.state_name(t.right)
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Tree(RegularTree),
    Run(RunGraph),
    /// Two distinct accepting runs on `tree`. They first differ at `split`.
    Ambiguity {
        tree: RegularTree,
        runs: Box<[RunGraph; 2]>,
        split: Path,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub answer: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    fn bare(answer: bool) -> Self {
        Verdict { answer, witness: None }
    }

    /// Plain-text report. `a` names the states of the runs in the witness.
    pub fn report<A: TreeAcceptor + ?Sized>(&self, a: &A) -> String {
        let mut out = format!("answer {}\n", if self.answer { "yes" } else { "no" });
        match &self.witness {
            None => {}
            Some(Witness::Tree(t)) => {
                out.push_str("witness-tree\n");
                out.push_str(&t.to_string());
            }
            Some(Witness::Run(r)) => {
                out.push_str("run\n");
                out.push_str(&r.listing(a));
            }
            Some(Witness::Ambiguity { tree, runs, split }) => {
                out.push_str("witness-tree\n");
                out.push_str(&tree.to_string());
                let _ = writeln!(out, "split {split}");
                for (i, r) in runs.iter().enumerate() {
                    let _ = writeln!(out, "run {}", i + 1);
                    out.push_str(&r.listing(a));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Vertex {
    State { node: usize, state: usize },
    Move { node: usize, transition: usize },
}

struct Arena {
    game: GeneralizedParityGame,
    kinds: Vec<Vertex>,
    index: HashMap<Vertex, usize>,
}

impl Arena {
    fn new(dimension: usize) -> Self {
        Arena {
            game: GeneralizedParityGame::new(dimension).expect("dimension is 1 or 2"),
            kinds: Vec::new(),
            index: HashMap::new(),
        }
    }

    /// Looks up or adds a vertex; returns its id and whether it is new.
    fn vertex(&mut self, kind: Vertex, owner: Player, prio: &[u32]) -> Result<(usize, bool)> {
        if let Some(&v) = self.index.get(&kind) {
            return Ok((v, false));
        }
        let v = self.game.add_vertex(owner, prio)?;
        self.kinds.push(kind);
        self.index.insert(kind, v);
        Ok((v, true))
    }
}

/// Solver configuration shared by the decision procedures.
pub struct Analyzer {
    registry: SolverRegistry,
    choice: SolverChoice,
}

impl Default for Analyzer {
    /// The default solvers. Only Protagonist strategies are ever used
    /// here, so `iar` skips the Antagonist's.
    fn default() -> Self {
        let mut registry = SolverRegistry::default();
        registry.register(Box::new(IarSolver { protagonist_only: true }));
        Analyzer {
            registry,
            choice: SolverChoice::default(),
        }
    }
}

impl Analyzer {
    pub fn new(registry: SolverRegistry, choice: SolverChoice) -> Result<Self> {
        registry.get(&choice.parity)?;
        registry.get(&choice.conjunction)?;
        Ok(Analyzer { registry, choice })
    }

    pub fn registry(&self) -> &SolverRegistry {
        &self.registry
    }

    /// Solves `game` and returns the Protagonist's winning flags and her
    /// strategy.
    fn solve(&self, game: &GeneralizedParityGame) -> Result<(Vec<bool>, Strategy)> {
        let solution = self.choice.solve(&self.registry, game)?;
        let name = match game.dimension() {
            1 => &self.choice.parity,
            _ => &self.choice.conjunction,
        };
        let strategy = solution
            .strategy(Player::Protagonist)
            .cloned()
            .ok_or_else(|| Error::NoStrategy(name.clone()))?;
        let won = solution.winner.iter().map(|&w| w == Player::Protagonist).collect();
        Ok((won, strategy))
    }

    pub fn member<A: TreeAcceptor + ?Sized>(&self, a: &A, t: &RegularTree) -> Result<Verdict> {
        let labels = symbol_map(t.alphabet(), a.alphabet())?;
        let arena = membership_game(a, t, &labels)?;
        let (won, strategy) = self.solve(&arena.game)?;
        if !won[0] {
            return Ok(Verdict::bare(false));
        }
        let run = extract_run(a, t, &arena, &strategy)?;
        if !verify_run(a, t, &run) {
            return Err(Error::Internal("extracted run does not verify".into()));
        }
        Ok(Verdict {
            answer: true,
            witness: Some(Witness::Run(run)),
        })
    }

    /// Membership answer only.
    pub fn accepts<A: TreeAcceptor + ?Sized>(&self, a: &A, t: &RegularTree) -> Result<bool> {
        let labels = symbol_map(t.alphabet(), a.alphabet())?;
        let arena = membership_game(a, t, &labels)?;
        let solution = self.choice.solve(&self.registry, &arena.game)?;
        Ok(solution.winner[0] == Player::Protagonist)
    }

    /// `answer` is true when the language is empty. A nonempty language
    /// comes with a witness tree that the automaton accepts.
    pub fn empty<A: TreeAcceptor + ?Sized>(&self, a: &A) -> Result<Verdict> {
        let arena = emptiness_game(a)?;
        let (won, strategy) = self.solve(&arena.game)?;
        if !won[0] {
            return Ok(Verdict::bare(true));
        }
        let tree = extract_tree(a, &arena, &strategy)?;
        if !self.accepts(a, &tree)? {
            return Err(Error::Internal("emptiness witness is rejected".into()));
        }
        Ok(Verdict {
            answer: false,
            witness: Some(Witness::Tree(tree)),
        })
    }

    /// `answer` is true when no tree has two distinct accepting runs.
    pub fn is_unambiguous(&self, a: &ParityTreeAutomaton) -> Result<Verdict> {
        let product = ambiguity_product(a);
        let verdict = self.empty(&product)?;
        let Some(Witness::Tree(tree)) = verdict.witness else {
            return Ok(Verdict::bare(true));
        };
        let witness = self.two_runs(a, &product, &tree)?;
        Ok(Verdict {
            answer: false,
            witness: Some(witness),
        })
    }

    /// `answer` is true when `a` has at least two accepting runs on `t`.
    pub fn ambiguous_on(&self, a: &ParityTreeAutomaton, t: &RegularTree) -> Result<Verdict> {
        symbol_map(t.alphabet(), a.alphabet())?;
        let product = ambiguity_product(a);
        if !self.accepts(&product, t)? {
            return Ok(Verdict::bare(false));
        }
        let witness = self.two_runs(a, &product, t)?;
        Ok(Verdict {
            answer: true,
            witness: Some(witness),
        })
    }

    fn two_runs(&self, a: &ParityTreeAutomaton, product: &ProductAutomaton, t: &RegularTree) -> Result<Witness> {
        let Some(Witness::Run(run)) = self.member(product, t)?.witness else {
            return Err(Error::Internal("ambiguity witness is rejected by the product".into()));
        };
        let runs = [project(product, &run, 0), project(product, &run, 1)];
        for r in &runs {
            if !verify_run(a, t, r) {
                return Err(Error::Internal("projected run does not verify".into()));
            }
        }
        let split = first_difference(&runs[0], &runs[1])
            .ok_or_else(|| Error::Internal("projected runs coincide".into()))?;
        Ok(Witness::Ambiguity {
            tree: t.clone(),
            runs: Box::new(runs),
            split,
        })
    }

    /// The branch followed by the tracking states in the unique accepting
    /// run of `a` on `t`, e.g. the `g` states of the automaton for good
    /// branches.
    pub fn unique_run_trace(&self, a: &ParityTreeAutomaton, t: &RegularTree, tracking: &[&str]) -> Result<BranchLasso> {
        let tracked: Vec<bool> = a.states().iter().map(|s| tracking.contains(&s.as_str())).collect();
        let Some(Witness::Run(run)) = self.member(a, t)?.witness else {
            return Err(Error::Precondition("the tree is not accepted".into()));
        };
        if self.ambiguous_on(a, t)?.answer {
            return Err(Error::Precondition("the automaton has several accepting runs on the tree".into()));
        }
        let mut x = 0;
        if !tracked[run.nodes[x].state] {
            return Err(Error::Precondition("the run does not start in a tracking state".into()));
        }
        let mut seen: HashMap<usize, usize> = HashMap::new();
        let mut dirs = Vec::new();
        while !seen.contains_key(&x) {
            seen.insert(x, dirs.len());
            let n = &run.nodes[x];
            let next: Vec<Dir> = [Dir::L, Dir::R]
                .into_iter()
                .filter(|&d| tracked[run.nodes[n.child(d)].state])
                .collect();
            let [d] = next[..] else {
                return Err(Error::Precondition(format!(
                    "tracking states do not form a single branch at run node {x}"
                )));
            };
            dirs.push(d);
            x = n.child(d);
        }
        let start = seen[&x];
        let cycle = dirs.split_off(start);
        Ok(BranchLasso::new(dirs, cycle)?.normalized())
    }
}

fn membership_game<A: TreeAcceptor + ?Sized>(a: &A, t: &RegularTree, labels: &[usize]) -> Result<Arena> {
    let d = a.dimension();
    let neutral = vec![0; d];
    let mut arena = Arena::new(d);
    let start = Vertex::State {
        node: t.root(),
        state: a.initial(),
    };
    arena.vertex(start, Player::Protagonist, &a.priority(a.initial()))?;
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        let Vertex::State { node, state } = arena.kinds[v] else {
            unreachable!("only state vertices are queued")
        };
        let tn = t.node(node);
        for &i in a.transitions_from(state, labels[tn.label]) {
            let (m, _) = arena.vertex(Vertex::Move { node, transition: i }, Player::Antagonist, &neutral)?;
            arena.game.add_edge(v, m)?;
            let tr = a.transitions()[i];
            for (child, q) in [(tn.left, tr.left), (tn.right, tr.right)] {
                let (w, fresh) = arena.vertex(Vertex::State { node: child, state: q }, Player::Protagonist, &a.priority(q))?;
                arena.game.add_edge(m, w)?;
                if fresh {
                    queue.push_back(w);
                }
            }
        }
    }
    Ok(arena)
}

fn emptiness_game<A: TreeAcceptor + ?Sized>(a: &A) -> Result<Arena> {
    let d = a.dimension();
    let neutral = vec![0; d];
    let mut arena = Arena::new(d);
    let start = Vertex::State {
        node: 0,
        state: a.initial(),
    };
    arena.vertex(start, Player::Protagonist, &a.priority(a.initial()))?;
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        let Vertex::State { state, .. } = arena.kinds[v] else {
            unreachable!("only state vertices are queued")
        };
        for sym in 0..a.alphabet().len() {
            for &i in a.transitions_from(state, sym) {
                let (m, _) = arena.vertex(Vertex::Move { node: 0, transition: i }, Player::Antagonist, &neutral)?;
                arena.game.add_edge(v, m)?;
                let tr = a.transitions()[i];
                for q in [tr.left, tr.right] {
                    let (w, fresh) = arena.vertex(Vertex::State { node: 0, state: q }, Player::Protagonist, &a.priority(q))?;
                    arena.game.add_edge(m, w)?;
                    if fresh {
                        queue.push_back(w);
                    }
                }
            }
        }
    }
    Ok(arena)
}

/// Follows the strategy from vertex 0 and returns, per reached `(state
/// vertex, memory)`, the chosen transition and the two child keys.
#[allow(clippy::type_complexity)]
fn unfold_strategy<A: TreeAcceptor + ?Sized>(
    a: &A,
    arena: &Arena,
    strategy: &Strategy,
    child_node: impl Fn(usize, Dir) -> usize,
) -> Result<Vec<((usize, usize), usize, [usize; 2])>> {
    let mem = &strategy.memory;
    let broken = || Error::Internal("winning strategy is undefined on a reachable vertex".into());
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut keys = vec![(0, mem.initial())];
    index.insert(keys[0], 0);
    let mut out = Vec::new();
    let mut i = 0;
    while i < keys.len() {
        let (v, m) = keys[i];
        i += 1;
        let w = strategy.choose(v, m).ok_or_else(broken)?;
        let Vertex::Move { node, transition } = arena.kinds[w] else {
            return Err(broken());
        };
        let m1 = mem.update(m, v).ok_or_else(broken)?;
        let m2 = mem.update(m1, w).ok_or_else(broken)?;
        let tr = a.transitions()[transition];
        let mut children = [0; 2];
        for (slot, (dir, q)) in [(Dir::L, tr.left), (Dir::R, tr.right)].into_iter().enumerate() {
            let target = Vertex::State {
                node: child_node(node, dir),
                state: q,
            };
            let u = *arena.index.get(&target).ok_or_else(broken)?;
            children[slot] = *index.entry((u, m2)).or_insert_with(|| {
                keys.push((u, m2));
                keys.len() - 1
            });
        }
        out.push(((v, m), transition, children));
    }
    Ok(out)
}

fn extract_run<A: TreeAcceptor + ?Sized>(a: &A, t: &RegularTree, arena: &Arena, strategy: &Strategy) -> Result<RunGraph> {
    let steps = unfold_strategy(a, arena, strategy, |node, d| t.node(node).child(d))?;
    let nodes = steps
        .into_iter()
        .map(|((v, m), transition, [left, right])| {
            let Vertex::State { node, state } = arena.kinds[v] else {
                unreachable!("unfolding visits state vertices")
            };
            RunNode {
                tree_node: node,
                state,
                memory: m,
                transition,
                left,
                right,
            }
        })
        .collect();
    Ok(RunGraph { nodes })
}

fn extract_tree<A: TreeAcceptor + ?Sized>(a: &A, arena: &Arena, strategy: &Strategy) -> Result<RegularTree> {
    let steps = unfold_strategy(a, arena, strategy, |_, _| 0)?;
    let nodes = steps
        .into_iter()
        .map(|(_, transition, [left, right])| TreeNode {
            label: a.transitions()[transition].symbol,
            left,
            right,
        })
        .collect();
    Ok(RegularTree::new(a.alphabet().to_vec(), nodes, 0)?.pruned())
}

/// Projects a run of the ambiguity product to one of its two copies.
fn project(product: &ProductAutomaton, run: &RunGraph, side: usize) -> RunGraph {
    let nodes = run
        .nodes
        .iter()
        .enumerate()
        .map(|(i, n)| {
            let state = match product.state(n.state) {
                ProductState::Seek(q) | ProductState::Single(q) => q,
                ProductState::Pair(p, q) => [p, q][side],
            };
            let (t1, t2) = product.origin(n.transition);
            RunNode {
                state,
                memory: i,
                transition: [t1, t2][side],
                ..*n
            }
        })
        .collect();
    RunGraph { nodes }
}

/// Shortest tree position where two runs on the same tree assign different
/// states, if any.
pub fn first_difference(r1: &RunGraph, r2: &RunGraph) -> Option<Path> {
    let mut seen: HashMap<(usize, usize), ()> = HashMap::new();
    let mut queue = VecDeque::from([(0, 0, Vec::new())]);
    seen.insert((0, 0), ());
    while let Some((x, y, path)) = queue.pop_front() {
        let (n, m) = (&r1.nodes[x], &r2.nodes[y]);
        if n.state != m.state {
            return Some(Path(path));
        }
        for d in [Dir::L, Dir::R] {
            let key = (n.child(d), m.child(d));
            if seen.insert(key, ()).is_none() {
                let mut p = path.clone();
                p.push(d);
                queue.push_back((key.0, key.1, p));
            }
        }
    }
    None
}

/// Checks that `r` is a run of `a` on `t` and that it is accepting.
///
/// Local consistency is checked at every run node. A branch of the run
/// eventually cycles through a strongly connected part of the run graph,
/// so every branch satisfies parity iff every cycle of the graph has an
/// even maximum in every coordinate.
pub fn verify_run<A: TreeAcceptor + ?Sized>(a: &A, t: &RegularTree, r: &RunGraph) -> bool {
    let Ok(labels) = symbol_map(t.alphabet(), a.alphabet()) else {
        return false;
    };
    let Some(root) = r.nodes.first() else {
        return false;
    };
    if root.tree_node != t.root() || root.state != a.initial() {
        return false;
    }
    let ts = a.transitions();
    for n in &r.nodes {
        if n.tree_node >= t.len() || n.transition >= ts.len() || n.left >= r.nodes.len() || n.right >= r.nodes.len() {
            return false;
        }
        let tr = ts[n.transition];
        let tn = t.node(n.tree_node);
        let (l, rr) = (&r.nodes[n.left], &r.nodes[n.right]);
        let consistent = tr.source == n.state
            && tr.symbol == labels[tn.label]
            && l.tree_node == tn.left
            && l.state == tr.left
            && rr.tree_node == tn.right
            && rr.state == tr.right;
        if !consistent {
            return false;
        }
    }
    let succ: Vec<Vec<usize>> = r.nodes.iter().map(|n| vec![n.left, n.right]).collect();
    (0..a.dimension()).all(|c| {
        let prio: Vec<u32> = r.nodes.iter().map(|n| a.priority(n.state)[c]).collect();
        graph::every_cycle_max_has_parity(&succ, &prio, 0)
    })
}

pub fn member<A: TreeAcceptor + ?Sized>(a: &A, t: &RegularTree) -> Result<Verdict> {
    Analyzer::default().member(a, t)
}

pub fn empty<A: TreeAcceptor + ?Sized>(a: &A) -> Result<Verdict> {
    Analyzer::default().empty(a)
}

pub fn is_unambiguous(a: &ParityTreeAutomaton) -> Result<Verdict> {
    Analyzer::default().is_unambiguous(a)
}

pub fn ambiguous_on(a: &ParityTreeAutomaton, t: &RegularTree) -> Result<Verdict> {
    Analyzer::default().ambiguous_on(a, t)
}

pub fn unique_run_trace(a: &ParityTreeAutomaton, t: &RegularTree, tracking: &[&str]) -> Result<BranchLasso> {
    Analyzer::default().unique_run_trace(a, t, tracking)
}
