//! Product constructions.
//!
//! # Conjunction product
//!
//! Runs both automata in lockstep. A product state carries the priority
//! vector `(rank_A, rank_B)` and a product run is accepting when the parity
//! condition holds in both coordinates on every branch, so the product
//! recognises `L(A) ∩ L(B)`.
//!
//! # Ambiguity product
//!
//! Decides whether some tree has two distinct accepting runs. States come in
//! three modes:
//!
//! * `seek(q)`: the single node of the current level where the two runs are
//!   still identical *and* a split is still owed. From here the product
//!   either keeps seeking in one child (the other child switches to
//!   `single`) or splits.
//! * `single(q)`: one copy of `A`; both runs agree on this whole subtree.
//! * `pair(p, q)`: two copies of `A` running side by side.
//!
//! A split at `seek(q)` on letter `a` picks two *distinct* transitions
//! `(q,a,l1,r1) ≠ (q,a,l2,r2)` and continues with `pair(l1,l2)` and
//! `pair(r1,r2)`. `seek` states have priority `(1,1)`, so a branch that
//! seeks forever rejects and every accepting product run splits exactly
//! once. `single(q)` has priority `(rank q, rank q)` and `pair(p,q)` has
//! `(rank p, rank q)`.
//!
//! **Soundness.** Projecting an accepting product run to the first and to
//! the second components gives two runs of `A`. Each is accepting because
//! every branch satisfies parity in its coordinate. They differ at a child
//! of the split node, since the two transitions there share their source
//! state and letter and hence differ in a child state.
//!
//! **Completeness (single-split normal form).** Let `ρ1 ≠ ρ2` be accepting
//! runs on `t`. Pick a shortest node `v` with `ρ1(v) ≠ ρ2(v)`; it is not the
//! root, so its parent `u` has `ρ1(u) = ρ2(u)` but the runs use different
//! transitions at `u`. Let `ρ2'` agree with `ρ1` outside the subtree of `u`
//! and with `ρ2` inside it. It is a run because the two agree at `u`, and it
//! is accepting because every branch eventually stays inside or outside that
//! subtree and inherits an accepting tail. The product then seeks along the
//! path to `u`, uses `single` states following `ρ1` off that path, splits at
//! `u` with the transitions of `ρ1` and `ρ2`, and continues with pairs below.
//! Every branch sees `seek` finitely often, so the product run accepts.
//!
//! # Disjoint union
//!
//! States of both automata are renamed apart and a fresh initial state takes
//! over the transitions of both original initial states. Runs of the union
//! are exactly runs of one of the parts. The fresh state only labels the
//! root, so its rank does not influence acceptance.

use std::fmt;

use super::{index_transitions, ParityTreeAutomaton, Transition, TreeAcceptor};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProductState {
    /// Conjunction product component pair, or a `pair` state of the
    /// ambiguity product.
    Pair(usize, usize),
    Seek(usize),
    Single(usize),
}

/// An automaton whose states carry a priority vector of length 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductAutomaton {
    alphabet: Vec<String>,
    states: Vec<ProductState>,
    names: Vec<String>,
    priorities: Vec<[u32; 2]>,
    initial: usize,
    transitions: Vec<Transition>,
    /// Per transition, the factor transitions it pairs (indices into the
    /// first and second factor's transition lists).
    origin: Vec<(usize, usize)>,
    by_source: Vec<Vec<usize>>,
}

impl ProductAutomaton {
    pub fn states(&self) -> &[ProductState] {
        &self.states
    }

    pub fn state(&self, q: usize) -> ProductState {
        self.states[q]
    }

    pub fn priorities(&self, q: usize) -> [u32; 2] {
        self.priorities[q]
    }

    /// The pair of factor transitions a product transition was built from.
    pub fn origin(&self, transition: usize) -> (usize, usize) {
        self.origin[transition]
    }

    fn assemble(
        alphabet: Vec<String>,
        states: Vec<ProductState>,
        names: Vec<String>,
        priorities: Vec<[u32; 2]>,
        initial: usize,
        mut tagged: Vec<(Transition, (usize, usize))>,
    ) -> Self {
        tagged.sort();
        tagged.dedup();
        let (transitions, origin): (Vec<_>, Vec<_>) = tagged.into_iter().unzip();
        let by_source = index_transitions(states.len(), alphabet.len(), &transitions);
        ProductAutomaton {
            alphabet,
            states,
            names,
            priorities,
            initial,
            transitions,
            origin,
            by_source,
        }
    }
}

impl TreeAcceptor for ProductAutomaton {
    fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    fn state_count(&self) -> usize {
        self.states.len()
    }

    fn state_name(&self, q: usize) -> &str {
        &self.names[q]
    }

    fn initial(&self) -> usize {
        self.initial
    }

    fn dimension(&self) -> usize {
        2
    }

    fn priority(&self, q: usize) -> Vec<u32> {
        self.priorities[q].to_vec()
    }

    fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    fn transitions_from(&self, q: usize, symbol: usize) -> &[usize] {
        &self.by_source[q * self.alphabet.len() + symbol]
    }
}

impl fmt::Display for ProductAutomaton {
    /// Informational listing; products are not read back.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "alphabet {}", self.alphabet.join(" "))?;
        for (q, name) in self.names.iter().enumerate() {
            let [p0, p1] = self.priorities[q];
            write!(f, "state {name} pri {p0},{p1}")?;
            if q == self.initial {
                f.write_str(" initial")?;
            }
            writeln!(f)?;
        }
        for t in &self.transitions {
            writeln!(
                f,
                "trans {} {} {} {}",
                self.names[t.source], self.alphabet[t.symbol], self.names[t.left], self.names[t.right]
            )?;
        }
        Ok(())
    }
}

fn same_alphabet(a: &ParityTreeAutomaton, b: &ParityTreeAutomaton) -> Result<Vec<usize>> {
    let (sa, sb) = (a.alphabet(), b.alphabet());
    if sa.len() != sb.len() || sa.iter().any(|s| !sb.contains(s)) {
        return Err(Error::AlphabetMismatch(format!(
            "[{}] vs [{}]",
            sa.join(" "),
            sb.join(" ")
        )));
    }
    // symbol of `a` -> symbol of `b`
    Ok(sa.iter().map(|s| sb.iter().position(|x| x == s).unwrap()).collect())
}

pub fn conjunction_product(a: &ParityTreeAutomaton, b: &ParityTreeAutomaton) -> Result<ProductAutomaton> {
    let sym_b = same_alphabet(a, b)?;
    let (na, nb) = (a.state_count(), b.state_count());
    let id = |p: usize, q: usize| p * nb + q;
    let mut states = Vec::with_capacity(na * nb);
    let mut names = Vec::with_capacity(na * nb);
    let mut priorities = Vec::with_capacity(na * nb);
    for p in 0..na {
        for q in 0..nb {
            states.push(ProductState::Pair(p, q));
            names.push(format!("({},{})", a.state_name(p), b.state_name(q)));
            priorities.push([a.rank(p), b.rank(q)]);
        }
    }
    let mut tagged = Vec::new();
    for p in 0..na {
        for q in 0..nb {
            for (sym, &sym_in_b) in sym_b.iter().enumerate() {
                for &ta in a.transitions_from(p, sym) {
                    for &tb in b.transitions_from(q, sym_in_b) {
                        let (x, y) = (a.transitions()[ta], b.transitions()[tb]);
                        tagged.push((
                            Transition {
                                source: id(p, q),
                                symbol: sym,
                                left: id(x.left, y.left),
                                right: id(x.right, y.right),
                            },
                            (ta, tb),
                        ));
                    }
                }
            }
        }
    }
    Ok(ProductAutomaton::assemble(
        a.alphabet().to_vec(),
        states,
        names,
        priorities,
        id(a.initial(), b.initial()),
        tagged,
    ))
}

/// Priority of `seek` states in the ambiguity product.
pub const SEEK_PRIORITY: [u32; 2] = [1, 1];

pub fn ambiguity_product(a: &ParityTreeAutomaton) -> ProductAutomaton {
    let n = a.state_count();
    let seek = |q: usize| q;
    let single = |q: usize| n + q;
    let pair = |p: usize, q: usize| 2 * n + p * n + q;

    let mut states = Vec::with_capacity(2 * n + n * n);
    let mut names = Vec::with_capacity(2 * n + n * n);
    let mut priorities = Vec::with_capacity(2 * n + n * n);
    for q in 0..n {
        states.push(ProductState::Seek(q));
        names.push(format!("seek({})", a.state_name(q)));
        priorities.push(SEEK_PRIORITY);
    }
    for q in 0..n {
        states.push(ProductState::Single(q));
        names.push(format!("single({})", a.state_name(q)));
        priorities.push([a.rank(q), a.rank(q)]);
    }
    for p in 0..n {
        for q in 0..n {
            states.push(ProductState::Pair(p, q));
            names.push(format!("pair({},{})", a.state_name(p), a.state_name(q)));
            priorities.push([a.rank(p), a.rank(q)]);
        }
    }

    let ts = a.transitions();
    let mut tagged = Vec::new();
    for q in 0..n {
        for sym in 0..a.alphabet().len() {
            let out = a.transitions_from(q, sym);
            for &i in out {
                let t = ts[i];
                let mk = |source, left, right| Transition {
                    source,
                    symbol: sym,
                    left,
                    right,
                };
                tagged.push((mk(single(q), single(t.left), single(t.right)), (i, i)));
                tagged.push((mk(seek(q), seek(t.left), single(t.right)), (i, i)));
                tagged.push((mk(seek(q), single(t.left), seek(t.right)), (i, i)));
                for &j in out {
                    if i < j {
                        let u = ts[j];
                        tagged.push((mk(seek(q), pair(t.left, u.left), pair(t.right, u.right)), (i, j)));
                    }
                }
            }
        }
    }
    for p in 0..n {
        for q in 0..n {
            for sym in 0..a.alphabet().len() {
                for &i in a.transitions_from(p, sym) {
                    for &j in a.transitions_from(q, sym) {
                        let (t, u) = (ts[i], ts[j]);
                        tagged.push((
                            Transition {
                                source: pair(p, q),
                                symbol: sym,
                                left: pair(t.left, u.left),
                                right: pair(t.right, u.right),
                            },
                            (i, j),
                        ));
                    }
                }
            }
        }
    }
    ProductAutomaton::assemble(a.alphabet().to_vec(), states, names, priorities, seek(a.initial()), tagged)
}

/// Union of two automata over the same alphabet, with states renamed apart
/// as `1.<name>` and `2.<name>` and a fresh initial state `init`.
pub fn disjoint_union(a: &ParityTreeAutomaton, b: &ParityTreeAutomaton) -> Result<ParityTreeAutomaton> {
    let sym_b = same_alphabet(a, b)?;
    let mut sym_a_of_b = vec![0; sym_b.len()];
    for (sa, &sb) in sym_b.iter().enumerate() {
        sym_a_of_b[sb] = sa;
    }
    let (na, nb) = (a.state_count(), b.state_count());
    let mut states = vec!["init".to_string()];
    states.extend(a.states().iter().map(|s| format!("1.{s}")));
    states.extend(b.states().iter().map(|s| format!("2.{s}")));
    let mut ranks = vec![a.rank(a.initial())];
    ranks.extend_from_slice(a.ranks());
    ranks.extend_from_slice(b.ranks());

    let off_a = 1;
    let off_b = 1 + na;
    let mut transitions = Vec::new();
    for t in a.transitions() {
        let moved = Transition {
            source: t.source + off_a,
            symbol: t.symbol,
            left: t.left + off_a,
            right: t.right + off_a,
        };
        transitions.push(moved);
        if t.source == a.initial() {
            transitions.push(Transition { source: 0, ..moved });
        }
    }
    for t in b.transitions() {
        let moved = Transition {
            source: t.source + off_b,
            symbol: sym_a_of_b[t.symbol],
            left: t.left + off_b,
            right: t.right + off_b,
        };
        transitions.push(moved);
        if t.source == b.initial() {
            transitions.push(Transition { source: 0, ..moved });
        }
    }
    debug_assert_eq!(states.len(), 1 + na + nb);
    ParityTreeAutomaton::new(a.alphabet().to_vec(), states, ranks, 0, transitions)
}
