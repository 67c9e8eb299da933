//! Nondeterministic parity automata on infinite binary trees.
//!
//! A transition `(q, a, q1, q2)` lets a run in state `q` at an `a`-labelled
//! node send `q1` to the left child and `q2` to the right child. A run is
//! accepting when on every branch the highest rank seen infinitely often is
//! even. A missing transition means the run is stuck, which rejects.

mod product;

pub use product::{ambiguity_product, conjunction_product, disjoint_union, ProductAutomaton, ProductState};

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{parse_err, Error, Result};
use crate::text;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transition {
    pub source: usize,
    pub symbol: usize,
    pub left: usize,
    pub right: usize,
}

/// Anything that can be run top-down on a tree: plain parity automata and
/// products carrying a vector of priorities per state.
pub trait TreeAcceptor {
    fn alphabet(&self) -> &[String];
    fn state_count(&self) -> usize;
    fn state_name(&self, q: usize) -> &str;
    fn initial(&self) -> usize;
    /// Number of priority coordinates (1 for plain automata).
    fn dimension(&self) -> usize;
    fn priority(&self, q: usize) -> Vec<u32>;
    fn transitions(&self) -> &[Transition];
    /// Indices into [`TreeAcceptor::transitions`] leaving `q` on `symbol`.
    fn transitions_from(&self, q: usize, symbol: usize) -> &[usize];
}

/// Groups transition indices by `(source, symbol)`.
pub(crate) fn index_transitions(
    states: usize,
    symbols: usize,
    transitions: &[Transition],
) -> Vec<Vec<usize>> {
    let mut table = vec![Vec::new(); states * symbols];
    for (i, t) in transitions.iter().enumerate() {
        table[t.source * symbols + t.symbol].push(i);
    }
    table
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityTreeAutomaton {
    alphabet: Vec<String>,
    states: Vec<String>,
    ranks: Vec<u32>,
    initial: usize,
    transitions: Vec<Transition>,
    by_source: Vec<Vec<usize>>,
}

/// The rank range of an automaton, normalized so that `iota ∈ {0, 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AutomatonIndex {
    pub iota: u32,
    pub kappa: u32,
}

impl fmt::Display for AutomatonIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.iota, self.kappa)
    }
}

impl ParityTreeAutomaton {
    /// Builds an automaton, sorting and deduplicating the transitions.
    pub fn new(
        alphabet: Vec<String>,
        states: Vec<String>,
        ranks: Vec<u32>,
        initial: usize,
        mut transitions: Vec<Transition>,
    ) -> Result<Self> {
        if alphabet.is_empty() {
            return Err(Error::InvalidAutomaton("empty alphabet".into()));
        }
        if states.len() != ranks.len() {
            return Err(Error::InvalidAutomaton("rank must be given for every state".into()));
        }
        for names in [&alphabet, &states] {
            for (i, s) in names.iter().enumerate() {
                if !text::is_ident(s) {
                    return Err(Error::InvalidAutomaton(format!("bad identifier `{s}`")));
                }
                if names[..i].contains(s) {
                    return Err(Error::InvalidAutomaton(format!("duplicate name `{s}`")));
                }
            }
        }
        if initial >= states.len() {
            return Err(Error::InvalidAutomaton("initial state out of range".into()));
        }
        for t in &transitions {
            if t.source >= states.len() || t.left >= states.len() || t.right >= states.len() {
                return Err(Error::InvalidAutomaton("transition references an undeclared state".into()));
            }
            if t.symbol >= alphabet.len() {
                return Err(Error::InvalidAutomaton("transition references an undeclared symbol".into()));
            }
        }
        transitions.sort();
        transitions.dedup();
        let by_source = index_transitions(states.len(), alphabet.len(), &transitions);
        Ok(ParityTreeAutomaton {
            alphabet,
            states,
            ranks,
            initial,
            transitions,
            by_source,
        })
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn rank(&self, q: usize) -> u32 {
        self.ranks[q]
    }

    pub fn ranks(&self) -> &[u32] {
        &self.ranks
    }

    pub fn state_index(&self, name: &str) -> Result<usize> {
        self.states
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    }

    pub fn symbol_index(&self, sym: &str) -> Result<usize> {
        self.alphabet
            .iter()
            .position(|s| s == sym)
            .ok_or_else(|| Error::AlphabetMismatch(format!("unknown symbol `{sym}`")))
    }

    /// Deterministic iff every `(state, symbol)` has at most one transition.
    pub fn is_deterministic(&self) -> bool {
        self.by_source.iter().all(|ts| ts.len() <= 1)
    }

    pub fn index(&self) -> AutomatonIndex {
        let min = *self.ranks.iter().min().expect("automata have an initial state");
        let max = *self.ranks.iter().max().expect("automata have an initial state");
        let shift = min - min % 2;
        AutomatonIndex {
            iota: min - shift,
            kappa: max - shift,
        }
    }

    pub fn shift_ranks(&self, k: u32) -> Result<Self> {
        if !k.is_multiple_of(2) {
            return Err(Error::OddShift(k));
        }
        let mut out = self.clone();
        for r in &mut out.ranks {
            *r += k;
        }
        Ok(out)
    }

    /// The same automaton started from `state`.
    pub fn with_initial(&self, state: &str) -> Result<Self> {
        let q = self.state_index(state)?;
        let mut out = self.clone();
        out.initial = q;
        Ok(out)
    }

    /// Changes the ranks of the named states.
    pub fn with_ranks(&self, changes: &[(&str, u32)]) -> Result<Self> {
        let mut out = self.clone();
        for &(name, rank) in changes {
            let q = self.state_index(name)?;
            out.ranks[q] = rank;
        }
        Ok(out)
    }

    /// Extends the alphabet with `extra` symbols that behave exactly like
    /// `like`: every transition on `like` is copied to each new symbol.
    pub fn with_letters_like(&self, extra: &[&str], like: &str) -> Result<Self> {
        let base = self.symbol_index(like)?;
        let mut alphabet = self.alphabet.clone();
        let mut transitions = self.transitions.clone();
        for sym in extra {
            if alphabet.iter().any(|a| a == sym) {
                return Err(Error::AlphabetMismatch(format!("symbol `{sym}` already present")));
            }
            alphabet.push(sym.to_string());
            let id = alphabet.len() - 1;
            for t in self.transitions.iter().filter(|t| t.symbol == base) {
                transitions.push(Transition { symbol: id, ..*t });
            }
        }
        ParityTreeAutomaton::new(alphabet, self.states.clone(), self.ranks.clone(), self.initial, transitions)
    }

    /// Pretty form of a transition, `(q, a, q1, q2)`.
    pub fn show_transition(&self, t: &Transition) -> String {
        format!(
            "({}, {}, {}, {})",
            self.states[t.source], self.alphabet[t.symbol], self.states[t.left], self.states[t.right]
        )
    }
}

impl TreeAcceptor for ParityTreeAutomaton {
    fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    fn state_count(&self) -> usize {
        self.states.len()
    }

    fn state_name(&self, q: usize) -> &str {
        &self.states[q]
    }

    fn initial(&self) -> usize {
        self.initial
    }

    fn dimension(&self) -> usize {
        1
    }

    fn priority(&self, q: usize) -> Vec<u32> {
        vec![self.ranks[q]]
    }

    fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    fn transitions_from(&self, q: usize, symbol: usize) -> &[usize] {
        &self.by_source[q * self.alphabet.len() + symbol]
    }
}

/// Incremental construction by name, used for the hand-written fixtures.
#[derive(Debug, Default)]
pub struct AutomatonBuilder {
    alphabet: Vec<String>,
    states: Vec<(String, u32)>,
    initial: Option<String>,
    transitions: Vec<(String, String, String, String)>,
}

impl AutomatonBuilder {
    pub fn new(alphabet: &[&str]) -> Self {
        AutomatonBuilder {
            alphabet: alphabet.iter().map(|s| s.to_string()).collect(),
            ..Default::default()
        }
    }

    pub fn state(mut self, name: &str, rank: u32) -> Self {
        self.states.push((name.to_string(), rank));
        self
    }

    pub fn initial(mut self, name: &str) -> Self {
        self.initial = Some(name.to_string());
        self
    }

    /// Adds `(src, sym, left, right)` for every `src` in `sources` and every
    /// `sym` in `symbols`.
    pub fn trans(mut self, sources: &[&str], symbols: &[&str], left: &str, right: &str) -> Self {
        for src in sources {
            for sym in symbols {
                self.transitions
                    .push((src.to_string(), sym.to_string(), left.to_string(), right.to_string()));
            }
        }
        self
    }

    /// Self-loops on every symbol: `(q, x, q, q)`.
    pub fn sink(self, state: &str) -> Self {
        let syms: Vec<String> = self.alphabet.clone();
        let syms: Vec<&str> = syms.iter().map(String::as_str).collect();
        self.trans(&[state], &syms, state, state)
    }

    pub fn build(self) -> Result<ParityTreeAutomaton> {
        let state_id = |name: &str| {
            self.states
                .iter()
                .position(|(s, _)| s == name)
                .ok_or_else(|| Error::UnknownState(name.to_string()))
        };
        let sym_id = |sym: &str| {
            self.alphabet
                .iter()
                .position(|a| a == sym)
                .ok_or_else(|| Error::AlphabetMismatch(format!("unknown symbol `{sym}`")))
        };
        let initial = state_id(
            self.initial
                .as_deref()
                .ok_or_else(|| Error::InvalidAutomaton("no initial state".into()))?,
        )?;
        let transitions = self
            .transitions
            .iter()
            .map(|(s, a, l, r)| {
                Ok(Transition {
                    source: state_id(s)?,
                    symbol: sym_id(a)?,
                    left: state_id(l)?,
                    right: state_id(r)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        ParityTreeAutomaton::new(
            self.alphabet.clone(),
            self.states.iter().map(|(s, _)| s.clone()).collect(),
            self.states.iter().map(|&(_, r)| r).collect(),
            initial,
            transitions,
        )
    }
}

impl fmt::Display for ParityTreeAutomaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "alphabet {}", self.alphabet.join(" "))?;
        for (q, name) in self.states.iter().enumerate() {
            write!(f, "state {name} rank {}", self.ranks[q])?;
            if q == self.initial {
                f.write_str(" initial")?;
            }
            writeln!(f)?;
        }
        for t in &self.transitions {
            writeln!(
                f,
                "trans {} {} {} {}",
                self.states[t.source], self.alphabet[t.symbol], self.states[t.left], self.states[t.right]
            )?;
        }
        Ok(())
    }
}

impl FromStr for ParityTreeAutomaton {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        let mut alphabet: Option<Vec<String>> = None;
        let mut states: Vec<String> = Vec::new();
        let mut ranks: Vec<u32> = Vec::new();
        let mut ids: HashMap<String, usize> = HashMap::new();
        let mut initial: Option<usize> = None;
        let mut raw: Vec<(usize, [String; 4])> = Vec::new();

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
                "state" => {
                    let is_initial = match toks.len() {
                        4 => false,
                        5 if toks[4] == "initial" => true,
                        _ => return Err(parse_err(line, "expected `state <name> rank <n> [initial]`")),
                    };
                    if toks[2] != "rank" {
                        return Err(parse_err(line, "expected `rank` after the state name"));
                    }
                    text::check_ident(line, toks[1])?;
                    let rank = text::parse_nat(line, toks[3])?;
                    if ids.insert(toks[1].to_string(), states.len()).is_some() {
                        return Err(parse_err(line, format!("duplicate state `{}`", toks[1])));
                    }
                    if is_initial {
                        if initial.is_some() {
                            return Err(parse_err(line, "more than one initial state"));
                        }
                        initial = Some(states.len());
                    }
                    states.push(toks[1].to_string());
                    ranks.push(rank);
                }
                "trans" => {
                    text::expect_len(line, &toks, 5)?;
                    raw.push((line, [1, 2, 3, 4].map(|i| toks[i].to_string())));
                }
                other => return Err(parse_err(line, format!("unknown directive `{other}`"))),
            }
        }
        let alphabet = alphabet.ok_or_else(|| parse_err(0, "missing `alphabet` line"))?;
        let initial = initial.ok_or_else(|| parse_err(0, "no state is marked `initial`"))?;
        let state = |line: usize, s: &str| {
            ids.get(s)
                .copied()
                .ok_or_else(|| parse_err(line, format!("undeclared state `{s}`")))
        };
        let mut transitions = Vec::with_capacity(raw.len());
        for (line, [s, a, l, r]) in &raw {
            let symbol = alphabet
                .iter()
                .position(|x| x == a)
                .ok_or_else(|| parse_err(*line, format!("symbol `{a}` not in alphabet")))?;
            transitions.push(Transition {
                source: state(*line, s)?,
                symbol,
                left: state(*line, l)?,
                right: state(*line, r)?,
            });
        }
        ParityTreeAutomaton::new(alphabet, states, ranks, initial, transitions)
            .map_err(|e| parse_err(0, e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> ParityTreeAutomaton {
        AutomatonBuilder::new(&["a", "b"])
            .state("p", 1)
            .state("q", 4)
            .initial("p")
            .trans(&["p"], &["a"], "p", "q")
            .trans(&["p"], &["a"], "q", "q")
            .sink("q")
            .build()
            .unwrap()
    }

    #[test]
    fn determinism_is_syntactic() {
        let a = small();
        assert!(!a.is_deterministic());
        let d = AutomatonBuilder::new(&["a"])
            .state("x", 0)
            .initial("x")
            .sink("x")
            .build()
            .unwrap();
        assert!(d.is_deterministic());
    }

    #[test]
    fn index_normalizes_by_even_shift() {
        let uniform = AutomatonBuilder::new(&["a"])
            .state("x", 4)
            .initial("x")
            .sink("x")
            .build()
            .unwrap();
        assert_eq!(uniform.index(), AutomatonIndex { iota: 0, kappa: 0 });
        assert_eq!(small().index(), AutomatonIndex { iota: 1, kappa: 4 });
        assert_eq!(small().shift_ranks(2).unwrap().index(), small().index());
    }

    #[test]
    fn odd_shift_is_rejected() {
        assert_eq!(small().shift_ranks(1).unwrap_err(), Error::OddShift(1));
        assert_eq!(small().shift_ranks(0).unwrap(), small());
    }

    #[test]
    fn with_initial_checks_the_name() {
        assert_eq!(small().with_initial("q").unwrap().initial(), 1);
        assert_eq!(small().with_initial("p").unwrap(), small());
        assert!(matches!(small().with_initial("z"), Err(Error::UnknownState(_))));
    }

    #[test]
    fn text_round_trip_is_exact() {
        let a = small();
        let text = a.to_string();
        let back: ParityTreeAutomaton = text.parse().unwrap();
        assert_eq!(back, a);
        assert_eq!(back.to_string(), text);
    }

    #[test]
    fn parse_requires_exactly_one_initial() {
        let two = "alphabet a\nstate p rank 0 initial\nstate q rank 0 initial\n";
        assert!(matches!(two.parse::<ParityTreeAutomaton>(), Err(Error::Parse { line: 3, .. })));
        let none = "alphabet a\nstate p rank 0\n";
        assert!(none.parse::<ParityTreeAutomaton>().is_err());
        let bad = "alphabet a\nstate p rank 0 initial\ntrans p a p zz\n";
        assert!(matches!(bad.parse::<ParityTreeAutomaton>(), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn extra_letters_copy_the_model_letter() {
        let a = small().with_letters_like(&["c"], "a").unwrap();
        let c = a.symbol_index("c").unwrap();
        assert_eq!(a.transitions_from(0, c).len(), 2);
    }
}
