//! Named automata and trees.
//!
//! State names are ASCII: `top0`, `top2`, `bot1` for the all-accepting and
//! all-rejecting states (the digit is the rank), `P_or`, `N_or`, `top_or`,
//! `B_or` for the disjunction states and `top_S` for the shape checker.
//! Formula trees use the alphabet `a b or neg`.
//!
//! | name | what it is |
//! |------|------------|
//! | `A_L` | deterministic, no good branch, over `a b` |
//! | `A_G` | unambiguous, some good branch, over `a b` |
//! | `A_G_13` | `A_G` with the `l`-part ranks moved to 2 and 3 |
//! | `B_G` | Büchi automaton for good branches |
//! | `A_L4`, `A_G4` | `A_L`, `A_G` reading `or` and `neg` like `b` |
//! | `C`, `C_from_P`, `C_from_N`, `C_from_TS` | the formula automaton from `P`, `N`, `top_S` |
//! | `A_W` | improperly shaped formula trees |
//! | `A_COMPL_C` | disjoint union of `A_W` and `C_from_N` |

use std::sync::OnceLock;

use crate::automata::{disjoint_union, AutomatonBuilder, ParityTreeAutomaton};
use crate::error::{Error, Result};
use crate::tree::RegularTree;

pub const AB: [&str; 2] = ["a", "b"];
pub const FORMULA_ALPHABET: [&str; 4] = ["a", "b", "or", "neg"];

/// States of `A_G` that follow the tracked branch.
pub const G_TRACKING: [&str; 2] = ["g1", "g2"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fixture {
    Automaton(ParityTreeAutomaton),
    Tree(RegularTree),
}

impl Fixture {
    /// The text format of the entry.
    pub fn emit(&self) -> String {
        match self {
            Fixture::Automaton(a) => a.to_string(),
            Fixture::Tree(t) => t.to_string(),
        }
    }
}

pub fn fixture(name: &str) -> Result<&'static Fixture> {
    catalog()
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, f)| f)
        .ok_or_else(|| Error::UnknownFixture(name.to_string()))
}

pub fn automaton(name: &str) -> Result<&'static ParityTreeAutomaton> {
    match fixture(name)? {
        Fixture::Automaton(a) => Ok(a),
        Fixture::Tree(_) => Err(Error::UnknownFixture(format!("{name} (is a tree, not an automaton)"))),
    }
}

pub fn tree(name: &str) -> Result<&'static RegularTree> {
    match fixture(name)? {
        Fixture::Tree(t) => Ok(t),
        Fixture::Automaton(_) => Err(Error::UnknownFixture(format!("{name} (is an automaton, not a tree)"))),
    }
}

pub fn names() -> Vec<&'static str> {
    catalog().iter().map(|(n, _)| *n).collect()
}

/// Named trees over `a b or neg` whose root is a formula letter.
pub const FORMULA_TREES: [&str; 4] = ["F_NEG_ALLB", "F_OR_LOOP", "F_BAD", "F_NEG_LOOP"];

fn catalog() -> &'static [(&'static str, Fixture)] {
    static CATALOG: OnceLock<Vec<(&'static str, Fixture)>> = OnceLock::new();
    CATALOG.get_or_init(|| build().expect("fixture definitions are well formed"))
}

fn build() -> Result<Vec<(&'static str, Fixture)>> {
    let a_l = a_l()?;
    let a_g = a_g()?;
    let a_g_13 = a_g.with_ranks(&[("l0", 2), ("l1", 3), ("top0", 2)])?;
    let b_g = b_g()?;
    let c = c()?;
    let c_from_n = c.with_initial("N")?;
    let c_from_ts = c.with_initial("top_S")?;
    let a_w = a_w()?;
    let a_compl_c = disjoint_union(&a_w, &c_from_n)?;
    let a_l4 = a_l.with_letters_like(&["or", "neg"], "b")?;
    let a_g4 = a_g.with_letters_like(&["or", "neg"], "b")?;

    let ab = |triples: &[(&str, usize, usize)]| RegularTree::from_triples(&AB, triples, 0);
    let f = |triples: &[(&str, usize, usize)]| RegularTree::from_triples(&FORMULA_ALPHABET, triples, 0);

    use Fixture::{Automaton as A, Tree as T};
    Ok(vec![
        ("A_L", A(a_l)),
        ("A_G", A(a_g)),
        ("A_G_13", A(a_g_13)),
        ("B_G", A(b_g)),
        ("A_L4", A(a_l4)),
        ("A_G4", A(a_g4)),
        ("C", A(c.clone())),
        ("C_from_P", A(c)),
        ("C_from_N", A(c_from_n)),
        ("C_from_TS", A(c_from_ts)),
        ("A_W", A(a_w)),
        ("A_COMPL_C", A(a_compl_c)),
        ("T_ALL_A", T(ab(&[("a", 0, 0)])?)),
        ("T_ALL_B", T(ab(&[("b", 0, 0)])?)),
        ("T_RSPINE", T(ab(&[("a", 1, 0), ("b", 1, 1)])?)),
        ("T_LSPINE", T(ab(&[("a", 0, 1), ("b", 1, 1)])?)),
        ("T_ZIGZAG", T(ab(&[("a", 2, 1), ("a", 0, 2), ("b", 2, 2)])?)),
        // neg over an all-b filler (left) and the all-b tree (right)
        ("F_NEG_ALLB", T(f(&[("neg", 1, 1), ("b", 1, 1)])?)),
        // a single or-node looping left, with disjunct all-b
        ("F_OR_LOOP", T(f(&[("or", 0, 1), ("b", 1, 1)])?)),
        ("F_BAD", T(f(&[("or", 1, 2), ("a", 2, 2), ("b", 2, 2)])?)),
        ("F_NEG_LOOP", T(f(&[("neg", 1, 0), ("b", 1, 1)])?)),
    ])
}

const L_STATES: [&str; 2] = ["l0", "l1"];
const G_STATES: [&str; 2] = ["g1", "g2"];

fn a_l() -> Result<ParityTreeAutomaton> {
    AutomatonBuilder::new(&AB)
        .state("l0", 0)
        .state("l1", 1)
        .state("top0", 0)
        .initial("l1")
        .trans(&L_STATES, &["a"], "l1", "l0")
        .trans(&L_STATES, &["b"], "top0", "top0")
        .sink("top0")
        .build()
}

fn a_g() -> Result<ParityTreeAutomaton> {
    AutomatonBuilder::new(&AB)
        .state("g1", 1)
        .state("g2", 2)
        .state("top2", 2)
        .state("bot1", 1)
        .state("l0", 0)
        .state("l1", 1)
        .state("top0", 0)
        .initial("g1")
        .trans(&G_STATES, &["a"], "g2", "top2")
        .trans(&G_STATES, &["a"], "l1", "g1")
        .trans(&G_STATES, &["b"], "bot1", "bot1")
        .trans(&L_STATES, &["a"], "l1", "l0")
        .trans(&L_STATES, &["b"], "top0", "top0")
        .sink("top2")
        .sink("bot1")
        .sink("top0")
        .build()
}

fn b_g() -> Result<ParityTreeAutomaton> {
    AutomatonBuilder::new(&AB)
        .state("g1", 1)
        .state("g2", 2)
        .state("top2", 2)
        .state("bot1", 1)
        .initial("g1")
        .trans(&G_STATES, &["a"], "g2", "top2")
        .trans(&G_STATES, &["a"], "top2", "g1")
        .trans(&G_STATES, &["b"], "bot1", "bot1")
        .sink("top2")
        .sink("bot1")
        .build()
}

fn c() -> Result<ParityTreeAutomaton> {
    let not_a = ["b", "or", "neg"];
    AutomatonBuilder::new(&FORMULA_ALPHABET)
        .state("N", 1)
        .state("P", 1)
        .state("P_or", 1)
        .state("top_S", 1)
        .state("N_or", 0)
        .state("top_or", 0)
        .state("top", 0)
        .state("g1", 1)
        .state("g2", 2)
        .state("top2", 2)
        .state("bot1", 1)
        .state("l0", 0)
        .state("l1", 1)
        .state("top0", 0)
        .initial("P")
        .trans(&["P", "P_or"], &["or"], "top_or", "P")
        .trans(&["P", "P_or"], &["or"], "P_or", "N")
        .trans(&["N", "N_or"], &["or"], "N_or", "N")
        .trans(&["top_or", "top_S"], &["or"], "top_or", "top_S")
        .trans(&["N"], &["neg"], "top", "P")
        .trans(&["P"], &["neg"], "top", "N")
        .trans(&["top_S"], &["neg"], "top", "top_S")
        .trans(&["top_S"], &["a", "b"], "top", "top")
        .sink("top")
        // P on an atom starts the good-branch automaton, N the other one
        .trans(&["P", "g1", "g2"], &["a"], "g2", "top2")
        .trans(&["P", "g1", "g2"], &["a"], "l1", "g1")
        .trans(&["P"], &["b"], "bot1", "bot1")
        .trans(&G_STATES, &not_a, "bot1", "bot1")
        .trans(&["N", "l0", "l1"], &["a"], "l1", "l0")
        .trans(&["N"], &["b"], "top0", "top0")
        .trans(&L_STATES, &not_a, "top0", "top0")
        .sink("top2")
        .sink("bot1")
        .sink("top0")
        .build()
}

fn a_w() -> Result<ParityTreeAutomaton> {
    AutomatonBuilder::new(&FORMULA_ALPHABET)
        .state("B", 2)
        .state("B_or", 1)
        .state("top_S", 1)
        .state("top_or", 0)
        .state("top", 0)
        .initial("B")
        .trans(&["B", "B_or"], &["or"], "top", "B")
        .trans(&["B", "B_or"], &["or"], "B_or", "top_S")
        .trans(&["B"], &["neg"], "top", "B")
        .trans(&["B_or"], &["a", "b", "neg"], "top", "top")
        .trans(&["top_or", "top_S"], &["or"], "top_or", "top_S")
        .trans(&["top_S"], &["neg"], "top", "top_S")
        .trans(&["top_S"], &["a", "b"], "top", "top")
        .sink("top")
        .build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{AutomatonIndex, TreeAcceptor};
    use crate::tree::Path;

    fn idx(iota: u32, kappa: u32) -> AutomatonIndex {
        AutomatonIndex { iota, kappa }
    }

    #[test]
    fn shapes_and_indices() {
        let a_l = automaton("A_L").unwrap();
        assert_eq!(a_l.state_count(), 3);
        assert!(a_l.is_deterministic());
        assert_eq!(a_l.index(), idx(0, 1));
        let a_g = automaton("A_G").unwrap();
        assert_eq!(a_g.state_count(), 7);
        assert!(!a_g.is_deterministic());
        assert_eq!(a_g.index(), idx(0, 2));
        assert_eq!(automaton("A_G_13").unwrap().index(), idx(1, 3));
        assert_eq!(automaton("B_G").unwrap().index(), idx(1, 2));
        assert_eq!(automaton("C").unwrap().index(), idx(0, 2));
        let a_w = automaton("A_W").unwrap();
        assert_eq!(a_w.index(), idx(0, 2));
        assert_eq!(a_w.rank(a_w.state_index("B").unwrap()), 2);
        for name in ["B_G", "C", "A_W"] {
            assert!(!automaton(name).unwrap().is_deterministic(), "{name}");
        }
    }

    #[test]
    fn with_initial_variants() {
        let c = automaton("C").unwrap();
        assert_eq!(c.state_name(c.initial()), "P");
        let n = automaton("C_from_N").unwrap();
        assert_eq!(n.state_name(n.initial()), "N");
        let a_l = automaton("A_L").unwrap();
        assert_eq!(&a_l.with_initial("l1").unwrap(), a_l);
    }

    #[test]
    fn catalog_round_trips() {
        for name in names() {
            match fixture(name).unwrap() {
                Fixture::Automaton(a) => assert_eq!(&a.to_string().parse::<ParityTreeAutomaton>().unwrap(), a, "{name}"),
                Fixture::Tree(t) => assert_eq!(&t.to_string().parse::<RegularTree>().unwrap(), t, "{name}"),
            }
        }
    }

    #[test]
    fn rspine_paths() {
        let t = tree("T_RSPINE").unwrap();
        let p = |s: &str| s.parse::<Path>().unwrap();
        assert_eq!(t.subtree(&p("r")), *t);
        assert_eq!(t.subtree(&p("l")).pruned(), *tree("T_ALL_B").unwrap());
        assert_eq!(t.label_at(&p("rrr")), "a");
        assert_eq!(t.label_at(&p("rl")), "b");
        assert_eq!(tree("T_ALL_A").unwrap().label_at(&p("lrlr")), "a");
    }

    #[test]
    fn unknown_names_are_errors() {
        assert!(matches!(fixture("nope"), Err(Error::UnknownFixture(_))));
        assert!(automaton("T_ALL_A").is_err());
    }
}
