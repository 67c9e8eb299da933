//! The acceptance suite: nine end-to-end checks of the automata, oracles,
//! reductions and solvers. Every check is exact; a single disagreement
//! fails its criterion.
//!
//! | # | criterion |
//! |---|-----------|
//! | 1 | fixture audit: state counts, ranks, indices |
//! | 2 | membership agrees with the good-branch oracle on `a b` trees |
//! | 3 | unambiguity verdicts, with verified ambiguity witnesses |
//! | 4 | `C`, `C` from `N` and `A_W` partition all trees |
//! | 5 | formula semantics and shape checking |
//! | 6 | reduction laws |
//! | 7 | the unique run of `A_G` follows the leftmost good branch |
//! | 8 | solvers agree with the brute-force oracle, strategies verify |
//! | 9 | the complement automaton of `C` is correct and unambiguous |

use std::fmt;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::{first_difference, verify_run, Analyzer, Witness};
use crate::automata::{conjunction_product, AutomatonIndex, ParityTreeAutomaton, TreeAcceptor};
use crate::corpus::{generate_corpus, CorpusDescriptor};
use crate::error::{Error, Result};
use crate::fixtures::{automaton, tree, AB, FORMULA_ALPHABET, FORMULA_TREES, G_TRACKING};
use crate::games::generate::{exhaustive_games, random_game};
use crate::games::{
    brute_force_solve, solve_conjunction, solve_parity, verify_strategy, GeneralizedParityGame, Player, Solution,
    DEFAULT_BRUTE_FORCE_BOUND,
};
use crate::oracles::{eval_formula, good_branch_exists, leftmost_good_branch, shape_check};
use crate::reductions::{build_neg, build_or, enumerate_countable_trees, reduce_if, FormulaGenerator};
use crate::tree::{Dir, RegularTree};

pub const CRITERIA: [(u8, &str); 9] = [
    (1, "fixture audit"),
    (2, "oracle equivalence"),
    (3, "unambiguity verdicts"),
    (4, "global disjointness"),
    (5, "formula semantics"),
    (6, "reduction laws"),
    (7, "leftmost-branch law"),
    (8, "solver correctness"),
    (9, "strong unambiguity"),
];

#[derive(Debug, Clone)]
pub struct AcceptanceConfig {
    pub seed: u64,
    /// Random trees per alphabet, on top of the exhaustive 2-node corpora.
    pub random_trees: usize,
    pub random_max_nodes: usize,
    pub formulas: usize,
    pub formula_max_nodes: usize,
    pub builds: usize,
    pub random_games: usize,
    /// Extra trees for the corpus sweeps. Trees over `a b` join every
    /// sweep, trees over `a b or neg` the formula sweeps.
    pub extra_corpus: Option<CorpusDescriptor>,
}

impl Default for AcceptanceConfig {
    fn default() -> Self {
        AcceptanceConfig {
            seed: 7,
            random_trees: 500,
            random_max_nodes: 6,
            formulas: 300,
            formula_max_nodes: 10,
            builds: 200,
            random_games: 200,
            extra_corpus: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub checked: usize,
    /// The first few failures, with a description each.
    pub failures: Vec<String>,
    pub failure_count: usize,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0 && self.checked > 0
    }
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:>2}  {:<22} {:>7} checks  {:>3} failures",
            if self.passed() { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.checked,
            self.failure_count
        )?;
        for msg in &self.failures {
            write!(f, "\n        {msg}")?;
        }
        Ok(())
    }
}

const SHOWN_FAILURES: usize = 5;

struct Check {
    checked: usize,
    failures: Vec<String>,
    failure_count: usize,
}

impl Check {
    fn new() -> Self {
        Check {
            checked: 0,
            failures: Vec::new(),
            failure_count: 0,
        }
    }

    fn fail(&mut self, msg: String) {
        self.failure_count += 1;
        if self.failures.len() < SHOWN_FAILURES {
            self.failures.push(msg);
        }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(what());
        }
    }

    /// Unwraps a result, counting an error as a failed check.
    fn ok<T>(&mut self, r: Result<T>, what: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.checked += 1;
                self.fail(format!("{}: {e}", what()));
                None
            }
        }
    }

    fn finish(self, id: u8) -> CriterionReport {
        CriterionReport {
            id,
            title: CRITERIA[id as usize - 1].1,
            checked: self.checked,
            failures: self.failures,
            failure_count: self.failure_count,
        }
    }
}

pub fn run_all(cfg: &AcceptanceConfig) -> Result<Vec<CriterionReport>> {
    CRITERIA.iter().map(|&(id, _)| run_criterion(id, cfg)).collect()
}

pub fn run_criterion(id: u8, cfg: &AcceptanceConfig) -> Result<CriterionReport> {
    let az = Analyzer::default();
    let mut c = Check::new();
    match id {
        1 => fixture_audit(&mut c)?,
        2 => oracle_equivalence(&mut c, &az, cfg)?,
        3 => unambiguity_verdicts(&mut c, &az)?,
        4 => global_disjointness(&mut c, &az, cfg)?,
        5 => formula_semantics(&mut c, &az, cfg)?,
        6 => reduction_laws(&mut c, &az, cfg)?,
        7 => leftmost_branch_law(&mut c, &az, cfg)?,
        8 => solver_correctness(&mut c, cfg),
        9 => strong_unambiguity(&mut c, &az, cfg)?,
        _ => return Err(Error::Precondition(format!("no acceptance criterion {id}"))),
    }
    Ok(c.finish(id))
}

fn extra_trees(cfg: &AcceptanceConfig, alphabet: &[&str]) -> Result<Vec<RegularTree>> {
    let Some(desc) = &cfg.extra_corpus else {
        return Ok(Vec::new());
    };
    let target: Vec<String> = alphabet.iter().map(|s| s.to_string()).collect();
    if !desc.alphabet.iter().all(|s| FORMULA_ALPHABET.contains(&s.as_str())) {
        return Err(Error::AlphabetMismatch(format!(
            "corpus alphabet must be within {}",
            FORMULA_ALPHABET.join(" ")
        )));
    }
    if !desc.alphabet.iter().all(|s| target.contains(s)) {
        return Ok(Vec::new());
    }
    generate_corpus(desc)?.trees.iter().map(|t| t.over_alphabet(&target)).collect()
}

/// Exhaustive 2-node corpus plus seeded random trees over `alphabet`.
fn corpus(cfg: &AcceptanceConfig, alphabet: &[&str], salt: u64) -> Result<Vec<RegularTree>> {
    let mut trees = generate_corpus(&CorpusDescriptor::exhaustive(alphabet, 2))?.trees;
    let random = CorpusDescriptor::random(alphabet, cfg.random_max_nodes, cfg.seed.wrapping_add(salt), cfg.random_trees);
    trees.extend(generate_corpus(&random)?.trees);
    trees.extend(extra_trees(cfg, alphabet)?);
    Ok(trees)
}

/// Trees over `a b`: the exhaustive 2-node corpus (128 two-node graphs and
/// the two constant trees) and the random trees.
pub fn ab_corpus(cfg: &AcceptanceConfig) -> Result<Vec<RegularTree>> {
    corpus(cfg, &AB, 0)
}

/// Trees over `a b or neg`, including the named formula trees.
pub fn formula_corpus(cfg: &AcceptanceConfig) -> Result<Vec<RegularTree>> {
    let mut trees = corpus(cfg, &FORMULA_ALPHABET, 1)?;
    for name in FORMULA_TREES {
        trees.push(tree(name)?.clone());
    }
    Ok(trees)
}

fn fixture_audit(c: &mut Check) -> Result<()> {
    let idx = |iota, kappa| AutomatonIndex { iota, kappa };
    let a_l = automaton("A_L")?;
    c.expect(a_l.state_count() == 3, || format!("A_L has {} states", a_l.state_count()));
    c.expect(a_l.index() == idx(0, 1), || format!("A_L has index {}", a_l.index()));
    let a_g = automaton("A_G")?;
    c.expect(a_g.state_count() == 7, || format!("A_G has {} states", a_g.state_count()));
    c.expect(a_g.ranks().iter().all(|&r| r <= 2), || format!("A_G ranks {:?}", a_g.ranks()));
    c.expect(a_g.index() == idx(0, 2), || format!("A_G has index {}", a_g.index()));
    for (name, want) in [("A_G_13", idx(1, 3)), ("B_G", idx(1, 2))] {
        let got = automaton(name)?.index();
        c.expect(got == want, || format!("{name} has index {got}, expected {want}"));
    }
    let a_w = automaton("A_W")?;
    let b = a_w.rank(a_w.state_index("B")?);
    c.expect(b == 2, || format!("A_W state B has rank {b}"));
    Ok(())
}

fn oracle_equivalence(c: &mut Check, az: &Analyzer, cfg: &AcceptanceConfig) -> Result<()> {
    let (a_g, a_l, b_g, a_g_13) = (automaton("A_G")?, automaton("A_L")?, automaton("B_G")?, automaton("A_G_13")?);
    for (i, t) in ab_corpus(cfg)?.iter().enumerate() {
        let good = good_branch_exists(t);
        let what = |name: &str| format!("tree {i}: {name}");
        let Some(g) = c.ok(az.accepts(a_g, t), || what("A_G")) else { continue };
        c.expect(g == good, || format!("{} accepts={g}, good branch={good}", what("A_G")));
        if let Some(l) = c.ok(az.accepts(a_l, t), || what("A_L")) {
            c.expect(l == !good, || format!("{} accepts={l}, good branch={good}", what("A_L")));
        }
        if let Some(bg) = c.ok(az.accepts(b_g, t), || what("B_G")) {
            c.expect(bg == g, || format!("{} accepts={bg}, A_G accepts={g}", what("B_G")));
        }
        if let Some(g13) = c.ok(az.accepts(a_g_13, t), || what("A_G_13")) {
            c.expect(g13 == g, || format!("{} accepts={g13}, A_G accepts={g}", what("A_G_13")));
        }
    }
    Ok(())
}

/// Checks an ambiguity witness: both runs verify and they differ.
fn check_ambiguity_witness(c: &mut Check, a: &ParityTreeAutomaton, name: &str, witness: &Option<Witness>) {
    let Some(Witness::Ambiguity { tree, runs, .. }) = witness else {
        c.expect(false, || format!("{name}: ambiguity reported without two runs"));
        return;
    };
    for (i, r) in runs.iter().enumerate() {
        c.expect(verify_run(a, tree, r), || format!("{name}: run {} does not verify", i + 1));
    }
    c.expect(first_difference(&runs[0], &runs[1]).is_some(), || format!("{name}: the two runs coincide"));
}

fn unambiguity_verdicts(c: &mut Check, az: &Analyzer) -> Result<()> {
    for name in ["A_L", "A_G", "C", "C_from_N", "A_W"] {
        let a = automaton(name)?;
        if let Some(v) = c.ok(az.is_unambiguous(a), || name.to_string()) {
            c.expect(v.answer, || format!("{name} reported ambiguous"));
        }
    }
    let b_g = automaton("B_G")?;
    if let Some(v) = c.ok(az.is_unambiguous(b_g), || "B_G".into()) {
        c.expect(!v.answer, || "B_G reported unambiguous".into());
        if !v.answer {
            check_ambiguity_witness(c, b_g, "B_G", &v.witness);
        }
    }
    let all_a = tree("T_ALL_A")?;
    if let Some(v) = c.ok(az.ambiguous_on(b_g, all_a), || "B_G on T_ALL_A".into()) {
        c.expect(v.answer, || "B_G has a single run on T_ALL_A".into());
        if v.answer {
            check_ambiguity_witness(c, b_g, "B_G on T_ALL_A", &v.witness);
        }
    }
    Ok(())
}

fn partition_members(az: &Analyzer, t: &RegularTree) -> Result<[bool; 3]> {
    Ok([
        az.accepts(automaton("C_from_P")?, t)?,
        az.accepts(automaton("C_from_N")?, t)?,
        az.accepts(automaton("A_W")?, t)?,
    ])
}

fn global_disjointness(c: &mut Check, az: &Analyzer, cfg: &AcceptanceConfig) -> Result<()> {
    let names = ["C_from_P", "C_from_N", "A_W"];
    for i in 0..3 {
        for j in i + 1..3 {
            let what = || format!("{} x {}", names[i], names[j]);
            let Some(p) = c.ok(conjunction_product(automaton(names[i])?, automaton(names[j])?), what) else {
                continue;
            };
            if let Some(v) = c.ok(az.empty(&p), what) {
                c.expect(v.answer, || format!("{} is nonempty", what()));
            }
        }
    }
    for (k, t) in formula_corpus(cfg)?.iter().enumerate() {
        if let Some(m) = c.ok(partition_members(az, t), || format!("tree {k}")) {
            let count = m.iter().filter(|&&b| b).count();
            c.expect(count == 1, || format!("tree {k}: accepted by {count} of C, C from N, A_W ({m:?})"));
        }
    }
    Ok(())
}

fn formula_semantics(c: &mut Check, az: &Analyzer, cfg: &AcceptanceConfig) -> Result<()> {
    let (p, n, ts, w) = (
        automaton("C_from_P")?,
        automaton("C_from_N")?,
        automaton("C_from_TS")?,
        automaton("A_W")?,
    );
    let mut generator = FormulaGenerator::new(cfg.seed.wrapping_add(2), cfg.formula_max_nodes);
    for k in 0..cfg.formulas {
        let t = generator.formula(3);
        let what = || format!("formula {k}");
        let shape = shape_check(&t);
        c.expect(shape.well_shaped, || format!("{}: generated formula is ill-shaped", what()));
        let Some(value) = c.ok(eval_formula(&t), what) else { continue };
        if let Some(ap) = c.ok(az.accepts(p, &t), what) {
            c.expect(ap == value, || format!("{}: value {value}, accepted from P {ap}", what()));
        }
        if let Some(an) = c.ok(az.accepts(n, &t), what) {
            c.expect(an == !value, || format!("{}: value {value}, accepted from N {an}", what()));
        }
        if let Some(ats) = c.ok(az.accepts(ts, &t), what) {
            c.expect(ats, || format!("{}: rejected from top_S", what()));
        }
    }
    for (k, t) in formula_corpus(cfg)?.iter().enumerate() {
        if shape_check(t).well_shaped {
            continue;
        }
        let what = || format!("ill-shaped tree {k}");
        if let Some(aw) = c.ok(az.accepts(w, t), what) {
            c.expect(aw, || format!("{}: rejected by A_W", what()));
        }
        if let Some(ats) = c.ok(az.accepts(ts, t), what) {
            c.expect(!ats, || format!("{}: accepted from top_S", what()));
        }
    }
    Ok(())
}

/// Acceptance from `P`, `N` and `top_S`.
fn pnt(az: &Analyzer, t: &RegularTree) -> Result<[bool; 3]> {
    Ok([
        az.accepts(automaton("C_from_P")?, t)?,
        az.accepts(automaton("C_from_N")?, t)?,
        az.accepts(automaton("C_from_TS")?, t)?,
    ])
}

fn reduction_laws(c: &mut Check, az: &Analyzer, cfg: &AcceptanceConfig) -> Result<()> {
    let a_g = automaton("A_G")?;
    for t in enumerate_countable_trees(5, 3) {
        let f = reduce_if(&t);
        if let Some(m) = c.ok(az.accepts(a_g, &f), || format!("reduction of\n{t}")) {
            c.expect(m == t.has_infinite_branch(), || {
                format!("A_G accepts={m} on the reduction of {}", t.to_string().replace('\n', "; "))
            });
        }
    }

    let mut generator = FormulaGenerator::new(cfg.seed.wrapping_add(3), cfg.formula_max_nodes);
    for k in 0..cfg.builds {
        let what = || format!("build {k}");
        if generator.rng().random_bool(0.5) {
            let x = generator.formula(2);
            let Some(built) = c.ok(build_neg(&x), what) else { continue };
            let (Some(inner), Some(outer)) = (c.ok(pnt(az, &x), what), c.ok(pnt(az, &built), what)) else {
                continue;
            };
            c.expect(outer[0] == inner[1], || format!("{}: neg does not swap P and N", what()));
            c.expect(outer[1] == inner[0], || format!("{}: neg does not swap N and P", what()));
            c.expect(outer[2] && inner[2], || format!("{}: rejected from top_S", what()));
            c.expect(outer[1] == !outer[0], || format!("{}: N is not the complement of P", what()));
        } else {
            let k_disj = generator.rng().random_range(1..=3);
            let parts: Vec<RegularTree> = (0..=k_disj).map(|_| generator.formula(1)).collect();
            let (disjuncts, tail) = parts.split_at(k_disj);
            let Some(built) = c.ok(build_or(disjuncts, &tail[0]), what) else { continue };
            let Some(outer) = c.ok(pnt(az, &built), what) else { continue };
            let inner: Vec<[bool; 3]> = match parts.iter().map(|x| pnt(az, x)).collect::<Result<_>>() {
                Ok(v) => v,
                Err(e) => {
                    c.expect(false, || format!("{}: {e}", what()));
                    continue;
                }
            };
            let any_p = inner.iter().any(|m| m[0]);
            let all_n = inner.iter().all(|m| m[1]);
            c.expect(outer[0] == any_p, || format!("{}: or is not a disjunction from P", what()));
            c.expect(outer[1] == all_n, || format!("{}: or is not a conjunction from N", what()));
            c.expect(outer[2], || format!("{}: rejected from top_S", what()));
            c.expect(outer[1] == !outer[0], || format!("{}: N is not the complement of P", what()));
        }
    }
    Ok(())
}

fn leftmost_branch_law(c: &mut Check, az: &Analyzer, cfg: &AcceptanceConfig) -> Result<()> {
    let (a_g, a_l) = (automaton("A_G")?, automaton("A_L")?);
    for (k, t) in ab_corpus(cfg)?.iter().enumerate() {
        let what = || format!("tree {k}");
        let Some(true) = c.ok(az.accepts(a_g, t), what) else { continue };
        let Some(trace) = c.ok(az.unique_run_trace(a_g, t, &G_TRACKING), what) else { continue };
        let Some(leftmost) = c.ok(leftmost_good_branch(t), what) else { continue };
        c.expect(trace.same_branch(&leftmost), || {
            format!("{}: run tracks {trace}, leftmost good branch is {leftmost}", what())
        });
        let steps = trace.prefix().len() + trace.cycle().len();
        let nodes = t.walk(&trace, steps);
        for i in 0..steps {
            if trace.dir_at(i) == Dir::R {
                let sibling = t.rooted_at(t.node(nodes[i]).left);
                if let Some(m) = c.ok(az.accepts(a_l, &sibling), what) {
                    c.expect(m, || format!("{}: left sibling at step {i} has a good branch", what()));
                }
            }
        }
    }
    Ok(())
}

fn check_strategies(c: &mut Check, g: &GeneralizedParityGame, s: &Solution, what: &dyn Fn() -> String) {
    for p in [Player::Protagonist, Player::Antagonist] {
        match s.strategy(p) {
            Some(st) => c.expect(verify_strategy(g, st, p, &s.region(p)), || {
                format!("{}: {p} strategy does not verify", what())
            }),
            None => c.expect(false, || format!("{}: no {p} strategy", what())),
        }
    }
}

fn compare(
    c: &mut Check,
    g: &GeneralizedParityGame,
    solve: fn(&GeneralizedParityGame) -> Result<Solution>,
    what: &dyn Fn() -> String,
) {
    let (Some(s), Some(oracle)) = (
        c.ok(solve(g), what),
        c.ok(brute_force_solve(g, DEFAULT_BRUTE_FORCE_BOUND), what),
    ) else {
        return;
    };
    c.expect(s.winner == oracle, || format!("{}: solver {:?}, oracle {:?}\n{g}", what(), s.winner, oracle));
    check_strategies(c, g, &s, what);
}

fn solver_correctness(c: &mut Check, cfg: &AcceptanceConfig) {
    for n in 1..=3 {
        for (k, g) in exhaustive_games(n, 3).enumerate() {
            compare(c, &g, solve_parity, &|| format!("exhaustive game {n}/{k}"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(4));
    for k in 0..cfg.random_games {
        let g = random_game(&mut rng, 5, 1, 3, 0.35);
        compare(c, &g, solve_parity, &|| format!("random parity game {k}"));
    }
    for k in 0..cfg.random_games {
        let g = random_game(&mut rng, 5, 2, 3, 0.35);
        compare(c, &g, solve_conjunction, &|| format!("random conjunction game {k}"));
    }
}

fn strong_unambiguity(c: &mut Check, az: &Analyzer, cfg: &AcceptanceConfig) -> Result<()> {
    let (compl, cp) = (automaton("A_COMPL_C")?, automaton("C")?);
    for (k, t) in formula_corpus(cfg)?.iter().enumerate() {
        let what = || format!("tree {k}");
        let (Some(x), Some(y)) = (c.ok(az.accepts(compl, t), what), c.ok(az.accepts(cp, t), what)) else {
            continue;
        };
        c.expect(x != y, || format!("{}: complement automaton {x}, C {y}", what()));
    }
    if let Some(v) = c.ok(az.is_unambiguous(compl), || "A_COMPL_C".into()) {
        c.expect(v.answer, || "A_COMPL_C reported ambiguous".into());
    }
    Ok(())
}
