//! Two-player games on finite graphs with parity objectives.
//!
//! Every vertex carries a vector of `d ∈ {1, 2}` priorities. The
//! Protagonist wins an infinite play when, in every coordinate, the highest
//! priority seen infinitely often is even; the Antagonist wins otherwise. A
//! vertex without successors is lost by its owner.
//!
//! Solvers live behind [`GameSolver`] and are looked up by name in a
//! [`SolverRegistry`]:
//!
//! | name          | d    | strategies                                   |
//! |---------------|------|----------------------------------------------|
//! | `zielonka`    | 1    | memoryless for both players                  |
//! | `iar`         | 2    | index-appearance-record memory (Protagonist), memoryless (Antagonist) |
//! | `brute-force` | 1, 2 | none, regions only; small games              |

mod brute;
pub mod generate;
mod iar;
mod verify;
mod zielonka;

pub use brute::{brute_force_solve, BruteForceSolver, DEFAULT_BRUTE_FORCE_BOUND};
pub use iar::{solve_conjunction, IarSolver};
pub use verify::verify_strategy;
pub use zielonka::{solve_parity, ZielonkaSolver};

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{parse_err, Error, Result};
use crate::text;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    Protagonist,
    Antagonist,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Protagonist => Player::Antagonist,
            Player::Antagonist => Player::Protagonist,
        }
    }

    /// The player favoured by a priority in a single coordinate.
    pub fn of_priority(p: u32) -> Player {
        if p.is_multiple_of(2) {
            Player::Protagonist
        } else {
            Player::Antagonist
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::Protagonist => "P",
            Player::Antagonist => "A",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralizedParityGame {
    dimension: usize,
    owners: Vec<Player>,
    priorities: Vec<Vec<u32>>,
    succ: Vec<Vec<usize>>,
}

impl GeneralizedParityGame {
    pub fn new(dimension: usize) -> Result<Self> {
        if !(1..=2).contains(&dimension) {
            return Err(Error::InvalidGame(format!("dimension must be 1 or 2, got {dimension}")));
        }
        Ok(GeneralizedParityGame {
            dimension,
            owners: Vec::new(),
            priorities: Vec::new(),
            succ: Vec::new(),
        })
    }

    pub fn add_vertex(&mut self, owner: Player, priorities: &[u32]) -> Result<usize> {
        if priorities.len() != self.dimension {
            return Err(Error::Dimension {
                expected: self.dimension,
                found: priorities.len(),
            });
        }
        self.owners.push(owner);
        self.priorities.push(priorities.to_vec());
        self.succ.push(Vec::new());
        Ok(self.owners.len() - 1)
    }

    pub fn add_edge(&mut self, from: usize, to: usize) -> Result<()> {
        let n = self.owners.len();
        if from >= n || to >= n {
            return Err(Error::InvalidGame(format!("edge {from} -> {to} leaves the arena")));
        }
        if !self.succ[from].contains(&to) {
            self.succ[from].push(to);
        }
        Ok(())
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.owners.len()
    }

    pub fn is_empty(&self) -> bool {
        self.owners.is_empty()
    }

    pub fn owner(&self, v: usize) -> Player {
        self.owners[v]
    }

    pub fn priorities(&self, v: usize) -> &[u32] {
        &self.priorities[v]
    }

    pub fn priority(&self, v: usize, coord: usize) -> u32 {
        self.priorities[v][coord]
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }

    pub(crate) fn successor_lists(&self) -> &[Vec<usize>] {
        &self.succ
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.succ[v].is_empty()
    }

    /// Priorities per coordinate: `result[c][v]`.
    pub(crate) fn coordinate_table(&self) -> Vec<Vec<u32>> {
        (0..self.dimension)
            .map(|c| self.priorities.iter().map(|p| p[c]).collect())
            .collect()
    }

    /// Same game with the successors of `v` replaced.
    pub(crate) fn with_successors(&self, v: usize, succ: Vec<usize>) -> Self {
        let mut g = self.clone();
        g.succ[v] = succ;
        g
    }

    /// Adds `k` to every priority in coordinate `coord`.
    pub fn shifted(&self, coord: usize, k: u32) -> Self {
        let mut g = self.clone();
        for p in &mut g.priorities {
            p[coord] += k;
        }
        g
    }
}

impl fmt::Display for GeneralizedParityGame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in 0..self.len() {
            let pri: Vec<String> = self.priorities[v].iter().map(u32::to_string).collect();
            writeln!(f, "vertex {v} owner {} pri {}", self.owners[v], pri.join(","))?;
        }
        for (v, ws) in self.succ.iter().enumerate() {
            for w in ws {
                writeln!(f, "edge {v} {w}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for GeneralizedParityGame {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        let mut game: Option<GeneralizedParityGame> = None;
        let mut ids: HashMap<String, usize> = HashMap::new();
        let mut edges: Vec<(usize, String, String)> = Vec::new();
        for (line, toks) in text::lines(input) {
            match toks[0] {
                "vertex" => {
                    text::expect_len(line, &toks, 6)?;
                    if toks[2] != "owner" || toks[4] != "pri" {
                        return Err(parse_err(line, "expected `vertex <id> owner <P|A> pri <n>[,<n>]`"));
                    }
                    text::check_ident(line, toks[1])?;
                    let owner = match toks[3] {
                        "P" => Player::Protagonist,
                        "A" => Player::Antagonist,
                        other => return Err(parse_err(line, format!("owner must be P or A, found `{other}`"))),
                    };
                    let pri = toks[5]
                        .split(',')
                        .map(|s| text::parse_nat(line, s))
                        .collect::<Result<Vec<_>>>()?;
                    let g = match &mut game {
                        Some(g) => g,
                        None => game.insert(
                            GeneralizedParityGame::new(pri.len()).map_err(|e| parse_err(line, e.to_string()))?,
                        ),
                    };
                    let v = g.add_vertex(owner, &pri).map_err(|e| parse_err(line, e.to_string()))?;
                    if ids.insert(toks[1].to_string(), v).is_some() {
                        return Err(parse_err(line, format!("duplicate vertex `{}`", toks[1])));
                    }
                }
                "edge" => {
                    text::expect_len(line, &toks, 3)?;
                    edges.push((line, toks[1].into(), toks[2].into()));
                }
                other => return Err(parse_err(line, format!("unknown directive `{other}`"))),
            }
        }
        let mut game = game.ok_or_else(|| parse_err(0, "game has no vertices"))?;
        for (line, a, b) in edges {
            let get = |s: &str| {
                ids.get(s)
                    .copied()
                    .ok_or_else(|| parse_err(line, format!("undefined vertex `{s}`")))
            };
            game.add_edge(get(&a)?, get(&b)?)?;
        }
        Ok(game)
    }
}

/// Finite memory for strategies. Memory is updated when a play leaves a
/// vertex: from memory `m` at vertex `v` the next vertex is entered with
/// memory `update(m, v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Memory {
    Trivial,
    Table {
        size: usize,
        initial: usize,
        next: HashMap<(usize, usize), usize>,
    },
}

impl Memory {
    pub fn initial(&self) -> usize {
        match self {
            Memory::Trivial => 0,
            Memory::Table { initial, .. } => *initial,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Memory::Trivial => 1,
            Memory::Table { size, .. } => *size,
        }
    }

    /// Undefined table entries are reported as `None`.
    pub fn update(&self, m: usize, v: usize) -> Option<usize> {
        match self {
            Memory::Trivial => Some(0),
            Memory::Table { next, .. } => next.get(&(m, v)).copied(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strategy {
    pub player: Player,
    pub memory: Memory,
    /// `(vertex, memory) -> successor`
    pub choice: HashMap<(usize, usize), usize>,
}

impl Strategy {
    pub fn memoryless(player: Player, choice: impl IntoIterator<Item = (usize, usize)>) -> Self {
        Strategy {
            player,
            memory: Memory::Trivial,
            choice: choice.into_iter().map(|(v, w)| ((v, 0), w)).collect(),
        }
    }

    pub fn choose(&self, v: usize, m: usize) -> Option<usize> {
        self.choice.get(&(v, m)).copied()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub winner: Vec<Player>,
    /// Indexed by [`Player::index`].
    pub strategies: [Option<Strategy>; 2],
}

impl Solution {
    pub fn region(&self, player: Player) -> Vec<usize> {
        (0..self.winner.len()).filter(|&v| self.winner[v] == player).collect()
    }

    pub fn strategy(&self, player: Player) -> Option<&Strategy> {
        self.strategies[player.index()].as_ref()
    }
}

pub trait GameSolver: Send + Sync {
    fn name(&self) -> &'static str;
    fn supports(&self, dimension: usize) -> bool;
    fn solve(&self, game: &GeneralizedParityGame) -> Result<Solution>;
}

pub struct SolverRegistry {
    solvers: Vec<Box<dyn GameSolver>>,
}

impl Default for SolverRegistry {
    fn default() -> Self {
        let mut r = SolverRegistry { solvers: Vec::new() };
        r.register(Box::new(ZielonkaSolver));
        r.register(Box::new(IarSolver::default()));
        r.register(Box::new(BruteForceSolver::default()));
        r
    }
}

impl SolverRegistry {
    /// Registers a solver, replacing any previous one with the same name.
    pub fn register(&mut self, solver: Box<dyn GameSolver>) {
        self.solvers.retain(|s| s.name() != solver.name());
        self.solvers.push(solver);
    }

    pub fn get(&self, name: &str) -> Result<&dyn GameSolver> {
        self.solvers
            .iter()
            .find(|s| s.name() == name)
            .map(|s| s.as_ref())
            .ok_or_else(|| Error::UnknownSolver(name.to_string()))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.solvers.iter().map(|s| s.name()).collect()
    }

    /// The first registered solver that handles `dimension`.
    pub fn for_dimension(&self, dimension: usize) -> Result<&dyn GameSolver> {
        self.solvers
            .iter()
            .find(|s| s.supports(dimension))
            .map(|s| s.as_ref())
            .ok_or_else(|| Error::UnknownSolver(format!("<none for dimension {dimension}>")))
    }
}

/// Names of the solvers used by the decision procedures, one per dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverChoice {
    pub parity: String,
    pub conjunction: String,
}

impl Default for SolverChoice {
    fn default() -> Self {
        SolverChoice {
            parity: "zielonka".into(),
            conjunction: "iar".into(),
        }
    }
}

impl SolverChoice {
    pub fn solve(&self, registry: &SolverRegistry, game: &GeneralizedParityGame) -> Result<Solution> {
        let name = match game.dimension() {
            1 => &self.parity,
            _ => &self.conjunction,
        };
        let solver = registry.get(name)?;
        if !solver.supports(game.dimension()) {
            return Err(Error::Dimension {
                expected: game.dimension(),
                found: game.dimension(),
            });
        }
        solver.solve(game)
    }
}
