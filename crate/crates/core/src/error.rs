use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),

    #[error("invalid game: {0}")]
    InvalidGame(String),

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("unknown state `{0}`")]
    UnknownState(String),

    #[error("rank shift must be even, got {0}")]
    OddShift(u32),

    #[error("expected a game with {expected} priority coordinate(s), found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("game has {vertices} vertices, brute-force bound is {bound}")]
    OracleBound { vertices: usize, bound: usize },

    #[error("unknown solver `{0}`")]
    UnknownSolver(String),

    #[error("solver `{0}` does not produce strategies")]
    NoStrategy(String),

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An internal cross-check failed. Seeing this means a bug, not bad input.
    #[error("internal check failed: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}
