//! Resolving command-line arguments to values.

use std::io::Read;
use std::str::FromStr;

use thiserror::Error;
use treeparity::fixtures::{fixture, Fixture};
use treeparity::reductions::CountableTree;
use treeparity::automata::ParityTreeAutomaton;
use treeparity::games::GeneralizedParityGame;
use treeparity::tree::RegularTree;
use treeparity::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{input}:{line}: {msg}")]
    Format { input: String, line: usize, msg: String },

    #[error("{input}: {msg}")]
    Io { input: String, msg: String },

    #[error(transparent)]
    Core(#[from] Error),
}

/// Values that can be named on the command line.
pub trait Loadable: FromStr<Err = Error> + Clone {
    const KIND: &'static str;
    fn from_fixture(f: &Fixture) -> Option<&Self>;
}

impl Loadable for ParityTreeAutomaton {
    const KIND: &'static str = "automaton";
    fn from_fixture(f: &Fixture) -> Option<&Self> {
        match f {
            Fixture::Automaton(a) => Some(a),
            Fixture::Tree(_) => None,
        }
    }
}

impl Loadable for RegularTree {
    const KIND: &'static str = "tree";
    fn from_fixture(f: &Fixture) -> Option<&Self> {
        match f {
            Fixture::Tree(t) => Some(t),
            Fixture::Automaton(_) => None,
        }
    }
}

impl Loadable for GeneralizedParityGame {
    const KIND: &'static str = "game";
    fn from_fixture(_: &Fixture) -> Option<&Self> {
        None
    }
}

impl Loadable for CountableTree {
    const KIND: &'static str = "countable tree";
    fn from_fixture(_: &Fixture) -> Option<&Self> {
        None
    }
}

fn read_source(arg: &str) -> Result<String, CliError> {
    let io = |e: std::io::Error| CliError::Io {
        input: arg.to_string(),
        msg: e.to_string(),
    };
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else {
        std::fs::read_to_string(arg).map_err(io)
    }
}

/// Parses text, naming `source` in diagnostics.
pub fn parse_text<T: Loadable>(source: &str, text: &str) -> Result<T, CliError> {
    text.parse::<T>().map_err(|e| match e {
        Error::Parse { line, msg } if line > 0 => CliError::Format {
            input: source.to_string(),
            line,
            msg,
        },
        other => CliError::Io {
            input: source.to_string(),
            msg: other.to_string(),
        },
    })
}

/// Resolves `@NAME`, `-` or a path.
pub fn load<T: Loadable>(arg: &str) -> Result<T, CliError> {
    if let Some(name) = arg.strip_prefix('@') {
        let f = fixture(name)?;
        return T::from_fixture(f)
            .cloned()
            .ok_or_else(|| CliError::Usage(format!("fixture `{name}` is not a {}", T::KIND)));
    }
    parse_text(arg, &read_source(arg)?)
}
