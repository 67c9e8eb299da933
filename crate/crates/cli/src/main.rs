use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod input;

/// Decision procedures for parity tree automata over regular trees.
///
/// Inputs are file paths, `-` for stdin, or `@NAME` for a built-in fixture.
/// Exit status: 0 when the answer is yes, 1 when it is no, 2 on usage or
/// input errors.
#[derive(Debug, Parser)]
#[command(name = "treeparity", version)]
pub struct Cli {
    /// Print one JSON object instead of the text report.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Does the automaton accept the tree?
    Member {
        automaton: String,
        tree: String,
        /// Start from this state instead of the initial one.
        #[arg(long)]
        from: Option<String>,
    },
    /// Is the language empty? Prints a witness tree otherwise.
    Empty { automaton: String },
    /// Does every tree have at most one accepting run? Prints a witness otherwise.
    Unambiguous { automaton: String },
    /// Does the tree have two accepting runs?
    AmbiguousOn { automaton: String, tree: String },
    /// Is there a branch labelled only `a` turning left infinitely often?
    GoodBranch { tree: String },
    /// The leftmost such branch, as a lasso.
    Leftmost { tree: String },
    /// Is the tree a well-shaped formula tree?
    Shape { tree: String },
    /// Truth value of a well-shaped formula tree.
    Eval { tree: String },
    /// Ordinal rank of a well-shaped formula tree.
    Rank { tree: String },
    /// Checks that exactly one of C from P, C from N and A_W accepts each tree.
    PartitionCheck {
        trees: Vec<String>,
        /// Check a generated corpus instead, e.g. `random:5:1:100:a,b,or,neg`.
        #[arg(long, conflicts_with = "trees")]
        corpus: Option<String>,
    },
    /// The tree f(t) for a countable tree t.
    ReduceIf { ctree: String },
    /// The formula tree `neg t`.
    BuildNeg { tree: String },
    /// The formula tree `t1 or t2 or ... or tail or tail or ...`.
    BuildOr {
        #[arg(required = true)]
        trees: Vec<String>,
        #[arg(long)]
        tail: String,
    },
    /// Solves a game and verifies the returned strategies.
    SolveGame {
        game: String,
        /// Solver name; by default the first one supporting the game.
        #[arg(long)]
        solver: Option<String>,
    },
    /// Prints a built-in automaton or tree.
    Fixture {
        name: String,
        /// Print the full text format rather than a summary.
        #[arg(long)]
        emit: bool,
    },
    /// Runs the acceptance suite.
    VerifyAll {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Extra trees for the corpus sweeps.
        #[arg(long)]
        corpus: Option<String>,
    },
}

/// What a command prints, and whether its answer is yes.
pub struct Output {
    pub holds: bool,
    pub text: String,
    pub json: serde_json::Value,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli.command) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let body = if cli.json {
                format!("{}\n", out.json)
            } else {
                out.text
            };
            // A closed pipe is not worth a panic.
            let _ = stdout.write_all(body.as_bytes());
            if out.holds {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if cli.json {
                println!("{}", serde_json::json!({ "error": e.to_string() }));
            }
            eprintln!("treeparity: {e}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn build_or_needs_tail() {
        assert!(Cli::try_parse_from(["treeparity", "build-or", "@T_ALL_A"]).is_err());
    }

    #[test]
    fn corpus_and_trees_conflict() {
        let r = Cli::try_parse_from(["treeparity", "partition-check", "x", "--corpus", "exhaustive:1:a"]);
        assert!(r.is_err());
    }
}
