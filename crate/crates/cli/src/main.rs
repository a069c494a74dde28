//! `fusionmorph` command-line front end.
//!
//! Exit codes: 0 positive result, 1 negative result (unsolvable, invalid
//! witness, controllability violation), 2 invalid input, 3 budget exceeded.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fusionmorph::Encoding;

#[derive(Parser, Debug)]
#[command(
    name = "fusionmorph",
    version,
    about = "Decentralized observation problems as graph morphisms"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: Global,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Global {
    /// Maximum number of node assignments tried by the morphism search.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Reduce even when the legal language is not controllable.
    #[arg(long, global = true)]
    pub allow_uncontrollable: bool,
    /// Write the witness morphism (check, solve) or witness directory (compare) here.
    #[arg(long, global = true, value_name = "PATH")]
    pub witness: Option<PathBuf>,
    /// With compare: write a problem separating the two rules, when one exists.
    #[arg(long, global = true)]
    pub separating: bool,
    /// Output file or directory, depending on the subcommand.
    #[arg(short = 'o', long = "out", global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Agent count for rule selectors given as a bare builtin name.
    #[arg(long, global = true)]
    pub agents: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a problem or rule file for well-formedness.
    Validate { file: PathBuf },
    /// Split a control problem into one observation problem per controllable event.
    Reduce { file: PathBuf },
    /// Decide whether an observation problem is solvable under a rule.
    Check { problem: PathBuf, rule: String },
    /// Like check, and write the local decision tables.
    Solve { problem: PathBuf, rule: String },
    /// Check a solution file against a problem and rule.
    VerifySolution {
        problem: PathBuf,
        rule: String,
        solution: PathBuf,
    },
    /// Check a morphism file from a problem's observation graph (or a rule's
    /// decision graph) into a rule's decision graph.
    VerifyMorphism {
        source: String,
        rule: String,
        morphism: PathBuf,
    },
    /// Compare two rules by permissiveness.
    Compare {
        first: String,
        second: String,
        #[arg(long, default_value = "unary")]
        encoding: Encoding,
    },
    /// Pairwise relations and Hasse diagram over several rules.
    Poset {
        #[arg(required = true, num_args = 1..)]
        rules: Vec<String>,
    },
    /// Recast a rule's decision graph as an observation problem.
    D2o {
        rule: String,
        #[arg(long, default_value = "unary")]
        encoding: Encoding,
    },
    /// Render the observation or decision graph of an input as DOT.
    Graph {
        input: String,
        /// Leave out pairs whose colour is the empty agent set.
        #[arg(long)]
        hide_empty: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(outcome) => ExitCode::from(outcome.code()),
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.code())
        }
    }
}
