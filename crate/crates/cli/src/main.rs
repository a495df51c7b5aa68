//! `omem`: command-line access to the omega-memory library.
//!
//! Exit codes: 0 success, 1 the checked property fails (verify loses,
//! equiv finds a difference, rabincheck finds a witness, solve finds Adam
//! winning, reduce-demo finds a mismatch), 2 malformed input, 3 scale guard.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "omem", version, about = "Zielonka trees, minimal automata and memory for Muller conditions")]
struct Cli {
    /// Largest size tried by exhaustive searches.
    #[arg(long, global = true, default_value_t = 4)]
    max_size: usize,
    /// Seed for generated instances.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Rendering of reports on stdout; automata, games and strategies are always JSON.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for exhaustive searches.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Zielonka tree of a condition.
    Zielonka { condition: PathBuf },
    /// General memory requirement and shape properties of a condition.
    Mem { condition: PathBuf },
    /// Chromatic memory requirement (minimal Rabin automaton size) of a condition.
    Memchrom { condition: PathBuf },
    /// Parity automaton built from the Zielonka tree of a condition.
    Zt2parity { condition: PathBuf },
    /// Minimal parity automaton equivalent to a parity automaton.
    Minparity { automaton: PathBuf },
    /// One-state generalised Büchi (or co-Büchi) automaton equivalent to the input.
    Minbuchi { automaton: PathBuf },
    /// Rabin-typeness of a Muller automaton; prints synthesised pairs when typeable.
    Rabincheck { automaton: PathBuf },
    /// Language equivalence of two automata over the same input alphabet.
    Equiv { first: PathBuf, second: PathBuf },
    /// Chromatic number and an optimal colouring of a DIMACS graph.
    Chromatic { graph: PathBuf },
    /// Rabin automaton for the graph language.
    Graph2rabin { graph: PathBuf },
    /// Rabin automaton whose states are the colours of a proper colouring.
    Colour2rabin {
        graph: PathBuf,
        /// Colour of each vertex (1-based, whitespace separated); optimal if omitted.
        #[arg(long)]
        colouring: Option<PathBuf>,
    },
    /// Colouring read off an automaton for the graph language.
    Rabin2colouring { automaton: PathBuf, graph: PathBuf },
    /// Winner and a winning strategy for Eve.
    Solve {
        game: PathBuf,
        /// Use the two-state memory for the more-than-one-colour condition on ε-free games.
        #[arg(long)]
        two_state: bool,
    },
    /// Whether a strategy wins a game from its initial vertex.
    Verify { game: PathBuf, strategy: PathBuf },
    /// Smallest chromatic memory winning a game, by exhaustive search.
    Memgame { game: PathBuf },
    /// Generate a fixture.
    Gen {
        #[arg(value_enum)]
        what: Fixture,
        /// Number of colours or vertices, where relevant.
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
    /// Chromatic number against minimal Rabin size for the graph language.
    ReduceDemo { graph: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fixture {
    /// The three-colour game separating general and chromatic memory.
    Example22,
    /// Condition of the graph language of the clique on `n` vertices.
    CliqueCond,
    /// `{A : |A| > 1}` over `n` colours.
    Min2Cond,
    /// A random ε-free game won by Eve for `{A : |A| > 1}` over `n` colours.
    Min2Game,
}

pub struct Options {
    pub max_size: usize,
    pub seed: u64,
    pub format: Format,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads.max(1)).build_global() {
        eprintln!("error: cannot start worker threads: {e}");
        return ExitCode::from(2);
    }
    let options = Options { max_size: cli.max_size, seed: cli.seed, format: cli.format };
    match commands::run(&cli.command, &options) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            if !outcome.holds {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
