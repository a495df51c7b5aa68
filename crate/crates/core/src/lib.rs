//! Transition-based ω-automata over explicit Muller conditions: Zielonka
//! trees, minimal parity and generalised Büchi automata, Rabin conditions on
//! top of a transition structure, the colouring reduction for Rabin
//! minimisation, and memory structures for Muller games.

pub mod acceptance;
pub mod automaton;
pub mod colour;
pub mod error;
pub mod format;
pub mod games;
pub mod graph;
pub mod rabin;
pub mod reduction;
pub mod scc;
pub mod zielonka;

pub use acceptance::{dualise, Acceptance, Pair};
pub use automaton::{Automaton, Cycle, EdgeId, UltimatelyPeriodicWord};
pub use colour::{max_inclusion, Alphabet, ColourSet, MullerCondition};
pub use error::{Error, Result, TypenessWitness};
