//! Muller games on finite arenas and the memory Eve needs to win them.

pub mod arena;
pub mod fixtures;
pub mod memory;
pub mod min2;
pub mod parity;
pub mod search;

pub use arena::{Arena, GameEdge, Player};
pub use fixtures::{example22_chromatic_memory, example22_condition, example22_game, example22_general_memory};
pub use memory::{solve_muller_game, verify_strategy, MemoryStructure, MemoryUpdate, MullerSolution, StrategyTable};
pub use min2::{more_than_one_over, two_state_memory_min2};
pub use parity::{product_with_parity, solve_parity_game, ParityGame, ParitySolution, ProductGame};
pub use search::{find_chromatic_memory, find_table, min_chromatic_memory_exhaustive};
