//! The three-colour separation game and hand-written memories for it.
//!
//! Vertices: `0` is Adam's start, `1..=3` are Eve's hubs, and `4..=9` are
//! the midpoints of the hubs' return loops. Hub 1 loops on `a` and `b`,
//! hub 2 on `b` and `c`, hub 3 on `a` and `c`; both halves of a loop carry
//! the loop's colour. The start moves to each hub with colour `a`.

use std::collections::BTreeMap;

use super::arena::{Arena, GameEdge, Player};
use super::memory::{MemoryStructure, MemoryUpdate, StrategyTable};
use crate::colour::{Alphabet, MullerCondition};

const A: usize = 0;
const B: usize = 1;
const C: usize = 2;

/// Loop colours of hubs 1, 2 and 3.
const LOOPS: [[usize; 2]; 3] = [[A, B], [B, C], [A, C]];

/// `{A : |A| = 2}` over `{a, b, c}`.
pub fn example22_condition() -> MullerCondition {
    let abc = Alphabet::new(["a", "b", "c"]).expect("distinct symbols");
    MullerCondition::from_predicate(abc, |s| s.len() == 2)
}

/// Edge ids: `0..3` start to hubs, then per hub `h` and loop `i` the edges
/// `3 + 4h + 2i` (hub to midpoint) and `4 + 4h + 2i` (back).
pub fn example22_game() -> Arena {
    let mut owner = vec![Player::Adam];
    owner.extend([Player::Eve; 9]);
    let mut edges: Vec<GameEdge> = (1..=3).map(|h| GameEdge { from: 0, to: h, colour: Some(A) }).collect();
    for (h, loops) in LOOPS.iter().enumerate() {
        for (i, &colour) in loops.iter().enumerate() {
            let hub = h + 1;
            let mid = 4 + 2 * h + i;
            edges.push(GameEdge { from: hub, to: mid, colour: Some(colour) });
            edges.push(GameEdge { from: mid, to: hub, colour: Some(colour) });
        }
    }
    Arena::new(example22_condition().alphabet().clone(), owner, 0, edges).expect("fixture arena is valid")
}

fn loop_edge(h: usize, i: usize) -> usize {
    3 + 4 * h + 2 * i
}

/// Midpoints have a single way back; this fills their entries.
fn midpoint_moves(table: &mut StrategyTable, states: usize) {
    for h in 0..3 {
        for i in 0..2 {
            for m in 0..states {
                table.next_move.insert((4 + 2 * h + i, m), loop_edge(h, i) + 1);
            }
        }
    }
}

/// Two-state general memory flipping whenever a hub is left; the hub takes
/// its first loop in state 0 and its second in state 1.
pub fn example22_general_memory() -> (MemoryStructure, StrategyTable) {
    let arena = example22_game();
    let update = (0..2)
        .map(|m| {
            arena
                .edges()
                .iter()
                .map(|e| if (1..=3).contains(&e.from) { 1 - m } else { m })
                .collect()
        })
        .collect();
    let memory = MemoryStructure { states: 2, initial: 0, update: MemoryUpdate::General(update) };
    let mut table = StrategyTable { next_move: BTreeMap::new() };
    for h in 0..3 {
        for m in 0..2 {
            table.next_move.insert((h + 1, m), loop_edge(h, m));
        }
    }
    midpoint_moves(&mut table, 2);
    (memory, table)
}

/// Three-state chromatic memory holding the last colour seen (initially
/// `a`); a hub takes its loop whose colour differs from the memory, the
/// smaller one if both do.
pub fn example22_chromatic_memory() -> (MemoryStructure, StrategyTable) {
    let update = (0..3).map(|_| vec![A, B, C]).collect();
    let memory = MemoryStructure { states: 3, initial: A, update: MemoryUpdate::Chromatic(update) };
    let mut table = StrategyTable { next_move: BTreeMap::new() };
    for (h, loops) in LOOPS.iter().enumerate() {
        for m in [A, B, C] {
            let i = loops.iter().position(|&c| c != m).expect("two distinct loop colours");
            table.next_move.insert((h + 1, m), loop_edge(h, i));
        }
    }
    midpoint_moves(&mut table, 3);
    (memory, table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::memory::verify_strategy;

    #[test]
    fn shape() {
        let g = example22_game();
        assert_eq!(g.vertex_count(), 10);
        assert_eq!(g.edges().len(), 15);
        assert!(g.is_epsilon_free());
        assert_eq!(g.edge(loop_edge(1, 1)).colour, Some(C));
    }

    #[test]
    fn fixture_memories_win() {
        let g = example22_game();
        let f = example22_condition();
        for (memory, table) in [example22_general_memory(), example22_chromatic_memory()] {
            assert!(verify_strategy(&g, &f, &memory, &table).unwrap());
        }
    }
}
