//! Memory structures, strategy tables, strategy verification, and solving
//! Muller games through the Zielonka-tree parity automaton.

use std::collections::{BTreeMap, HashMap, VecDeque};

use super::arena::{Arena, Player};
use super::parity::{product_with_parity, solve_parity_game};
use crate::colour::{ColourSet, MullerCondition};
use crate::error::{Error, Result};
use crate::scc::{cycle_colour_sets, Digraph};
use crate::zielonka::zt_to_parity;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MemoryUpdate {
    /// `table[m][edge]`
    General(Vec<Vec<usize>>),
    /// `table[m][colour]`; ε edges leave the state unchanged.
    Chromatic(Vec<Vec<usize>>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MemoryStructure {
    pub states: usize,
    pub initial: usize,
    pub update: MemoryUpdate,
}

impl MemoryStructure {
    pub fn is_chromatic(&self) -> bool {
        matches!(self.update, MemoryUpdate::Chromatic(_))
    }

    /// Single-state memory, i.e. a positional strategy.
    pub fn trivial(arena: &Arena) -> MemoryStructure {
        MemoryStructure {
            states: 1,
            initial: 0,
            update: MemoryUpdate::Chromatic(vec![vec![0; arena.colours().len()]]),
        }
    }

    /// Checks the table dimensions against the arena.
    pub fn validate(&self, arena: &Arena) -> Result<()> {
        let (table, width, what) = match &self.update {
            MemoryUpdate::General(t) => (t, arena.edges().len(), "edges"),
            MemoryUpdate::Chromatic(t) => (t, arena.colours().len(), "colours"),
        };
        if self.states == 0 || self.initial >= self.states {
            return Err(Error::malformed("memory needs a valid initial state"));
        }
        if table.len() != self.states {
            return Err(Error::malformed(format!("update table has {} rows for {} states", table.len(), self.states)));
        }
        for row in table {
            if row.len() != width {
                return Err(Error::malformed(format!("update row must cover all {width} {what}")));
            }
            if row.iter().any(|&m| m >= self.states) {
                return Err(Error::malformed("update leads to a missing memory state"));
            }
        }
        Ok(())
    }

    pub fn update(&self, arena: &Arena, m: usize, edge: usize) -> usize {
        match &self.update {
            MemoryUpdate::General(t) => t[m][edge],
            MemoryUpdate::Chromatic(t) => match arena.edge(edge).colour {
                Some(c) => t[m][c],
                None => m,
            },
        }
    }
}

/// Eve's next move for pairs (vertex, memory state).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StrategyTable {
    pub next_move: BTreeMap<(usize, usize), usize>,
}

impl StrategyTable {
    pub fn validate(&self, arena: &Arena, memory: &MemoryStructure) -> Result<()> {
        for (&(v, m), &e) in &self.next_move {
            if v >= arena.vertex_count() || m >= memory.states {
                return Err(Error::malformed(format!("table entry ({v}, {m}) is out of range")));
            }
            if arena.owner(v) != Player::Eve {
                return Err(Error::malformed(format!("table entry for vertex {v}, which Eve does not own")));
            }
            if e >= arena.edges().len() || arena.edge(e).from != v {
                return Err(Error::malformed(format!("edge {e} does not leave vertex {v}")));
            }
        }
        Ok(())
    }
}

/// Colour mask of each edge of the configuration graph reachable from the
/// initial configuration when Eve follows `choose`, which may refuse
/// (returning `None`) to signal a missing decision.
pub(crate) fn configuration_graph(
    arena: &Arena,
    memory: &MemoryStructure,
    mut choose: impl FnMut(usize, usize) -> Option<usize>,
) -> Option<(Digraph, Vec<u64>)> {
    let start = (arena.initial(), memory.initial);
    let mut index = HashMap::from([(start, 0usize)]);
    let mut configs = vec![start];
    let mut queue = VecDeque::from([0usize]);
    let mut edges = Vec::new();
    let mut masks = Vec::new();
    while let Some(i) = queue.pop_front() {
        let (v, m) = configs[i];
        let moves: Vec<usize> = match arena.owner(v) {
            Player::Eve => vec![choose(v, m)?],
            Player::Adam => arena.out_edges(v).to_vec(),
        };
        for e in moves {
            let next = (arena.edge(e).to, memory.update(arena, m, e));
            let j = *index.entry(next).or_insert_with(|| {
                configs.push(next);
                queue.push_back(configs.len() - 1);
                configs.len() - 1
            });
            edges.push((i, j));
            masks.push(arena.edge(e).colour.map_or(0, |c| 1u64 << c));
        }
    }
    Some((Digraph::from_edges(configs.len(), edges), masks))
}

fn require_condition_alphabet(arena: &Arena, f: &MullerCondition) -> Result<()> {
    if arena.colours() != f.alphabet() {
        return Err(Error::AlphabetMismatch("arena colours differ from the condition alphabet".into()));
    }
    Ok(())
}

/// Whether the memory and table define a winning strategy from the initial
/// vertex: every cycle of the reachable configuration graph must have an
/// accepting colour set.
pub fn verify_strategy(
    arena: &Arena,
    f: &MullerCondition,
    memory: &MemoryStructure,
    table: &StrategyTable,
) -> Result<bool> {
    require_condition_alphabet(arena, f)?;
    memory.validate(arena)?;
    table.validate(arena, memory)?;
    let mut missing = None;
    let graph = configuration_graph(arena, memory, |v, m| {
        let e = table.next_move.get(&(v, m)).copied();
        if e.is_none() {
            missing = Some((v, m));
        }
        e
    });
    let Some((g, masks)) = graph else {
        let (v, m) = missing.expect("missing entry recorded");
        return Err(Error::malformed(format!("no move for reachable vertex {v} with memory {m}")));
    };
    Ok(cycle_colour_sets(&g, &masks, |_| true)
        .into_keys()
        .all(|set| f.is_accepting(ColourSet::from_bits(set))))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MullerSolution {
    /// Winner from the initial vertex.
    pub winner: Player,
    /// Vertices Eve wins when the play starts there.
    pub eve_region: Vec<bool>,
    /// A chromatic memory over the automaton's states with its table, when
    /// Eve wins from the initial vertex.
    pub strategy: Option<(MemoryStructure, StrategyTable)>,
}

/// Solves a Muller game through the product with the Zielonka-tree parity
/// automaton of `f`.
pub fn solve_muller_game(arena: &Arena, f: &MullerCondition) -> Result<MullerSolution> {
    require_condition_alphabet(arena, f)?;
    let aut = zt_to_parity(f);
    let product = product_with_parity(arena, &aut)?;
    let solution = solve_parity_game(&product.game);
    let eve_region: Vec<bool> = (0..arena.vertex_count())
        .map(|v| solution.winner[product.vertex(v, aut.initial())] == Player::Eve)
        .collect();
    let winner = if eve_region[arena.initial()] { Player::Eve } else { Player::Adam };
    let strategy = (winner == Player::Eve).then(|| {
        let update = (0..aut.size())
            .map(|q| (0..arena.colours().len()).map(|c| aut.step(q, c).0).collect())
            .collect();
        let memory = MemoryStructure { states: aut.size(), initial: aut.initial(), update: MemoryUpdate::Chromatic(update) };
        let mut table = StrategyTable::default();
        for v in (0..arena.vertex_count()).filter(|&v| arena.owner(v) == Player::Eve) {
            for q in 0..aut.size() {
                let mid = solution.strategy[product.vertex(v, q)];
                let e = product.edge_of_midpoint(mid).expect("pair vertices lead to midpoints");
                table.next_move.insert((v, q), e);
            }
        }
        (memory, table)
    });
    Ok(MullerSolution { winner, eve_region, strategy })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colour::Alphabet;
    use crate::games::arena::GameEdge;

    fn cs(ix: &[usize]) -> ColourSet {
        ColourSet::from_indices(ix.iter().copied())
    }

    fn two_loops(owner: Player) -> Arena {
        let ab = Alphabet::new(["a", "b"]).unwrap();
        let e = |colour| GameEdge { from: 0, to: 0, colour: Some(colour) };
        Arena::new(ab, vec![owner], 0, vec![e(0), e(1)]).unwrap()
    }

    #[test]
    fn adam_self_loop_loses_for_eve() {
        let ab = Alphabet::new(["a", "b"]).unwrap();
        let arena = Arena::new(ab.clone(), vec![Player::Adam], 0, vec![GameEdge { from: 0, to: 0, colour: Some(0) }]).unwrap();
        let f = MullerCondition::new(ab, [cs(&[0, 1])]).unwrap();
        let s = solve_muller_game(&arena, &f).unwrap();
        assert_eq!(s.winner, Player::Adam);
        assert!(s.strategy.is_none());
    }

    #[test]
    fn union_of_two_loops_needs_memory() {
        let arena = two_loops(Player::Eve);
        let f = MullerCondition::new(arena.colours().clone(), [cs(&[0, 1])]).unwrap();
        let s = solve_muller_game(&arena, &f).unwrap();
        assert_eq!(s.winner, Player::Eve);
        let (memory, table) = s.strategy.unwrap();
        assert!(verify_strategy(&arena, &f, &memory, &table).unwrap());
        for e in 0..2 {
            let table = StrategyTable { next_move: BTreeMap::from([((0, 0), e)]) };
            assert!(!verify_strategy(&arena, &f, &MemoryStructure::trivial(&arena), &table).unwrap());
        }
    }

    #[test]
    fn malformed_tables_are_errors() {
        let arena = two_loops(Player::Eve);
        let f = MullerCondition::new(arena.colours().clone(), [cs(&[0, 1])]).unwrap();
        let memory = MemoryStructure::trivial(&arena);
        assert!(verify_strategy(&arena, &f, &memory, &StrategyTable::default()).is_err());
        let bad = StrategyTable { next_move: BTreeMap::from([((0, 0), 7)]) };
        assert!(verify_strategy(&arena, &f, &memory, &bad).is_err());
        let wrong_rows = MemoryStructure { states: 2, initial: 0, update: MemoryUpdate::Chromatic(vec![vec![0, 0]]) };
        let ok_table = StrategyTable { next_move: BTreeMap::from([((0, 0), 0)]) };
        assert!(verify_strategy(&arena, &f, &wrong_rows, &ok_table).is_err());
    }

    #[test]
    fn all_accepting_with_trivial_memory() {
        let arena = two_loops(Player::Adam);
        let f = MullerCondition::from_predicate(arena.colours().clone(), |_| true);
        let memory = MemoryStructure::trivial(&arena);
        assert!(verify_strategy(&arena, &f, &memory, &StrategyTable::default()).unwrap());
    }
}
