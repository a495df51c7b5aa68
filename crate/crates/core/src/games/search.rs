//! Exhaustive search for the smallest chromatic memory winning a game.

use std::collections::HashMap;

use rayon::prelude::*;

use super::arena::{Arena, Player};
use super::memory::{MemoryStructure, MemoryUpdate, StrategyTable};
use crate::colour::{ColourSet, MullerCondition};
use crate::error::{Error, Result};
use crate::scc::{cycle_colour_sets, Digraph};

/// Upper bound on `k^(k·|Γ|)` accepted by the exhaustive search.
pub const MAX_UPDATE_FUNCTIONS: u128 = 1 << 24;

/// Update tables `k × width` with initial state 0 in which every state is
/// reachable and states are numbered by first appearance, row by row.
pub fn canonical_update_tables(k: usize, width: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(k: usize, width: usize, cells: &mut Vec<usize>, max_used: usize, out: &mut Vec<Vec<Vec<usize>>>) {
        let cell = cells.len();
        if cell == k * width {
            if max_used + 1 == k {
                out.push(cells.chunks(width).map(<[usize]>::to_vec).collect());
            }
            return;
        }
        if cell / width > max_used {
            return;
        }
        for t in 0..=(max_used + 1).min(k - 1) {
            cells.push(t);
            go(k, width, cells, max_used.max(t), out);
            cells.pop();
        }
    }
    let mut out = Vec::new();
    if k > 0 && width > 0 {
        go(k, width, &mut Vec::new(), 0, &mut out);
    }
    out
}

struct TableSearch<'a> {
    arena: &'a Arena,
    f: &'a MullerCondition,
    memory: &'a MemoryStructure,
    configs: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
    edges: Vec<(usize, usize, u64)>,
    choice: Vec<Option<usize>>,
}

impl<'a> TableSearch<'a> {
    fn new(arena: &'a Arena, f: &'a MullerCondition, memory: &'a MemoryStructure) -> Self {
        let start = (arena.initial(), memory.initial);
        TableSearch {
            arena,
            f,
            memory,
            configs: vec![start],
            index: HashMap::from([(start, 0)]),
            edges: Vec::new(),
            choice: vec![None],
        }
    }

    fn follow(&mut self, from: usize, e: usize) {
        let (_, m) = self.configs[from];
        let edge = self.arena.edge(e);
        let next = (edge.to, self.memory.update(self.arena, m, e));
        let j = match self.index.get(&next) {
            Some(&j) => j,
            None => {
                self.configs.push(next);
                self.choice.push(None);
                self.index.insert(next, self.configs.len() - 1);
                self.configs.len() - 1
            }
        };
        self.edges.push((from, j, edge.colour.map_or(0, |c| 1u64 << c)));
    }

    fn undo_to(&mut self, configs: usize, edges: usize) {
        for c in self.configs.drain(configs..) {
            self.index.remove(&c);
        }
        self.choice.truncate(configs);
        self.edges.truncate(edges);
    }

    /// Cycles already fixed are permanent, so one rejecting cycle refutes
    /// every completion.
    fn cycles_accepting(&self) -> bool {
        let g = Digraph::from_edges(self.configs.len(), self.edges.iter().map(|&(s, t, _)| (s, t)));
        let masks: Vec<u64> = self.edges.iter().map(|&(_, _, m)| m).collect();
        cycle_colour_sets(&g, &masks, |_| true)
            .into_keys()
            .all(|s| self.f.is_accepting(ColourSet::from_bits(s)))
    }

    fn extend(&mut self, i: usize) -> bool {
        if i == self.configs.len() {
            return true;
        }
        let (v, _) = self.configs[i];
        let (nc, ne) = (self.configs.len(), self.edges.len());
        let out = self.arena.out_edges(v).to_vec();
        if self.arena.owner(v) == Player::Adam {
            for e in out {
                self.follow(i, e);
            }
            if self.cycles_accepting() && self.extend(i + 1) {
                return true;
            }
            self.undo_to(nc, ne);
            return false;
        }
        for e in out {
            self.follow(i, e);
            self.choice[i] = Some(e);
            if self.cycles_accepting() && self.extend(i + 1) {
                return true;
            }
            self.undo_to(nc, ne);
            self.choice[i] = None;
        }
        false
    }

    fn table(&self) -> StrategyTable {
        StrategyTable {
            next_move: self
                .configs
                .iter()
                .zip(&self.choice)
                .filter_map(|(&c, e)| e.map(|e| (c, e)))
                .collect(),
        }
    }
}

/// A table making `memory` win from the initial vertex, if one exists.
/// Only configurations reachable under the table get entries.
pub fn find_table(arena: &Arena, f: &MullerCondition, memory: &MemoryStructure) -> Option<StrategyTable> {
    let mut search = TableSearch::new(arena, f, memory);
    search.extend(0).then(|| search.table())
}

fn guard(k: usize, width: usize) -> Result<()> {
    let count = (k as u128).checked_pow((k * width) as u32);
    match count {
        Some(c) if c <= MAX_UPDATE_FUNCTIONS => Ok(()),
        _ => Err(Error::ScaleGuard(format!(
            "{k}^({k}*{width}) update functions exceed {MAX_UPDATE_FUNCTIONS}"
        ))),
    }
}

/// A winning chromatic memory with exactly `k` states, if one exists.
pub fn find_chromatic_memory(
    arena: &Arena,
    f: &MullerCondition,
    k: usize,
) -> Result<Option<(MemoryStructure, StrategyTable)>> {
    if arena.colours() != f.alphabet() {
        return Err(Error::AlphabetMismatch("arena colours differ from the condition alphabet".into()));
    }
    let width = arena.colours().len();
    guard(k, width)?;
    Ok(canonical_update_tables(k, width).into_par_iter().find_map_first(|update| {
        let memory = MemoryStructure { states: k, initial: 0, update: MemoryUpdate::Chromatic(update) };
        find_table(arena, f, &memory).map(|table| (memory, table))
    }))
}

/// Least `k <= k_max` for which some `k`-state chromatic memory wins the
/// game from its initial vertex.
pub fn min_chromatic_memory_exhaustive(arena: &Arena, f: &MullerCondition, k_max: usize) -> Result<Option<usize>> {
    for k in 1..=k_max {
        if find_chromatic_memory(arena, f, k)?.is_some() {
            return Ok(Some(k));
        }
    }
    Ok(None)
}
