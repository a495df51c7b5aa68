//! Two memory states suffice for `{A : |A| > 1}` on games without ε edges.

use super::arena::{Arena, Player};
use super::memory::{solve_muller_game, MemoryStructure, MemoryUpdate, StrategyTable};
use crate::colour::MullerCondition;
use crate::error::{Error, Result};

/// The condition `{A : |A| > 1}` over the arena's colours.
pub fn more_than_one_over(arena: &Arena) -> MullerCondition {
    MullerCondition::from_predicate(arena.colours().clone(), |s| s.len() > 1)
}

/// Two-state general memory winning `{A : |A| > 1}` from the initial vertex.
///
/// Every Eve vertex `v` has a designated exit `σ0(v)` of colour `c(v)` and an
/// attractor strategy `σ_{c(v)}` towards any colour other than `c(v)`. The
/// memory records whether the edge entering an Eve vertex `w` had colour
/// `c(w)`: if not, `σ0(w)` produces a second colour at once; if so, Eve
/// follows `σ_{c(w)}`. A play that eventually sees one colour `x` would
/// thus follow `σ_x` forever without leaving `x`, which the attractor rules
/// out.
pub fn two_state_memory_min2(arena: &Arena) -> Result<(MemoryStructure, StrategyTable)> {
    if !arena.is_epsilon_free() {
        return Err(Error::precondition("the arena has ε edges"));
    }
    let f = more_than_one_over(arena);
    let solution = solve_muller_game(arena, &f)?;
    if solution.winner != Player::Eve {
        return Err(Error::precondition("Adam wins from the initial vertex"));
    }
    let win = &solution.eve_region;
    let n = arena.vertex_count();
    let colour = |e: usize| arena.edge(e).colour.expect("ε-free");
    let eve = |v: usize| arena.owner(v) == Player::Eve;

    // σ0: smallest edge staying in the winning region (any edge outside it)
    let sigma0: Vec<Option<usize>> = (0..n)
        .map(|v| {
            eve(v).then(|| {
                let out = arena.out_edges(v);
                let stay = out.iter().copied().find(|&e| !win[v] || win[arena.edge(e).to]);
                stay.unwrap_or(out[0])
            })
        })
        .collect();
    let c: Vec<Option<usize>> = sigma0.iter().map(|e| e.map(colour)).collect();

    let colours = arena.colours().len();
    let mut sigma: Vec<Vec<Option<usize>>> = Vec::with_capacity(colours);
    for x in 0..colours {
        let mut reached = vec![false; n];
        let mut choice = sigma0.clone();
        let good = |e: usize, reached: &[bool]| colour(e) != x || reached[arena.edge(e).to];
        let mut changed = true;
        while changed {
            changed = false;
            for v in 0..n {
                if !win[v] || reached[v] {
                    continue;
                }
                let out = arena.out_edges(v);
                let hit = if eve(v) {
                    if c[v] == Some(x) {
                        let e = out.iter().copied().find(|&e| win[arena.edge(e).to] && good(e, &reached));
                        if e.is_some() {
                            choice[v] = e;
                        }
                        e.is_some()
                    } else {
                        true
                    }
                } else {
                    out.iter().all(|&e| good(e, &reached))
                };
                if hit {
                    reached[v] = true;
                    changed = true;
                }
            }
        }
        if (0..n).any(|v| win[v] && !reached[v]) {
            return Err(Error::precondition(format!(
                "Eve cannot force a colour other than {} inside her winning region",
                arena.colours().name(x)
            )));
        }
        sigma.push(choice);
    }

    // entering an Eve vertex w on colour y: state 1 iff y = c(w), so that the
    // pending goal "leave colour y" is exactly what σ_{c(w)} pursues
    let update = (0..2)
        .map(|m| {
            arena
                .edges()
                .iter()
                .map(|edge| match c[edge.to] {
                    None => m,
                    Some(cw) => usize::from(edge.colour == Some(cw)),
                })
                .collect()
        })
        .collect();
    let memory = MemoryStructure { states: 2, initial: 0, update: MemoryUpdate::General(update) };

    let mut table = StrategyTable::default();
    for v in (0..n).filter(|&v| eve(v)) {
        let cv = c[v].expect("Eve vertex has a designated colour");
        table.next_move.insert((v, 0), sigma0[v].expect("Eve vertex has an exit"));
        table.next_move.insert((v, 1), sigma[cv][v].expect("Eve vertex has an exit"));
    }
    Ok((memory, table))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colour::Alphabet;
    use crate::games::arena::GameEdge;
    use crate::games::memory::verify_strategy;

    #[test]
    fn single_vertex_two_loops() {
        let ab = Alphabet::new(["a", "b"]).unwrap();
        let e = |c| GameEdge { from: 0, to: 0, colour: Some(c) };
        let arena = Arena::new(ab, vec![Player::Eve], 0, vec![e(0), e(1)]).unwrap();
        let (memory, table) = two_state_memory_min2(&arena).unwrap();
        assert!(verify_strategy(&arena, &more_than_one_over(&arena), &memory, &table).unwrap());
        assert_eq!(table.next_move[&(0, 0)], 0);
        assert_eq!(table.next_move[&(0, 1)], 1);
    }

    /// Adam's start leads into Eve vertices of different designated colours;
    /// resetting memory only between two Eve vertices would let colour `2`
    /// repeat forever here.
    #[test]
    fn goal_follows_the_entered_vertex() {
        let abc = Alphabet::new(["1", "2", "3"]).unwrap();
        let e = |from, to, c| GameEdge { from, to, colour: Some(c) };
        let edges = vec![
            e(0, 3, 1),
            e(0, 1, 2),
            e(1, 0, 1),
            e(1, 3, 2),
            e(2, 2, 2),
            e(2, 3, 1),
            e(2, 0, 1),
            e(3, 4, 0),
            e(3, 1, 1),
            e(3, 3, 1),
            e(4, 0, 1),
        ];
        let mut owner = vec![Player::Eve; 5];
        owner[0] = Player::Adam;
        let arena = Arena::new(abc, owner, 0, edges).unwrap();
        let (memory, table) = two_state_memory_min2(&arena).unwrap();
        assert!(verify_strategy(&arena, &more_than_one_over(&arena), &memory, &table).unwrap());
    }

    #[test]
    fn preconditions() {
        let ab = Alphabet::new(["a", "b"]).unwrap();
        let lone = Arena::new(ab.clone(), vec![Player::Eve], 0, vec![GameEdge { from: 0, to: 0, colour: Some(0) }]).unwrap();
        assert!(matches!(two_state_memory_min2(&lone), Err(Error::Precondition(_))));
        let eps = Arena::new(
            ab,
            vec![Player::Eve, Player::Eve],
            0,
            vec![GameEdge { from: 0, to: 1, colour: None }, GameEdge { from: 1, to: 0, colour: Some(0) }],
        )
        .unwrap();
        assert!(matches!(two_state_memory_min2(&eps), Err(Error::Precondition(_))));
    }
}
