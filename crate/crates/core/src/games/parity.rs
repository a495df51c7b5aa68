//! Parity games with vertex priorities (max-even), solved by the recursive
//! attractor algorithm, and the product of an arena with a parity automaton.

use std::collections::VecDeque;

use super::arena::{Arena, Player};
use crate::acceptance::Acceptance;
use crate::automaton::Automaton;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityGame {
    pub owner: Vec<Player>,
    pub priority: Vec<u32>,
    pub succ: Vec<Vec<usize>>,
}

/// Winning regions and a positional choice for the owner of every vertex;
/// the choice is winning wherever its owner wins.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParitySolution {
    pub winner: Vec<Player>,
    pub strategy: Vec<usize>,
}

impl ParityGame {
    pub fn new(owner: Vec<Player>, priority: Vec<u32>, succ: Vec<Vec<usize>>) -> Result<Self> {
        let n = owner.len();
        if priority.len() != n || succ.len() != n {
            return Err(Error::malformed("owner, priority and successor lists differ in length"));
        }
        for (v, s) in succ.iter().enumerate() {
            if s.is_empty() {
                return Err(Error::malformed(format!("vertex {v} has no successor")));
            }
            if s.iter().any(|&w| w >= n) {
                return Err(Error::malformed(format!("vertex {v} has a missing successor")));
            }
        }
        Ok(ParityGame { owner, priority, succ })
    }

    pub fn vertex_count(&self) -> usize {
        self.owner.len()
    }

    fn predecessors(&self) -> Vec<Vec<usize>> {
        let mut pred = vec![Vec::new(); self.vertex_count()];
        for (v, s) in self.succ.iter().enumerate() {
            for &w in s {
                pred[w].push(v);
            }
        }
        pred
    }
}

fn player_of(p: u32) -> Player {
    if p % 2 == 0 {
        Player::Eve
    } else {
        Player::Adam
    }
}

struct Solver<'a> {
    game: &'a ParityGame,
    pred: Vec<Vec<usize>>,
}

impl Solver<'_> {
    /// Attractor of `target` for `player` inside `alive`, recording an
    /// attracting successor for `player`'s vertices outside `target`.
    fn attractor(&self, alive: &[bool], target: &[usize], player: Player, strategy: &mut [usize]) -> Vec<bool> {
        let g = self.game;
        let n = g.vertex_count();
        let mut inside = vec![false; n];
        let mut count: Vec<usize> =
            (0..n).map(|v| if alive[v] { g.succ[v].iter().filter(|&&w| alive[w]).count() } else { 0 }).collect();
        let mut queue = VecDeque::new();
        for &v in target {
            if !inside[v] {
                inside[v] = true;
                queue.push_back(v);
            }
        }
        while let Some(w) = queue.pop_front() {
            for &v in &self.pred[w] {
                if !alive[v] || inside[v] {
                    continue;
                }
                if g.owner[v] == player {
                    inside[v] = true;
                    strategy[v] = w;
                    queue.push_back(v);
                } else {
                    count[v] -= 1;
                    if count[v] == 0 {
                        inside[v] = true;
                        queue.push_back(v);
                    }
                }
            }
        }
        inside
    }

    /// Solves the subgame on `alive`, which must be closed for both players'
    /// choices to be available. Writes winners and strategies for those vertices.
    fn solve(&self, alive: &[bool], winner: &mut [Player], strategy: &mut [usize]) {
        let g = self.game;
        let Some(p) = (0..g.vertex_count()).filter(|&v| alive[v]).map(|v| g.priority[v]).max() else {
            return;
        };
        let me = player_of(p);
        let top: Vec<usize> = (0..g.vertex_count()).filter(|&v| alive[v] && g.priority[v] == p).collect();
        let attr = self.attractor(alive, &top, me, strategy);
        for &v in &top {
            if g.owner[v] == me {
                strategy[v] = *g.succ[v].iter().find(|&&w| alive[w]).expect("subgame vertex has a successor");
            }
        }
        let rest: Vec<bool> = (0..g.vertex_count()).map(|v| alive[v] && !attr[v]).collect();
        self.solve(&rest, winner, strategy);
        let opponent_region: Vec<usize> =
            (0..g.vertex_count()).filter(|&v| rest[v] && winner[v] == me.opponent()).collect();
        if opponent_region.is_empty() {
            for v in (0..g.vertex_count()).filter(|&v| alive[v]) {
                winner[v] = me;
            }
            return;
        }
        let lost = self.attractor(alive, &opponent_region, me.opponent(), strategy);
        for v in (0..g.vertex_count()).filter(|&v| lost[v]) {
            winner[v] = me.opponent();
        }
        let remaining: Vec<bool> = (0..g.vertex_count()).map(|v| alive[v] && !lost[v]).collect();
        self.solve(&remaining, winner, strategy);
    }
}

pub fn solve_parity_game(game: &ParityGame) -> ParitySolution {
    let n = game.vertex_count();
    let solver = Solver { game, pred: game.predecessors() };
    let mut winner = vec![Player::Eve; n];
    let mut strategy: Vec<usize> = game.succ.iter().map(|s| s[0]).collect();
    solver.solve(&vec![true; n], &mut winner, &mut strategy);
    ParitySolution { winner, strategy }
}

/// Product of an arena with a parity automaton over its colours. Vertex
/// `(v, q)` has index `v * |Q| + q`; each game edge `e` leaving `v` gets a
/// midpoint vertex `(e, q)` carrying the edge's output priority, so the
/// pair vertices themselves have priority 0.
#[derive(Debug, Clone)]
pub struct ProductGame {
    pub game: ParityGame,
    pub states: usize,
    pub arena_vertices: usize,
}

impl ProductGame {
    pub fn vertex(&self, v: usize, q: usize) -> usize {
        v * self.states + q
    }

    /// The game edge behind a midpoint vertex.
    pub fn edge_of_midpoint(&self, mid: usize) -> Option<usize> {
        let base = self.arena_vertices * self.states;
        (mid >= base).then(|| (mid - base) / self.states)
    }
}

pub fn product_with_parity(arena: &Arena, aut: &Automaton) -> Result<ProductGame> {
    let Acceptance::Parity(prio) = aut.acceptance() else {
        return Err(Error::Unsupported("the product needs a parity automaton".into()));
    };
    if aut.input() != arena.colours() {
        return Err(Error::AlphabetMismatch("automaton input differs from the arena colours".into()));
    }
    let k = aut.size();
    let nv = arena.vertex_count();
    let neutral = prio.iter().copied().min().expect("parity condition has a priority");
    let total = nv * k + arena.edges().len() * k;
    let mut owner = vec![Player::Eve; total];
    let mut priority = vec![0u32; total];
    let mut succ = vec![Vec::new(); total];
    for v in 0..nv {
        for q in 0..k {
            owner[v * k + q] = arena.owner(v);
            succ[v * k + q] = arena.out_edges(v).iter().map(|&e| nv * k + e * k + q).collect();
        }
    }
    for (e, edge) in arena.edges().iter().enumerate() {
        for q in 0..k {
            let mid = nv * k + e * k + q;
            let (next, p) = match edge.colour {
                Some(c) => {
                    let (t, out) = aut.step(q, c);
                    (t, prio[out])
                }
                None => (q, neutral),
            };
            priority[mid] = p;
            succ[mid] = vec![edge.to * k + next];
        }
    }
    Ok(ProductGame { game: ParityGame::new(owner, priority, succ)?, states: k, arena_vertices: nv })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use crate::scc::{scc_decomposition, Digraph};

    #[test]
    fn single_loops() {
        let even = ParityGame::new(vec![Player::Adam], vec![2], vec![vec![0]]).unwrap();
        assert_eq!(solve_parity_game(&even).winner, vec![Player::Eve]);
        let odd = ParityGame::new(vec![Player::Eve], vec![1], vec![vec![0]]).unwrap();
        assert_eq!(solve_parity_game(&odd).winner, vec![Player::Adam]);
    }

    /// Vertices from which the one-player graph (choices of `fixed` frozen)
    /// has no reachable cycle whose top priority favours the other player.
    fn wins_with(game: &ParityGame, fixed: Player, choice: &[usize]) -> Vec<bool> {
        let n = game.vertex_count();
        let mut g = Digraph::new(n);
        for v in 0..n {
            if game.owner[v] == fixed {
                g.add_edge(v, choice[v]);
            } else {
                for &w in &game.succ[v] {
                    g.add_edge(v, w);
                }
            }
        }
        let mut bad = vec![false; n];
        for p in game.priority.iter().copied().filter(|&p| player_of(p) != fixed) {
            for c in scc_decomposition(&g, |v| game.priority[v] <= p, |_| true) {
                if !c.is_trivial() && c.vertices.iter().any(|&v| game.priority[v] == p) {
                    for v in c.vertices {
                        bad[v] = true;
                    }
                }
            }
        }
        // backwards reachability to a bad cycle
        let mut changed = true;
        while changed {
            changed = false;
            for e in 0..g.edge_count() {
                if bad[g.target(e)] && !bad[g.source(e)] {
                    bad[g.source(e)] = true;
                    changed = true;
                }
            }
        }
        bad.into_iter().map(|b| !b).collect()
    }

    fn random_game(rng: &mut ChaCha8Rng, n: usize) -> ParityGame {
        let owner = (0..n).map(|_| if rng.gen_bool(0.5) { Player::Eve } else { Player::Adam }).collect();
        let priority = (0..n).map(|_| rng.gen_range(0..5)).collect();
        let succ = (0..n)
            .map(|_| {
                let a = rng.gen_range(0..n);
                let b = rng.gen_range(0..n);
                if a == b {
                    vec![a]
                } else {
                    vec![a, b]
                }
            })
            .collect();
        ParityGame::new(owner, priority, succ).unwrap()
    }

    fn all_choices(game: &ParityGame, player: Player) -> Vec<Vec<usize>> {
        let mut all = vec![game.succ.iter().map(|s| s[0]).collect::<Vec<_>>()];
        for v in (0..game.vertex_count()).filter(|&v| game.owner[v] == player && game.succ[v].len() > 1) {
            all = all
                .into_iter()
                .flat_map(|c| {
                    game.succ[v].iter().map(move |&w| {
                        let mut c = c.clone();
                        c[v] = w;
                        c
                    })
                })
                .collect();
        }
        all
    }

    #[test]
    fn matches_positional_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let game = random_game(&mut rng, 20);
            let sol = solve_parity_game(&game);
            for player in [Player::Eve, Player::Adam] {
                let mut region = vec![false; 20];
                for c in all_choices(&game, player) {
                    for (v, w) in wins_with(&game, player, &c).into_iter().enumerate() {
                        region[v] |= w;
                    }
                }
                let expected: Vec<bool> = sol.winner.iter().map(|&w| w == player).collect();
                assert_eq!(region, expected);
                // the returned strategy wins the whole region
                let own = wins_with(&game, player, &sol.strategy);
                assert!(expected.iter().zip(&own).all(|(&e, &o)| !e || o));
            }
        }
    }
}
