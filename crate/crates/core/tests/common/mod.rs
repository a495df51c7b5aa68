//! Builders and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use omega_memory::games::{Arena, GameEdge, Player};
use omega_memory::graph::SimpleGraph;
use omega_memory::{Acceptance, Alphabet, Automaton, ColourSet, MullerCondition, Pair, UltimatelyPeriodicWord};
use rand::seq::SliceRandom;
use rand::Rng;

/// Bit `i` of `mask` decides whether the subset with bits `i + 1` accepts.
pub fn condition_from_mask(n: usize, mask: u64) -> MullerCondition {
    let alphabet = Alphabet::numbered(n).unwrap();
    let sets = (1..1u64 << n).filter(|s| mask >> (s - 1) & 1 == 1).map(ColourSet::from_bits);
    MullerCondition::new(alphabet, sets).unwrap()
}

pub fn random_condition(rng: &mut impl Rng, n: usize) -> MullerCondition {
    condition_from_mask(n, rng.gen())
}

pub fn subsets_from_mask(width: usize, mask: u64) -> Vec<ColourSet> {
    (1..1u64 << width).filter(|s| mask >> (s - 1) & 1 == 1).map(ColourSet::from_bits).collect()
}

/// `table[q * sigma + a] = (target, colour)`.
pub fn automaton_from_table(
    n: usize,
    sigma: usize,
    gamma: usize,
    table: &[(usize, usize)],
    acceptance: Acceptance,
) -> Automaton {
    let delta = (0..n).map(|q| table[q * sigma..(q + 1) * sigma].to_vec()).collect();
    Automaton::new(
        Alphabet::numbered(sigma).unwrap(),
        Alphabet::numbered(gamma).unwrap(),
        0,
        delta,
        acceptance,
    )
    .unwrap()
}

pub fn random_table(rng: &mut impl Rng, n: usize, sigma: usize, gamma: usize) -> Vec<(usize, usize)> {
    (0..n * sigma).map(|_| (rng.gen_range(0..n), rng.gen_range(0..gamma))).collect()
}

pub fn random_pairs(rng: &mut impl Rng, gamma: usize) -> Vec<Pair> {
    let count = rng.gen_range(1..=3);
    (0..count)
        .map(|_| {
            Pair::new(
                ColourSet::from_bits(rng.gen_range(0..1u64 << gamma)),
                ColourSet::from_bits(rng.gen_range(0..1u64 << gamma)),
            )
        })
        .collect()
}

pub fn random_rabin_automaton(rng: &mut impl Rng, n: usize, sigma: usize, gamma: usize) -> Automaton {
    let table = random_table(rng, n, sigma, gamma);
    automaton_from_table(n, sigma, gamma, &table, Acceptance::Rabin(random_pairs(rng, gamma)))
}

pub fn random_muller_automaton(rng: &mut impl Rng, n: usize, sigma: usize, gamma: usize) -> Automaton {
    let table = random_table(rng, n, sigma, gamma);
    let sets = subsets_from_mask(gamma, rng.gen());
    automaton_from_table(n, sigma, gamma, &table, Acceptance::Muller(sets))
}

/// Product with a random input-driven DFA of `extra` states; the colours and
/// so the language are unchanged.
pub fn inflate(rng: &mut impl Rng, aut: &Automaton, extra: usize) -> Automaton {
    let sigma = aut.input().len();
    let noise: Vec<Vec<usize>> = (0..extra).map(|_| (0..sigma).map(|_| rng.gen_range(0..extra)).collect()).collect();
    let delta = (0..aut.size() * extra)
        .map(|s| {
            let (q, r) = (s / extra, s % extra);
            (0..sigma)
                .map(|a| {
                    let (t, c) = aut.step(q, a);
                    (t * extra + noise[r][a], c)
                })
                .collect()
        })
        .collect();
    Automaton::new(
        aut.input().clone(),
        aut.output().clone(),
        aut.initial() * extra,
        delta,
        aut.acceptance().clone(),
    )
    .unwrap()
}

/// Colour sets of closed walks through `q`, by breadth-first search over
/// (state, colours seen so far).
pub fn walk_oracle(aut: &Automaton, q: usize) -> BTreeSet<ColourSet> {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    let mut found = BTreeSet::new();
    let push = |s: (usize, u64), seen: &mut HashSet<(usize, u64)>, queue: &mut VecDeque<(usize, u64)>| {
        if seen.insert(s) {
            queue.push_back(s);
        }
    };
    for a in 0..aut.input().len() {
        let (t, c) = aut.step(q, a);
        push((t, 1 << c), &mut seen, &mut queue);
    }
    while let Some((p, mask)) = queue.pop_front() {
        if p == q {
            found.insert(ColourSet::from_bits(mask));
        }
        for a in 0..aut.input().len() {
            let (t, c) = aut.step(p, a);
            push((t, mask | 1 << c), &mut seen, &mut queue);
        }
    }
    found
}

/// Every `u·v^ω` with `|u| <= max_prefix` and `|v| <= max_period` gets the
/// same verdict from `aut` as from `expected`.
pub fn agrees_on_words(
    aut: &Automaton,
    max_prefix: usize,
    max_period: usize,
    expected: impl Fn(&UltimatelyPeriodicWord) -> bool,
) -> bool {
    UltimatelyPeriodicWord::enumerate(aut.input().len(), max_prefix, max_period)
        .iter()
        .all(|w| aut.accepts_up_word(w).unwrap() == expected(w))
}

pub fn recognises_on_words(aut: &Automaton, f: &MullerCondition, max_prefix: usize, max_period: usize) -> bool {
    agrees_on_words(aut, max_prefix, max_period, |w| f.is_accepting(w.inf()))
}

fn canonical_edges(n: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<(usize, usize)>> = None;
    loop {
        let mut mapped: Vec<(usize, usize)> = edges
            .iter()
            .map(|&(a, b)| (perm[a].min(perm[b]), perm[a].max(perm[b])))
            .collect();
        mapped.sort_unstable();
        if best.as_ref().map_or(true, |b| mapped < *b) {
            best = Some(mapped);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap_or_default()
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// One representative of each isomorphism class of simple graphs on `n`
/// vertices.
pub fn graphs_up_to_isomorphism(n: usize) -> Vec<SimpleGraph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let mut classes = BTreeSet::new();
    for mask in 0..1u32 << pairs.len() {
        let edges: Vec<(usize, usize)> =
            pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        classes.insert(canonical_edges(n, &edges));
    }
    classes.into_iter().map(|edges| SimpleGraph::new(n, edges).unwrap()).collect()
}

pub fn is_connected(g: &SimpleGraph) -> bool {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for u in g.neighbours(v) {
            if !seen[u] {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// A random arena over colours `1..=colours` whose edges all carry colours,
/// so it has no ε cycle.
pub fn random_arena(rng: &mut impl Rng, vertices: usize, colours: usize) -> Arena {
    let owner = (0..vertices).map(|_| if rng.gen_bool(0.5) { Player::Eve } else { Player::Adam }).collect();
    let mut edges = Vec::new();
    for v in 0..vertices {
        let mut targets: Vec<usize> = (0..vertices).collect();
        targets.shuffle(rng);
        for &to in &targets[..rng.gen_range(1..=3.min(vertices))] {
            edges.push(GameEdge { from: v, to, colour: Some(rng.gen_range(0..colours)) });
        }
    }
    Arena::new(Alphabet::numbered_from_one(colours).unwrap(), owner, 0, edges).unwrap()
}

/// Fixture graphs for the automaton-level checks.
pub fn fixture_graphs() -> Vec<(&'static str, SimpleGraph)> {
    vec![
        ("single vertex", SimpleGraph::new(1, []).unwrap()),
        ("edgeless on 3", SimpleGraph::new(3, []).unwrap()),
        ("K2", SimpleGraph::complete(2)),
        ("K3", SimpleGraph::complete(3)),
        ("K4", SimpleGraph::complete(4)),
        ("P4", SimpleGraph::path(4)),
        ("C4", SimpleGraph::cycle(4)),
        ("C5", SimpleGraph::cycle(5)),
        ("star K1,3", SimpleGraph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap()),
        ("paw", SimpleGraph::new(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap()),
        ("bowtie", SimpleGraph::new(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap()),
        ("C6", SimpleGraph::cycle(6)),
        ("wheel W5", SimpleGraph::new(6, (1..6).flat_map(|i| [(0, i), (i, i % 5 + 1)])).unwrap()),
    ]
}
