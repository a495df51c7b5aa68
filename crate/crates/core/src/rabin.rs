//! Rabin conditions on top of a fixed transition structure, language
//! equivalence of deterministic automata, and the exhaustive search for
//! minimal Rabin automata of a Muller language.

use std::collections::{BTreeSet, HashMap, VecDeque};

use rayon::prelude::*;

use crate::acceptance::{dualise, Acceptance, Pair};
use crate::automaton::{Automaton, EdgeId};
use crate::colour::{Alphabet, ColourSet, MullerCondition, MAX_ALPHABET};
use crate::error::{Error, Result, TypenessWitness};
use crate::scc::{cycle_colour_sets, scc_decomposition, Digraph};

/// Product states explored by [`muller_equivalent`] before giving up.
pub const DEFAULT_PRODUCT_LIMIT: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RabinTypenessReport {
    pub typeable: bool,
    pub witness: Option<TypenessWitness>,
}

/// First state (then first pair of sets, by bits) at which two rejecting
/// cycle sets have an accepting union.
fn typeness_witness(
    per_state: impl IntoIterator<Item = (usize, Vec<u64>)>,
    accepts: impl Fn(u64) -> bool,
) -> Option<(usize, u64, u64)> {
    for (q, sets) in per_state {
        let rejecting: Vec<u64> = sets.into_iter().filter(|&s| !accepts(s)).collect();
        for (i, &a) in rejecting.iter().enumerate() {
            for &b in &rejecting[i + 1..] {
                if a & b != a && a & b != b && accepts(a | b) {
                    return Some((q, a, b));
                }
            }
        }
    }
    None
}

fn sets_by_vertex(found: std::collections::BTreeMap<u64, BTreeSet<usize>>, n: usize) -> Vec<(usize, Vec<u64>)> {
    let mut per: Vec<Vec<u64>> = vec![Vec::new(); n];
    for (set, vs) in found {
        for v in vs {
            per[v].push(set);
        }
    }
    per.into_iter().enumerate().collect()
}

/// Whether some Rabin condition on top of the automaton's transition
/// structure recognises the same language: no state has two rejecting
/// cycles through it whose union is accepting.
pub fn check_rabin_typeable(aut: &Automaton) -> RabinTypenessReport {
    let per_state = aut
        .cycle_sets_by_state()
        .into_iter()
        .enumerate()
        .map(|(q, sets)| (q, sets.into_iter().map(ColourSet::bits).collect()));
    let acc = aut.acceptance();
    match typeness_witness(per_state, |s| acc.accepts(ColourSet::from_bits(s))) {
        None => RabinTypenessReport { typeable: true, witness: None },
        Some((state, a, b)) => RabinTypenessReport {
            typeable: false,
            witness: Some(TypenessWitness {
                state,
                first: ColourSet::from_bits(a),
                second: ColourSet::from_bits(b),
            }),
        },
    }
}

/// Same transition structure, each edge coloured by its own identity
/// `"q:a"`, with one Rabin pair per accepting cycle `C`:
/// `E = C` minus the rejecting cycles inside `C`, `F` = every edge outside `C`.
pub fn synthesize_rabin_pairs(aut: &Automaton) -> Result<Automaton> {
    let report = check_rabin_typeable(aut);
    if let Some(w) = report.witness {
        return Err(Error::NotRabinTypeable(w));
    }
    let m = aut.edge_count();
    if m > MAX_ALPHABET {
        return Err(Error::ScaleGuard(format!("{m} edges exceed the {MAX_ALPHABET}-colour limit")));
    }
    let g = aut.graph();
    let masks: Vec<u64> = (0..m).map(|e| 1u64 << e).collect();
    let cycles: Vec<u64> = cycle_colour_sets(&g, &masks, |_| true).into_keys().collect();
    let status: HashMap<u64, bool> = cycles
        .iter()
        .map(|&c| {
            let colours: ColourSet = ColourSet::from_bits(c).iter().map(|e| aut.edge(e).3).collect();
            (c, aut.acceptance().accepts(colours))
        })
        .collect();
    let all = ColourSet::full(m).bits();
    let mut pairs = BTreeSet::new();
    for &c in cycles.iter().filter(|c| status[c]) {
        let covered = cycles
            .iter()
            .filter(|&&r| !status[&r] && r & !c == 0)
            .fold(0u64, |acc, r| acc | r);
        pairs.insert((c & !covered, all & !c));
    }
    let pairs = pairs
        .into_iter()
        .map(|(e, f)| Pair::new(ColourSet::from_bits(e), ColourSet::from_bits(f)))
        .collect();
    let names = (0..m).map(|e| {
        let (q, a, _, _) = aut.edge(e);
        format!("{q}:{}", aut.input().name(a))
    });
    let output = Alphabet::new(names)?;
    aut.recoloured(output, |e: EdgeId| e, Acceptance::Rabin(pairs))
}

fn require_same_input(a1: &Automaton, a2: &Automaton) -> Result<()> {
    if a1.input() != a2.input() {
        return Err(Error::AlphabetMismatch("automata read different input alphabets".into()));
    }
    Ok(())
}

/// Reachable part of the synchronous product; edges carry both output colours.
struct Product {
    graph: Digraph,
    colours: Vec<(usize, usize)>,
}

fn product(a1: &Automaton, a2: &Automaton, limit: usize) -> Result<Product> {
    let sigma = a1.input().len();
    let mut index: HashMap<(usize, usize), usize> = HashMap::from([((0, 0), 0)]);
    let mut states = vec![(0, 0)];
    let mut queue = VecDeque::from([0usize]);
    let mut edges = Vec::new();
    let mut colours = Vec::new();
    while let Some(i) = queue.pop_front() {
        let (p, q) = states[i];
        for a in 0..sigma {
            let (p2, c1) = a1.step(p, a);
            let (q2, c2) = a2.step(q, a);
            let j = *index.entry((p2, q2)).or_insert_with(|| {
                states.push((p2, q2));
                queue.push_back(states.len() - 1);
                states.len() - 1
            });
            if states.len() > limit {
                return Err(Error::ScaleGuard(format!("product exceeds {limit} states")));
            }
            edges.push((i, j));
            colours.push((c1, c2));
        }
    }
    Ok(Product { graph: Digraph::from_edges(states.len(), edges), colours })
}

/// Whether some cycle within `edges` meets `target` (first-component colours)
/// and satisfies the Streett pairs on the second-component colours.
fn streett_nonempty(p: &Product, edges: &[usize], target: ColourSet, streett: &[Pair]) -> bool {
    let mut active = vec![false; p.graph.edge_count()];
    for &e in edges {
        active[e] = true;
    }
    for comp in scc_decomposition(&p.graph, |_| true, |e| active[e]) {
        if comp.is_trivial() || !comp.edges.iter().any(|&e| target.contains(p.colours[e].0)) {
            continue;
        }
        let seen: ColourSet = comp.edges.iter().map(|&e| p.colours[e].1).collect();
        let bad: ColourSet = streett
            .iter()
            .filter(|s| seen.intersects(s.e) && !seen.intersects(s.f))
            .fold(ColourSet::EMPTY, |acc, s| acc.union(s.e));
        if bad.is_empty() {
            return true;
        }
        let rest: Vec<usize> = comp.edges.iter().copied().filter(|&e| !bad.contains(p.colours[e].1)).collect();
        if streett_nonempty(p, &rest, target, streett) {
            return true;
        }
    }
    false
}

fn rabin_contained(a1: &Automaton, a2: &Automaton) -> Result<bool> {
    let pairs1 = a1.acceptance().as_rabin(a1.output().len())?;
    let Acceptance::Streett(co2) = dualise(&Acceptance::Rabin(a2.acceptance().as_rabin(a2.output().len())?))? else {
        unreachable!("the dual of a Rabin condition is Streett")
    };
    let p = product(a1, a2, usize::MAX)?;
    for pair in pairs1 {
        let edges: Vec<usize> = (0..p.graph.edge_count()).filter(|&e| !pair.f.contains(p.colours[e].0)).collect();
        if streett_nonempty(&p, &edges, pair.e, &co2) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Language equality of automata with Rabin presentations (Rabin, parity or
/// generalised co-Büchi), in polynomial time.
pub fn rabin_equivalent(a1: &Automaton, a2: &Automaton) -> Result<bool> {
    require_same_input(a1, a2)?;
    Ok(rabin_contained(a1, a2)? && rabin_contained(a2, a1)?)
}

/// Language equality for any acceptance kinds, by comparing acceptance on
/// every colour-set pair realised by a reachable cycle of the product.
pub fn muller_equivalent(a1: &Automaton, a2: &Automaton) -> Result<bool> {
    muller_equivalent_with_limit(a1, a2, DEFAULT_PRODUCT_LIMIT)
}

pub fn muller_equivalent_with_limit(a1: &Automaton, a2: &Automaton, limit: usize) -> Result<bool> {
    require_same_input(a1, a2)?;
    let w1 = a1.output().len();
    if w1 + a2.output().len() > MAX_ALPHABET {
        return Err(Error::ScaleGuard(format!(
            "{} + {} output colours exceed {MAX_ALPHABET} combined",
            w1,
            a2.output().len()
        )));
    }
    let p = product(a1, a2, limit)?;
    let masks: Vec<u64> = p.colours.iter().map(|&(c1, c2)| (1u64 << c1) | (1u64 << (w1 + c2))).collect();
    let low = (1u64 << w1) - 1;
    Ok(cycle_colour_sets(&p.graph, &masks, |_| true).into_keys().all(|m| {
        a1.acceptance().accepts(ColourSet::from_bits(m & low)) == a2.acceptance().accepts(ColourSet::from_bits(m >> w1))
    }))
}

/// A deterministic complete transition structure over a letter alphabet,
/// without outputs. State 0 is initial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionStructure {
    pub delta: Vec<Vec<usize>>,
}

impl TransitionStructure {
    pub fn size(&self) -> usize {
        self.delta.len()
    }

    /// The Muller automaton reading and outputting the letters of `f`.
    pub fn to_automaton(&self, f: &MullerCondition) -> Result<Automaton> {
        let delta = self.delta.iter().map(|row| row.iter().enumerate().map(|(a, &t)| (t, a)).collect()).collect();
        Automaton::new(f.alphabet().clone(), f.alphabet().clone(), 0, delta, Acceptance::muller(f))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinRabinResult {
    Found { size: usize, structure: TransitionStructure },
    /// No Rabin automaton with at most this many states.
    Unknown { searched_up_to: usize },
}

impl MinRabinResult {
    pub fn size(&self) -> Option<usize> {
        match self {
            MinRabinResult::Found { size, .. } => Some(*size),
            MinRabinResult::Unknown { .. } => None,
        }
    }
}

/// Partial transition table filled row by row, states numbered by first
/// appearance.
struct Search<'a> {
    f: &'a MullerCondition,
    k: usize,
    sigma: usize,
    cells: Vec<Option<usize>>,
}

impl Search<'_> {
    fn max_used(&self) -> usize {
        self.cells.iter().flatten().copied().max().unwrap_or(0)
    }

    fn typeable_so_far(&self) -> bool {
        let mut g = Digraph::new(self.k);
        let mut masks = Vec::new();
        for (cell, t) in self.cells.iter().enumerate() {
            if let Some(t) = t {
                g.add_edge(cell / self.sigma, *t);
                masks.push(1u64 << (cell % self.sigma));
            }
        }
        let found = cycle_colour_sets(&g, &masks, |_| true);
        typeness_witness(sets_by_vertex(found, self.k), |s| self.f.is_accepting(ColourSet::from_bits(s))).is_none()
    }

    fn extend(&mut self, cell: usize, max_used: usize) -> bool {
        if cell == self.cells.len() {
            return max_used + 1 == self.k;
        }
        let state = cell / self.sigma;
        if state > max_used {
            return false;
        }
        for t in 0..=(max_used + 1).min(self.k - 1) {
            self.cells[cell] = Some(t);
            let ok = t > max_used || self.typeable_so_far();
            if ok && self.extend(cell + 1, max_used.max(t)) {
                return true;
            }
        }
        self.cells[cell] = None;
        false
    }

    fn structure(&self) -> TransitionStructure {
        TransitionStructure {
            delta: self
                .cells
                .chunks(self.sigma)
                .map(|row| row.iter().map(|t| t.expect("complete table")).collect())
                .collect(),
        }
    }
}

/// Canonical first rows of a `k`-state table over `sigma` letters.
fn first_rows(k: usize, sigma: usize) -> Vec<Vec<usize>> {
    let mut rows = vec![(vec![], 0usize)];
    for _ in 0..sigma {
        rows = rows
            .into_iter()
            .flat_map(|(row, max): (Vec<usize>, usize)| {
                (0..=(max + 1).min(k - 1)).map(move |t| {
                    let mut r = row.clone();
                    r.push(t);
                    (r, max.max(t))
                })
            })
            .collect();
    }
    rows.into_iter().map(|(r, _)| r).collect()
}

fn search_size(f: &MullerCondition, k: usize) -> Option<TransitionStructure> {
    let sigma = f.alphabet().len();
    first_rows(k, sigma).into_par_iter().find_map_first(|row| {
        let mut s = Search { f, k, sigma, cells: vec![None; k * sigma] };
        for (a, &t) in row.iter().enumerate() {
            s.cells[a] = Some(t);
        }
        if !s.typeable_so_far() {
            return None;
        }
        let max_used = s.max_used();
        s.extend(sigma, max_used).then(|| s.structure())
    })
}

/// Least number of states of a Rabin automaton for the Muller language of
/// `f`, searching sizes `1..=k_max`. The witness structure, read with
/// output equal to input, is Rabin-typeable for `f`.
pub fn min_rabin_size(f: &MullerCondition, k_max: usize) -> Result<MinRabinResult> {
    if k_max == 0 {
        return Err(Error::precondition("k_max must be at least 1"));
    }
    for k in 1..=k_max {
        if let Some(structure) = search_size(f, k) {
            return Ok(MinRabinResult::Found { size: k, structure });
        }
    }
    Ok(MinRabinResult::Unknown { searched_up_to: k_max })
}

/// Chromatic memory requirement of `f`, which equals its minimal Rabin
/// automaton size. `None` if it exceeds `k_max`.
pub fn mem_chrom(f: &MullerCondition, k_max: usize) -> Result<Option<usize>> {
    Ok(min_rabin_size(f, k_max)?.size())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zielonka::{mem_gen, zt_to_parity};

    fn cs(ix: &[usize]) -> ColourSet {
        ColourSet::from_indices(ix.iter().copied())
    }

    fn one_state(acc: Acceptance) -> Automaton {
        let ab = Alphabet::new(["a", "b"]).unwrap();
        Automaton::new(ab.clone(), ab, 0, vec![vec![(0, 0), (0, 1)]], acc).unwrap()
    }

    #[test]
    fn two_loops_with_accepting_union_are_not_typeable() {
        let a = one_state(Acceptance::Muller(vec![cs(&[0, 1])]));
        let r = check_rabin_typeable(&a);
        assert!(!r.typeable);
        assert_eq!(r.witness, Some(TypenessWitness { state: 0, first: cs(&[0]), second: cs(&[1]) }));
        assert!(matches!(synthesize_rabin_pairs(&a), Err(Error::NotRabinTypeable(_))));
    }

    #[test]
    fn parity_automata_are_typeable() {
        let a = zt_to_parity(&MullerCondition::exactly_two(3).unwrap());
        assert!(check_rabin_typeable(&a).typeable);
    }

    #[test]
    fn synthesis_on_single_loop() {
        let a = Alphabet::new(["a"]).unwrap();
        let aut = Automaton::new(a.clone(), a, 0, vec![vec![(0, 0)]], Acceptance::Muller(vec![cs(&[0])])).unwrap();
        let r = synthesize_rabin_pairs(&aut).unwrap();
        assert_eq!(r.acceptance(), &Acceptance::Rabin(vec![Pair::new(cs(&[0]), ColourSet::EMPTY)]));
        assert_eq!(r.output().symbols(), ["0:a"]);
        assert!(muller_equivalent(&aut, &r).unwrap());
    }

    #[test]
    fn equivalence_checks() {
        let rabin = one_state(Acceptance::Rabin(vec![Pair::new(cs(&[0]), cs(&[1]))]));
        let streett = one_state(Acceptance::Streett(vec![Pair::new(cs(&[0]), cs(&[1]))]));
        assert!(rabin_equivalent(&rabin, &rabin).unwrap());
        assert!(muller_equivalent(&rabin, &rabin).unwrap());
        assert!(!muller_equivalent(&rabin, &streett).unwrap());

        // the same language written as a Muller family
        let muller = one_state(Acceptance::Muller(vec![cs(&[0])]));
        assert!(muller_equivalent(&rabin, &muller).unwrap());
        let other = one_state(Acceptance::Rabin(vec![Pair::new(cs(&[1]), ColourSet::EMPTY)]));
        assert!(!rabin_equivalent(&rabin, &other).unwrap());

        let c = Alphabet::new(["a", "c"]).unwrap();
        let diff = Automaton::new(c.clone(), c, 0, vec![vec![(0, 0), (0, 1)]], Acceptance::GenBuchi(vec![])).unwrap();
        assert!(matches!(muller_equivalent(&rabin, &diff), Err(Error::AlphabetMismatch(_))));
    }

    #[test]
    fn min_rabin_examples() {
        let a = Alphabet::new(["a"]).unwrap();
        let single = MullerCondition::new(a, [cs(&[0])]).unwrap();
        assert_eq!(mem_chrom(&single, 3).unwrap(), Some(1));

        let f3 = MullerCondition::exactly_two(3).unwrap();
        let result = min_rabin_size(&f3, 4).unwrap();
        assert_eq!(result.size(), Some(3));
        let MinRabinResult::Found { structure, .. } = result else { panic!() };
        assert!(check_rabin_typeable(&structure.to_automaton(&f3).unwrap()).typeable);
        assert_eq!(min_rabin_size(&f3, 2).unwrap(), MinRabinResult::Unknown { searched_up_to: 2 });

        let more = MullerCondition::more_than_one(3).unwrap();
        assert_eq!(mem_chrom(&more, 4).unwrap(), Some(3));
        assert_eq!(mem_gen(&more), 3);
    }

    #[test]
    fn first_rows_are_canonical() {
        assert_eq!(first_rows(3, 2), vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1], vec![1, 2]]);
    }
}
