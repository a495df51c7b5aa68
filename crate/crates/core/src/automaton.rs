//! Deterministic, complete, transition-based automata.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::acceptance::Acceptance;
use crate::colour::{Alphabet, ColourSet, MullerCondition, MAX_ALPHABET};
use crate::error::{Error, Result};
use crate::scc::{cycle_colour_sets, scc_decomposition, Digraph};

/// Edge identifier `(state, input symbol)`, flattened as `state * |Σ| + symbol`.
pub type EdgeId = usize;

/// A deterministic complete automaton with transition-based output colours.
///
/// Construction normalises the automaton: unreachable states are removed
/// and the remaining ones are renumbered in BFS order from the initial
/// state (exploring symbols in alphabet order), so the initial state is
/// always `0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automaton {
    input: Alphabet,
    output: Alphabet,
    /// `delta[q][a] = (target, output colour)`
    delta: Vec<Vec<(usize, usize)>>,
    acceptance: Acceptance,
}

impl Automaton {
    pub fn new(
        input: Alphabet,
        output: Alphabet,
        initial: usize,
        delta: Vec<Vec<(usize, usize)>>,
        acceptance: Acceptance,
    ) -> Result<Self> {
        let n = delta.len();
        if n == 0 {
            return Err(Error::malformed("automaton has no states"));
        }
        if initial >= n {
            return Err(Error::malformed(format!("initial state {initial} out of range")));
        }
        for (q, row) in delta.iter().enumerate() {
            if row.len() != input.len() {
                return Err(Error::malformed(format!(
                    "state {q} has {} transitions, expected one per input symbol ({})",
                    row.len(),
                    input.len()
                )));
            }
            for &(t, c) in row {
                if t >= n {
                    return Err(Error::malformed(format!("transition from {q} to missing state {t}")));
                }
                if c >= output.len() {
                    return Err(Error::malformed(format!("transition from {q} outputs unknown colour {c}")));
                }
            }
        }
        check_acceptance(&acceptance, &output)?;
        let mut a = Automaton { input, output, delta, acceptance };
        a.normalise(initial);
        Ok(a)
    }

    fn normalise(&mut self, initial: usize) {
        let n = self.delta.len();
        let mut order = Vec::with_capacity(n);
        let mut new_id = vec![usize::MAX; n];
        let mut queue = VecDeque::from([initial]);
        new_id[initial] = 0;
        order.push(initial);
        while let Some(q) = queue.pop_front() {
            for &(t, _) in &self.delta[q] {
                if new_id[t] == usize::MAX {
                    new_id[t] = order.len();
                    order.push(t);
                    queue.push_back(t);
                }
            }
        }
        self.delta = order
            .iter()
            .map(|&q| self.delta[q].iter().map(|&(t, c)| (new_id[t], c)).collect())
            .collect();
    }

    pub fn input(&self) -> &Alphabet {
        &self.input
    }

    pub fn output(&self) -> &Alphabet {
        &self.output
    }

    pub fn acceptance(&self) -> &Acceptance {
        &self.acceptance
    }

    /// Same structure with a different acceptance condition over a different
    /// output alphabet, colouring each edge with `recolour(edge)`.
    pub fn recoloured(
        &self,
        output: Alphabet,
        recolour: impl Fn(EdgeId) -> usize,
        acceptance: Acceptance,
    ) -> Result<Automaton> {
        let delta = (0..self.size())
            .map(|q| {
                (0..self.input.len())
                    .map(|a| (self.delta[q][a].0, recolour(self.edge_id(q, a))))
                    .collect()
            })
            .collect();
        Automaton::new(self.input.clone(), output, 0, delta, acceptance)
    }

    pub fn with_acceptance(&self, acceptance: Acceptance) -> Result<Automaton> {
        check_acceptance(&acceptance, &self.output)?;
        Ok(Automaton { acceptance, ..self.clone() })
    }

    /// Number of states.
    pub fn size(&self) -> usize {
        self.delta.len()
    }

    pub fn initial(&self) -> usize {
        0
    }

    pub fn step(&self, q: usize, a: usize) -> (usize, usize) {
        self.delta[q][a]
    }

    pub fn delta(&self) -> &[Vec<(usize, usize)>] {
        &self.delta
    }

    pub fn edge_count(&self) -> usize {
        self.size() * self.input.len()
    }

    pub fn edge_id(&self, q: usize, a: usize) -> EdgeId {
        q * self.input.len() + a
    }

    /// `(source, input, target, output)` of an edge.
    pub fn edge(&self, e: EdgeId) -> (usize, usize, usize, usize) {
        let q = e / self.input.len();
        let a = e % self.input.len();
        let (t, c) = self.delta[q][a];
        (q, a, t, c)
    }

    /// The graph G(A); edge ids coincide with [`EdgeId`].
    pub fn graph(&self) -> Digraph {
        let mut g = Digraph::new(self.size());
        for q in 0..self.size() {
            for a in 0..self.input.len() {
                g.add_edge(q, self.delta[q][a].0);
            }
        }
        g
    }

    /// Acceptance status of a set of output colours.
    pub fn accepting_colour_set(&self, set: ColourSet) -> Result<bool> {
        if set.is_empty() {
            return Err(Error::precondition("acceptance queried on the empty colour set"));
        }
        self.output.check_set(set)?;
        Ok(self.acceptance.accepts(set))
    }

    /// Runs `u·v^ω` and decides acceptance from the colours produced on the
    /// eventual loop.
    pub fn accepts_up_word(&self, word: &UltimatelyPeriodicWord) -> Result<bool> {
        let sigma = self.input.len();
        if let Some(&bad) = word.prefix.iter().chain(&word.period).find(|&&a| a >= sigma) {
            return Err(Error::malformed(format!("word symbol {bad} outside the input alphabet")));
        }
        let mut q = 0;
        for &a in &word.prefix {
            q = self.delta[q][a].0;
        }
        // state at the start of each period iteration until one repeats
        let mut seen: HashMap<usize, usize> = HashMap::new();
        let mut starts = Vec::new();
        let mut colours_per_round = Vec::new();
        let loop_from = loop {
            if let Some(&i) = seen.get(&q) {
                break i;
            }
            seen.insert(q, starts.len());
            starts.push(q);
            let mut round = ColourSet::EMPTY;
            for &a in &word.period {
                let (t, c) = self.delta[q][a];
                round.insert(c);
                q = t;
            }
            colours_per_round.push(round);
        };
        let inf = colours_per_round[loop_from..]
            .iter()
            .fold(ColourSet::EMPTY, |acc, r| acc.union(*r));
        self.accepting_colour_set(inf)
    }

    /// Output colour sets `C` such that some cycle through `q` has colour set
    /// exactly `C`. For each candidate `C` the graph is restricted to edges
    /// coloured inside `C`; `C` is realisable at `q` when the component of
    /// `q` contains an edge of every colour of `C`.
    pub fn realizable_cycle_sets(&self, q: usize) -> BTreeSet<ColourSet> {
        let g = self.graph();
        let colours: Vec<usize> = (0..self.edge_count()).map(|e| self.edge(e).3).collect();
        let mut result = BTreeSet::new();
        for c in self.output.full().nonempty_subsets() {
            let comps = scc_decomposition(&g, |_| true, |e| c.contains(colours[e]));
            if let Some(comp) = comps.iter().find(|k| k.vertices.binary_search(&q).is_ok()) {
                let seen: ColourSet = comp.edges.iter().map(|&e| colours[e]).collect();
                if seen == c {
                    result.insert(c);
                }
            }
        }
        result
    }

    /// For every state, the colour sets realised by cycles through it.
    /// Uses the descent enumeration, so it scales with the number of
    /// realisable sets rather than with `2^|Γ|`.
    pub fn cycle_sets_by_state(&self) -> Vec<BTreeSet<ColourSet>> {
        let g = self.graph();
        let masks: Vec<u64> = (0..self.edge_count()).map(|e| 1u64 << self.edge(e).3).collect();
        let mut per_state = vec![BTreeSet::new(); self.size()];
        for (set, states) in cycle_colour_sets(&g, &masks, |_| true) {
            for q in states {
                per_state[q].insert(ColourSet::from_bits(set));
            }
        }
        per_state
    }

    /// Input letter sets realised by cycles through each state.
    pub fn input_cycle_sets_by_state(&self) -> Vec<BTreeSet<ColourSet>> {
        let g = self.graph();
        let masks: Vec<u64> = (0..self.edge_count()).map(|e| 1u64 << self.edge(e).1).collect();
        let mut per_state = vec![BTreeSet::new(); self.size()];
        for (set, states) in cycle_colour_sets(&g, &masks, |_| true) {
            for q in states {
                per_state[q].insert(ColourSet::from_bits(set));
            }
        }
        per_state
    }
    /// Pairs `(input letters, output colours)` realised together by some
    /// cycle, each pair counted once.
    pub fn paired_cycle_sets(&self) -> Result<BTreeSet<(ColourSet, ColourSet)>> {
        let sigma = self.input.len();
        if sigma + self.output.len() > MAX_ALPHABET {
            return Err(Error::ScaleGuard(format!(
                "{} input letters and {} output colours exceed {MAX_ALPHABET} combined",
                sigma,
                self.output.len()
            )));
        }
        let g = self.graph();
        let masks: Vec<u64> = (0..self.edge_count())
            .map(|e| {
                let (_, a, _, c) = self.edge(e);
                (1u64 << a) | (1u64 << (sigma + c))
            })
            .collect();
        let low = (1u64 << sigma) - 1;
        Ok(cycle_colour_sets(&g, &masks, |_| true)
            .into_keys()
            .map(|m| (ColourSet::from_bits(m & low), ColourSet::from_bits(m >> sigma)))
            .collect())
    }

    /// Whether the automaton recognises the Muller language of `f`, which
    /// must be over the input alphabet: every cycle is accepting exactly
    /// when its input letters form a set of `f`.
    pub fn recognises_muller(&self, f: &MullerCondition) -> Result<bool> {
        if f.alphabet() != &self.input {
            return Err(Error::AlphabetMismatch("condition alphabet differs from the input alphabet".into()));
        }
        Ok(self
            .paired_cycle_sets()?
            .into_iter()
            .all(|(letters, colours)| self.acceptance.accepts(colours) == f.is_accepting(letters)))
    }
}

fn check_acceptance(acc: &Acceptance, output: &Alphabet) -> Result<()> {
    if let Acceptance::Parity(prio) = acc {
        if prio.len() != output.len() {
            return Err(Error::malformed(format!(
                "parity condition gives {} priorities for {} output colours",
                prio.len(),
                output.len()
            )));
        }
    }
    output.check_set(acc.referenced_colours())
}

/// A non-empty edge set of an automaton traversed by one closed path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    edges: BTreeSet<EdgeId>,
}

impl Cycle {
    /// Checks that the edges form a strongly connected sub-multigraph.
    pub fn new(aut: &Automaton, edges: impl IntoIterator<Item = EdgeId>) -> Result<Cycle> {
        let edges: BTreeSet<EdgeId> = edges.into_iter().collect();
        if edges.is_empty() {
            return Err(Error::malformed("a cycle needs at least one edge"));
        }
        if let Some(&e) = edges.iter().find(|&&e| e >= aut.edge_count()) {
            return Err(Error::malformed(format!("edge {e} does not exist")));
        }
        let g = aut.graph();
        let comps = scc_decomposition(&g, |_| true, |e| edges.contains(&e));
        let holding: Vec<_> = comps.iter().filter(|c| !c.is_trivial()).collect();
        if holding.len() != 1 || holding[0].edges.len() != edges.len() {
            return Err(Error::malformed("edge set is not traversed by a single closed path"));
        }
        Ok(Cycle { edges })
    }

    pub fn edges(&self) -> &BTreeSet<EdgeId> {
        &self.edges
    }

    pub fn states(&self, aut: &Automaton) -> BTreeSet<usize> {
        self.edges.iter().map(|&e| aut.edge(e).0).collect()
    }

    /// Output colours of the cycle.
    pub fn colours(&self, aut: &Automaton) -> ColourSet {
        self.edges.iter().map(|&e| aut.edge(e).3).collect()
    }

    /// Input letters of the cycle.
    pub fn letters(&self, aut: &Automaton) -> ColourSet {
        self.edges.iter().map(|&e| aut.edge(e).1).collect()
    }

    pub fn is_accepting(&self, aut: &Automaton) -> bool {
        aut.acceptance().accepts(self.colours(aut))
    }
}

/// The word `prefix · period^ω`, as input symbol indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UltimatelyPeriodicWord {
    pub prefix: Vec<usize>,
    pub period: Vec<usize>,
}

impl UltimatelyPeriodicWord {
    pub fn new(prefix: Vec<usize>, period: Vec<usize>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::malformed("period of an ultimately periodic word is empty"));
        }
        Ok(UltimatelyPeriodicWord { prefix, period })
    }

    pub fn periodic(period: Vec<usize>) -> Result<Self> {
        Self::new(Vec::new(), period)
    }

    /// Letters occurring infinitely often.
    pub fn inf(&self) -> ColourSet {
        self.period.iter().copied().collect()
    }

    /// Every word with prefix length `<= max_prefix` and period length in
    /// `1..=max_period` over `sigma` letters.
    pub fn enumerate(sigma: usize, max_prefix: usize, max_period: usize) -> Vec<UltimatelyPeriodicWord> {
        let words_up_to = |len: usize, min: usize| -> Vec<Vec<usize>> {
            let mut all = vec![Vec::new()];
            let mut layer = vec![Vec::new()];
            for _ in 0..len {
                layer = layer
                    .iter()
                    .flat_map(|w: &Vec<usize>| {
                        (0..sigma).map(move |a| {
                            let mut w = w.clone();
                            w.push(a);
                            w
                        })
                    })
                    .collect();
                all.extend(layer.iter().cloned());
            }
            all.retain(|w| w.len() >= min);
            all
        };
        let prefixes = words_up_to(max_prefix, 0);
        let periods = words_up_to(max_period, 1);
        let mut out = Vec::with_capacity(prefixes.len() * periods.len());
        for u in &prefixes {
            for v in &periods {
                out.push(UltimatelyPeriodicWord { prefix: u.clone(), period: v.clone() });
            }
        }
        out
    }
}
