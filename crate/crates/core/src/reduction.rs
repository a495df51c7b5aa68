//! Recovering the Zielonka tree of a Muller language from a parity automaton
//! recognising it, and polynomial minimisation of parity and generalised
//! Büchi automata for Muller languages.

use std::collections::BTreeSet;

use crate::acceptance::Acceptance;
use crate::automaton::{Automaton, EdgeId};
use crate::colour::{Alphabet, ColourSet};
use crate::error::{Error, Result};
use crate::scc::{is_ergodic, scc_decomposition};
use crate::zielonka::{zt_to_parity_from_tree, ZielonkaTree};

pub use crate::colour::max_inclusion;

/// A subgraph of `G(A)`: a vertex set and edges between those vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ASubgraph<'a> {
    aut: &'a Automaton,
    vertices: Vec<usize>,
    edges: Vec<EdgeId>,
}

impl<'a> ASubgraph<'a> {
    pub fn new(
        aut: &'a Automaton,
        vertices: impl IntoIterator<Item = usize>,
        edges: impl IntoIterator<Item = EdgeId>,
    ) -> Result<Self> {
        let vertices: Vec<usize> = vertices.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let edges: Vec<EdgeId> = edges.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        if let Some(&v) = vertices.iter().find(|&&v| v >= aut.size()) {
            return Err(Error::malformed(format!("vertex {v} does not exist")));
        }
        for &e in &edges {
            if e >= aut.edge_count() {
                return Err(Error::malformed(format!("edge {e} does not exist")));
            }
            let (s, _, t, _) = aut.edge(e);
            if vertices.binary_search(&s).is_err() || vertices.binary_search(&t).is_err() {
                return Err(Error::malformed(format!("edge {e} leaves the vertex set")));
            }
        }
        Ok(ASubgraph { aut, vertices, edges })
    }

    /// The whole graph of the automaton.
    pub fn full(aut: &'a Automaton) -> Self {
        ASubgraph { aut, vertices: (0..aut.size()).collect(), edges: (0..aut.edge_count()).collect() }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    /// Input letters on the edges.
    pub fn letters(&self) -> ColourSet {
        self.edges.iter().map(|&e| self.aut.edge(e).1).collect()
    }

    /// Highest priority on an edge, for parity automata with at least one edge.
    pub fn max_priority(&self) -> Option<u32> {
        let prio = parity_of(self.aut).ok()?;
        self.edges.iter().map(|&e| prio[self.aut.edge(e).3]).max()
    }

    fn has_vertex(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    fn has_edge(&self, e: EdgeId) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// Strongly connected and, for every vertex and letter of `letters()`,
    /// containing the vertex's edge on that letter.
    pub fn is_complete_scc(&self) -> bool {
        let g = self.aut.graph();
        let comps = scc_decomposition(&g, |v| self.has_vertex(v), |e| self.has_edge(e));
        let letters = self.letters();
        comps.len() == 1
            && !comps[0].is_trivial()
            && self.vertices.iter().all(|&q| letters.iter().all(|a| self.has_edge(self.aut.edge_id(q, a))))
    }
}

fn parity_of(aut: &Automaton) -> Result<&[u32]> {
    match aut.acceptance() {
        Acceptance::Parity(prio) => Ok(prio),
        other => Err(Error::Unsupported(format!("expected a parity automaton, got {}", other.kind()))),
    }
}

/// A complete strongly connected subgraph of `s` whose letters are exactly
/// `c`: the first ergodic component of `s` restricted to `c`-edges.
pub fn complete_scc<'a>(c: ColourSet, s: &ASubgraph<'a>) -> Result<ASubgraph<'a>> {
    let aut = s.aut;
    let g = aut.graph();
    let active = |e: EdgeId| s.has_edge(e) && c.contains(aut.edge(e).1);
    let comps = scc_decomposition(&g, |v| s.has_vertex(v), active);
    let ergodic = comps
        .iter()
        .find(|k| !k.is_trivial() && is_ergodic(&g, k, active))
        .ok_or_else(|| Error::precondition("subgraph has no ergodic component for the letter set"))?;
    let sub = ASubgraph { aut, vertices: ergodic.vertices.clone(), edges: ergodic.edges.clone() };
    if sub.letters() != c || !sub.is_complete_scc() {
        return Err(Error::precondition("subgraph contains no complete component for the letter set"));
    }
    Ok(sub)
}

/// Letter sets of the children of the node labelled `Letters(s)`, for a
/// strongly connected subgraph of a parity automaton.
pub fn alternating_sets(s: &ASubgraph<'_>) -> Result<Vec<ColourSet>> {
    let prio = parity_of(s.aut)?;
    let mut found = Vec::new();
    collect_alternating(s, prio, &mut found);
    Ok(max_inclusion(found))
}

fn collect_alternating(s: &ASubgraph<'_>, prio: &[u32], found: &mut Vec<ColourSet>) {
    let aut = s.aut;
    let Some(p) = s.max_priority() else { return };
    let g = aut.graph();
    let below = |e: EdgeId| s.has_edge(e) && prio[aut.edge(e).3] < p;
    for comp in scc_decomposition(&g, |v| s.has_vertex(v), below) {
        if comp.is_trivial() {
            continue;
        }
        let sub = ASubgraph { aut, vertices: comp.vertices, edges: comp.edges };
        let q = sub.max_priority().expect("non-trivial component has edges");
        if q % 2 != p % 2 {
            found.push(sub.letters());
        } else {
            collect_alternating(&sub, prio, found);
        }
    }
}

/// The ergodic component of `G(A)` containing the smallest state.
fn first_ergodic(aut: &Automaton) -> ASubgraph<'_> {
    let g = aut.graph();
    let comps = scc_decomposition(&g, |_| true, |_| true);
    let comp = comps
        .into_iter()
        .find(|k| is_ergodic(&g, k, |_| true))
        .expect("a finite graph has an ergodic component");
    ASubgraph { aut, vertices: comp.vertices, edges: comp.edges }
}

/// The Zielonka tree of the Muller language recognised by a parity
/// automaton. The result is meaningless if the language is not Muller.
pub fn zielonka_tree_from_parity(aut: &Automaton) -> Result<ZielonkaTree> {
    let prio = parity_of(aut)?;
    tree_of(&first_ergodic(aut), prio)
}

fn tree_of(s: &ASubgraph<'_>, prio: &[u32]) -> Result<ZielonkaTree> {
    let accepting = s.max_priority().expect("component has edges") % 2 == 0;
    let mut children = Vec::new();
    for c in alternating_sets(s)? {
        let sub = complete_scc(c, s)?;
        children.push(tree_of(&sub, prio)?);
    }
    Ok(ZielonkaTree { label: s.letters(), accepting, children })
}

/// A parity automaton with as many states as the Zielonka tree has leaves.
pub fn minimize_parity(aut: &Automaton) -> Result<Automaton> {
    let tree = zielonka_tree_from_parity(aut)?;
    Ok(zt_to_parity_from_tree(&tree, aut.input()))
}

/// A one-state generalised Büchi automaton equivalent to `aut`, whose
/// language is assumed to be a Muller language.
pub fn minimize_genbuchi(aut: &Automaton) -> Result<Automaton> {
    let Acceptance::GenBuchi(sets) = aut.acceptance() else {
        return Err(Error::Unsupported(format!(
            "expected a generalised Büchi automaton, got {}",
            aut.acceptance().kind()
        )));
    };
    let g = aut.graph();
    let mut rejecting = Vec::new();
    for b in sets {
        let avoid = |e: EdgeId| !b.contains(aut.edge(e).3);
        for comp in scc_decomposition(&g, |_| true, avoid) {
            if !comp.is_trivial() {
                rejecting.push(comp.edges.iter().map(|&e| aut.edge(e).1).collect::<ColourSet>());
            }
        }
    }
    let sigma = aut.input();
    let full = sigma.full();
    let accepting_sets = max_inclusion(rejecting).into_iter().map(|a| full.difference(a)).collect();
    single_state(sigma, Acceptance::GenBuchi(accepting_sets))
}

fn single_state(sigma: &Alphabet, acceptance: Acceptance) -> Result<Automaton> {
    let delta = vec![(0..sigma.len()).map(|a| (0, a)).collect()];
    Automaton::new(sigma.clone(), sigma.clone(), 0, delta, acceptance)
}
