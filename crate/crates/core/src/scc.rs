//! Strongly connected components of edge-filtered multigraphs, and the
//! enumeration of colour sets realised by cycles.

use std::collections::{BTreeMap, BTreeSet, HashSet};

/// A directed multigraph with numbered edges.
#[derive(Debug, Clone, Default)]
pub struct Digraph {
    n: usize,
    ends: Vec<(usize, usize)>,
    out: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        Digraph { n, ends: Vec::new(), out: vec![Vec::new(); n] }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Digraph::new(n);
        for (s, t) in edges {
            g.add_edge(s, t);
        }
        g
    }

    pub fn add_edge(&mut self, src: usize, dst: usize) -> usize {
        let id = self.ends.len();
        self.ends.push((src, dst));
        self.out[src].push(id);
        id
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    pub fn source(&self, e: usize) -> usize {
        self.ends[e].0
    }

    pub fn target(&self, e: usize) -> usize {
        self.ends[e].1
    }

    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out[v]
    }
}

/// A strongly connected component: sorted vertices and the sorted ids of the
/// active edges running inside it. A component without internal edges is a
/// lone vertex that lies on no cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl Component {
    pub fn is_trivial(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Tarjan's algorithm over the active vertices, using only active edges whose
/// endpoints are both active. Components are returned sorted by their
/// smallest vertex.
pub fn scc_decomposition(
    g: &Digraph,
    vertex_active: impl Fn(usize) -> bool,
    edge_active: impl Fn(usize) -> bool,
) -> Vec<Component> {
    const UNSEEN: usize = usize::MAX;
    let n = g.n;
    let usable = |e: usize| edge_active(e) && vertex_active(g.ends[e].0) && vertex_active(g.ends[e].1);

    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut comp_of = vec![UNSEEN; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut next_index = 0;
    let mut comps: Vec<Vec<usize>> = Vec::new();

    // explicit call stack of (vertex, position in its out list)
    let mut call: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if index[root] != UNSEEN || !vertex_active(root) {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&(v, pos)) = call.last() {
            if let Some(&e) = g.out[v].get(pos) {
                call.last_mut().expect("non-empty call stack").1 += 1;
                if !usable(e) {
                    continue;
                }
                let w = g.ends[e].1;
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let id = comps.len();
                    let mut members = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        comp_of[w] = id;
                        members.push(w);
                        if w == v {
                            break;
                        }
                    }
                    members.sort_unstable();
                    comps.push(members);
                }
            }
        }
    }

    let mut edges: Vec<Vec<usize>> = vec![Vec::new(); comps.len()];
    for e in 0..g.ends.len() {
        if !usable(e) {
            continue;
        }
        let (s, t) = g.ends[e];
        if comp_of[s] == comp_of[t] {
            edges[comp_of[s]].push(e);
        }
    }
    let mut result: Vec<Component> = comps
        .into_iter()
        .zip(edges)
        .map(|(vertices, edges)| Component { vertices, edges })
        .collect();
    result.sort_by_key(|c| c.vertices[0]);
    result
}

/// Whether no active edge leaves `comp`.
pub fn is_ergodic(g: &Digraph, comp: &Component, edge_active: impl Fn(usize) -> bool) -> bool {
    let inside: HashSet<usize> = comp.vertices.iter().copied().collect();
    comp.vertices.iter().all(|&v| {
        g.out[v]
            .iter()
            .all(|&e| !edge_active(e) || inside.contains(&g.ends[e].1))
    })
}

/// Every colour set realised by a cycle of the active part of `g`, mapped to
/// the vertices lying on some cycle with exactly that colour set.
///
/// `colour[e]` is the colour mask of edge `e`; a zero mask marks a neutral
/// edge that is allowed under every restriction. A set `Q` is explored by
/// restricting to edges with mask inside `Q` and decomposing; each
/// non-trivial component contributes the union `P` of its masks, and the
/// search descends into `P` minus one colour at a time. Every cycle with
/// colour set `C` lies in a component whose union contains `C`, so the
/// descent reaches `C` itself.
pub fn cycle_colour_sets(
    g: &Digraph,
    colour: &[u64],
    vertex_active: impl Fn(usize) -> bool + Copy,
) -> BTreeMap<u64, BTreeSet<usize>> {
    assert_eq!(colour.len(), g.edge_count());
    let mut found: BTreeMap<u64, BTreeSet<usize>> = BTreeMap::new();
    let mut visited: HashSet<u64> = HashSet::new();
    let all = colour.iter().fold(0u64, |a, c| a | c);
    let mut work = vec![all];
    visited.insert(all);
    while let Some(q) = work.pop() {
        let comps = scc_decomposition(g, vertex_active, |e| colour[e] & !q == 0);
        for c in comps.iter().filter(|c| !c.is_trivial()) {
            let p = c.edges.iter().fold(0u64, |a, &e| a | colour[e]);
            found.entry(p).or_default().extend(c.vertices.iter().copied());
            let mut rest = p;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                rest &= rest - 1;
                let sub = p & !bit;
                if visited.insert(sub) {
                    work.push(sub);
                }
            }
        }
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn self_loop_is_one_component() {
        let g = Digraph::from_edges(1, [(0, 0)]);
        let c = scc_decomposition(&g, |_| true, |_| true);
        assert_eq!(c, vec![Component { vertices: vec![0], edges: vec![0] }]);
    }

    #[test]
    fn chain_gives_trivial_singletons() {
        let g = Digraph::from_edges(2, [(0, 1)]);
        let c = scc_decomposition(&g, |_| true, |_| true);
        assert_eq!(c.len(), 2);
        assert!(c.iter().all(Component::is_trivial));
    }

    #[test]
    fn filters_edges_and_vertices() {
        // 0 <-> 1 <-> 2, plus 2 -> 0
        let g = Digraph::from_edges(3, [(0, 1), (1, 0), (1, 2), (2, 1), (2, 0)]);
        let all = scc_decomposition(&g, |_| true, |_| true);
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].edges.len(), 5);
        let no_mid = scc_decomposition(&g, |v| v != 1, |_| true);
        assert_eq!(no_mid.len(), 2);
        let only_first = scc_decomposition(&g, |_| true, |e| e < 2);
        assert_eq!(only_first[0].vertices, vec![0, 1]);
        assert_eq!(only_first[1].vertices, vec![2]);
        assert!(is_ergodic(&g, &only_first[0], |e| e < 2));
    }

    #[test]
    fn deep_chain_does_not_overflow() {
        let n = 200_000;
        let g = Digraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)));
        let c = scc_decomposition(&g, |_| true, |_| true);
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn cycle_sets_of_two_loops() {
        // one vertex, loops coloured a and b
        let g = Digraph::from_edges(1, [(0, 0), (0, 0)]);
        let sets = cycle_colour_sets(&g, &[0b01, 0b10], |_| true);
        assert_eq!(sets.keys().copied().collect::<Vec<_>>(), vec![0b01, 0b10, 0b11]);
    }

    #[test]
    fn neutral_edges_are_always_usable() {
        // 0 -a-> 1 -eps-> 0, and 0 -b-> 0
        let g = Digraph::from_edges(2, [(0, 1), (1, 0), (0, 0)]);
        let sets = cycle_colour_sets(&g, &[0b01, 0, 0b10], |_| true);
        assert_eq!(sets.keys().copied().collect::<Vec<_>>(), vec![0b01, 0b10, 0b11]);
        assert_eq!(sets[&0b01], BTreeSet::from([0, 1]));
        assert_eq!(sets[&0b10], BTreeSet::from([0]));
    }
}
