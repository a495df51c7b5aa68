//! Simple undirected graphs, colourings, and the translation between
//! colourings and Rabin automata for the language of a graph.

use std::collections::BTreeSet;

use crate::acceptance::{Acceptance, Pair};
use crate::automaton::Automaton;
use crate::colour::{Alphabet, ColourSet, MullerCondition, MAX_ALPHABET};
use crate::error::{Error, Result};
use crate::zielonka::ZielonkaTree;

/// Largest graph accepted by [`chromatic_number`].
pub const MAX_CHROMATIC_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    /// Unordered edges stored as `(smaller, larger)`.
    edges: BTreeSet<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (v, u) in edges {
            if v >= n || u >= n {
                return Err(Error::malformed(format!("edge ({v}, {u}) out of range for {n} vertices")));
            }
            if v == u {
                return Err(Error::malformed(format!("self-loop on vertex {v}")));
            }
            if !set.insert((v.min(u), v.max(u))) {
                return Err(Error::malformed(format!("duplicate edge ({v}, {u})")));
            }
        }
        Ok(SimpleGraph { n, edges: set })
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|v| (v + 1..n).map(move |u| (v, u)));
        SimpleGraph::new(n, edges).expect("complete graph is simple")
    }

    pub fn path(n: usize) -> Self {
        SimpleGraph::new(n, (1..n).map(|v| (v - 1, v))).expect("path is simple")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a simple cycle needs at least 3 vertices");
        SimpleGraph::new(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle is simple")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, v: usize, u: usize) -> bool {
        self.edges.contains(&(v.min(u), v.max(u)))
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&u| self.has_edge(v, u))
    }

    /// Vertex names `1..=n`, the input alphabet of the graph's language.
    pub fn vertex_alphabet(&self) -> Result<Alphabet> {
        Alphabet::numbered_from_one(self.n)
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p edge {} {}\n", self.n, self.edges.len());
        for (v, u) in &self.edges {
            out.push_str(&format!("e {} {}\n", v + 1, u + 1));
        }
        out
    }
}

/// Parses the DIMACS graph format: `c` comment lines, one `p edge n m`
/// (or `p col n m`) header and `e u v` lines with 1-based vertices.
pub fn parse_dimacs(text: &str) -> Result<SimpleGraph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let bad = |what: &str| Error::malformed(format!("line {}: {what}", lineno + 1));
        match fields.first().copied() {
            None | Some("c") => {}
            Some("p") => {
                if n.is_some() {
                    return Err(bad("second problem line"));
                }
                if fields.len() != 4 || !matches!(fields[1], "edge" | "col") {
                    return Err(bad("expected `p edge <vertices> <edges>`"));
                }
                n = Some(fields[2].parse().map_err(|_| bad("vertex count is not a number"))?);
                fields[3].parse::<usize>().map_err(|_| bad("edge count is not a number"))?;
            }
            Some("e") => {
                let Some(n) = n else { return Err(bad("edge before the problem line")) };
                if fields.len() != 3 {
                    return Err(bad("expected `e <u> <v>`"));
                }
                let mut ends = [0usize; 2];
                for (slot, f) in ends.iter_mut().zip(&fields[1..]) {
                    let v: usize = f.parse().map_err(|_| bad("vertex is not a number"))?;
                    if v == 0 || v > n {
                        return Err(bad(&format!("vertex {v} out of range 1..={n}")));
                    }
                    *slot = v - 1;
                }
                edges.push((ends[0], ends[1]));
            }
            Some(other) => return Err(bad(&format!("unknown line type `{other}`"))),
        }
    }
    let n = n.ok_or_else(|| Error::malformed("missing problem line"))?;
    SimpleGraph::new(n, edges)
}

/// A vertex colouring with colours `0..k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Colouring {
    pub colours: Vec<usize>,
    pub k: usize,
}

impl Colouring {
    pub fn new(colours: Vec<usize>, k: usize) -> Result<Self> {
        if let Some(&c) = colours.iter().find(|&&c| c >= k) {
            return Err(Error::malformed(format!("colour {c} out of range for {k} colours")));
        }
        Ok(Colouring { colours, k })
    }

    /// First edge whose ends share a colour.
    pub fn conflict(&self, g: &SimpleGraph) -> Option<(usize, usize)> {
        g.edges().find(|&(v, u)| self.colours[v] == self.colours[u])
    }

    pub fn check_proper(&self, g: &SimpleGraph) -> Result<()> {
        if self.colours.len() != g.vertex_count() {
            return Err(Error::malformed(format!(
                "colouring covers {} vertices, graph has {}",
                self.colours.len(),
                g.vertex_count()
            )));
        }
        match self.conflict(g) {
            Some((v, u)) => Err(Error::ImproperColouring(v, u)),
            None => Ok(()),
        }
    }

    pub fn used(&self) -> usize {
        self.colours.iter().collect::<BTreeSet<_>>().len()
    }
}

fn dsatur(g: &SimpleGraph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut colour: Vec<Option<usize>> = vec![None; n];
    for _ in 0..n {
        let saturation = |v: usize| g.neighbours(v).filter_map(|u| colour[u]).collect::<BTreeSet<_>>().len();
        let v = (0..n)
            .filter(|&v| colour[v].is_none())
            .max_by_key(|&v| (saturation(v), g.neighbours(v).count(), std::cmp::Reverse(v)))
            .expect("an uncoloured vertex remains");
        let taken: BTreeSet<usize> = g.neighbours(v).filter_map(|u| colour[u]).collect();
        colour[v] = (0..).find(|c| !taken.contains(c));
    }
    colour.into_iter().map(|c| c.expect("all coloured")).collect()
}

fn greedy_clique(g: &SimpleGraph) -> usize {
    (0..g.vertex_count())
        .map(|start| {
            let mut clique = vec![start];
            for v in 0..g.vertex_count() {
                if v != start && clique.iter().all(|&u| g.has_edge(u, v)) {
                    clique.push(v);
                }
            }
            clique.len()
        })
        .max()
        .unwrap_or(0)
}

/// Tries to colour vertices `v..` with colours below `k`; a vertex may open
/// at most one new colour, so colour classes appear in vertex order.
fn colour_with(g: &SimpleGraph, k: usize, v: usize, used: usize, colours: &mut Vec<usize>) -> bool {
    if v == g.vertex_count() {
        return true;
    }
    for c in 0..(used + 1).min(k) {
        if g.neighbours(v).filter(|&u| u < v).all(|u| colours[u] != c) {
            colours.push(c);
            if colour_with(g, k, v + 1, used.max(c + 1), colours) {
                return true;
            }
            colours.pop();
        }
    }
    false
}

/// Exact chromatic number with an optimal colouring.
pub fn chromatic_number(g: &SimpleGraph) -> Result<(usize, Colouring)> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::precondition("the graph has no vertices"));
    }
    if n > MAX_CHROMATIC_VERTICES {
        return Err(Error::ScaleGuard(format!("{n} vertices exceed {MAX_CHROMATIC_VERTICES}")));
    }
    let upper = dsatur(g);
    let mut best_k = upper.iter().max().expect("non-empty") + 1;
    let mut best = upper;
    let lower = greedy_clique(g).max(1);
    while best_k > lower {
        let mut colours = Vec::with_capacity(n);
        if !colour_with(g, best_k - 1, 0, 0, &mut colours) {
            break;
        }
        best = colours;
        best_k -= 1;
    }
    Ok((best_k, Colouring { colours: best, k: best_k }))
}

/// The Muller condition over the vertices whose accepting sets are the edges.
pub fn condition_f_g(g: &SimpleGraph) -> Result<MullerCondition> {
    let family = g.edges().map(|(v, u)| ColourSet::from_indices([v, u]));
    MullerCondition::new(g.vertex_alphabet()?, family)
}

/// Zielonka tree of [`condition_f_g`] written down directly: the vertex
/// set with one child `{v,u}` per edge, each with leaves `{v}` and `{u}`.
/// With two vertices and one edge the root itself is that edge.
pub fn zielonka_tree_f_g(g: &SimpleGraph) -> ZielonkaTree {
    let leaf = |v: usize| ZielonkaTree { label: ColourSet::singleton(v), accepting: false, children: vec![] };
    let edge_tree = |(v, u): (usize, usize)| ZielonkaTree {
        label: ColourSet::from_indices([v, u]),
        accepting: true,
        children: vec![leaf(v), leaf(u)],
    };
    if g.vertex_count() == 2 && g.edge_count() == 1 {
        return edge_tree((0, 1));
    }
    let mut children: Vec<ZielonkaTree> = g.edges().map(edge_tree).collect();
    children.sort_by_key(|c| c.label);
    ZielonkaTree { label: ColourSet::full(g.vertex_count()), accepting: false, children }
}

fn pair_alphabet(rows: usize, g: &SimpleGraph, row_name: impl Fn(usize) -> String) -> Result<Alphabet> {
    let n = g.vertex_count();
    if rows * n > MAX_ALPHABET {
        return Err(Error::ScaleGuard(format!("{rows}x{n} output colours exceed {MAX_ALPHABET}")));
    }
    Alphabet::new((0..rows).flat_map(|q| (0..n).map(move |x| (q, x))).map(|(q, x)| format!("{}:{}", row_name(q), x + 1)))
}

/// Rabin pair for edge `{v,u}` over `rows x V` output colours indexed
/// `q * n + x`: `E` is `e`, `F` everything except `keep`.
fn pair_excluding(total: usize, e: &[usize], keep: &[usize]) -> Pair {
    let keep: ColourSet = keep.iter().copied().collect();
    Pair::new(e.iter().copied().collect(), ColourSet::full(total).difference(keep))
}

/// The `n`-state Rabin automaton for the graph's language: the state is the
/// last letter and each transition outputs its (source, letter) pair.
pub fn build_a_g(g: &SimpleGraph) -> Result<Automaton> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::precondition("the graph has no vertices"));
    }
    let output = pair_alphabet(n, g, |v| (v + 1).to_string())?;
    let delta = (0..n).map(|v| (0..n).map(|x| (x, v * n + x)).collect()).collect();
    let pairs = g
        .edges()
        .map(|(v, u)| pair_excluding(n * n, &[v * n + u], &[v * n + u, u * n + v, v * n + v, u * n + u]))
        .collect();
    Automaton::new(g.vertex_alphabet()?, output, 0, delta, Acceptance::Rabin(pairs))
}

/// The `k`-state Rabin automaton moving to the colour of the letter just read.
pub fn colouring_to_rabin(g: &SimpleGraph, c: &Colouring) -> Result<Automaton> {
    c.check_proper(g)?;
    let n = g.vertex_count();
    let k = c.k;
    let col = &c.colours;
    let output = pair_alphabet(k, g, |q| format!("q{q}"))?;
    let delta = (0..k).map(|q| (0..n).map(|x| (col[x], q * n + x)).collect()).collect();
    let pairs = g
        .edges()
        .map(|(v, u)| {
            let e = [col[v] * n + u, col[u] * n + v];
            let keep = [col[v] * n + v, col[v] * n + u, col[u] * n + v, col[u] * n + u];
            pair_excluding(k * n, &e, &keep)
        })
        .collect();
    // start in a used colour so normalisation keeps every used state
    let initial = col.first().copied().unwrap_or(0);
    Automaton::new(g.vertex_alphabet()?, output, initial, delta, Acceptance::Rabin(pairs))
}

/// Reads a colouring off an automaton for the graph's language: vertex `v`
/// gets the smallest state lying on a cycle that reads only `v`.
pub fn rabin_to_colouring(aut: &Automaton, g: &SimpleGraph) -> Result<Colouring> {
    if aut.input().len() != g.vertex_count() {
        return Err(Error::AlphabetMismatch(format!(
            "automaton reads {} letters, graph has {} vertices",
            aut.input().len(),
            g.vertex_count()
        )));
    }
    let sets = aut.input_cycle_sets_by_state();
    let colours = (0..g.vertex_count())
        .map(|v| {
            (0..aut.size())
                .find(|&q| sets[q].contains(&ColourSet::singleton(v)))
                .ok_or_else(|| Error::precondition(format!("no state carries a cycle reading only vertex {}", v + 1)))
        })
        .collect::<Result<Vec<_>>>()?;
    let c = Colouring { colours, k: aut.size() };
    match c.conflict(g) {
        Some((v, u)) => Err(Error::precondition(format!(
            "input does not recognise the graph language: vertices {} and {} share state {}",
            v + 1,
            u + 1,
            c.colours[v]
        ))),
        None => Ok(c),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::UltimatelyPeriodicWord;
    use crate::rabin::rabin_equivalent;
    use crate::zielonka::zielonka_tree;

    #[test]
    fn dimacs_parsing() {
        let g = parse_dimacs("c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
        assert_eq!(g, SimpleGraph::complete(3));
        let empty = parse_dimacs("p edge 4 0\n").unwrap();
        assert_eq!((empty.vertex_count(), empty.edge_count()), (4, 0));
        assert!(parse_dimacs("p edge 2 1\ne 1 1\n").is_err());
        assert!(parse_dimacs("p edge 2 2\ne 1 2\ne 2 1\n").is_err());
        assert!(parse_dimacs("p edge 2 1\ne 1 3\n").is_err());
        assert!(parse_dimacs("e 1 2\n").is_err());
        assert!(parse_dimacs("p edge 2 1\nx\n").is_err());
        assert_eq!(parse_dimacs(&g.to_dimacs()).unwrap(), g);
    }

    /// Brute force over all colourings with fewer colours.
    fn colourable(g: &SimpleGraph, k: usize) -> bool {
        let n = g.vertex_count() as u32;
        (0..k.pow(n)).any(|mut code| {
            let colours: Vec<usize> = (0..n)
                .map(|_| {
                    let c = code % k;
                    code /= k;
                    c
                })
                .collect();
            g.edges().all(|(v, u)| colours[v] != colours[u])
        })
    }

    #[test]
    fn chromatic_numbers() {
        assert_eq!(chromatic_number(&SimpleGraph::complete(3)).unwrap().0, 3);
        let c5 = SimpleGraph::cycle(5);
        let (k, c) = chromatic_number(&c5).unwrap();
        assert_eq!(k, 3);
        assert!(!colourable(&c5, 2));
        c.check_proper(&c5).unwrap();
        assert_eq!(chromatic_number(&SimpleGraph::path(4)).unwrap().0, 2);
        assert_eq!(chromatic_number(&SimpleGraph::new(3, []).unwrap()).unwrap().0, 1);
        assert!(chromatic_number(&SimpleGraph::new(0, []).unwrap()).is_err());
    }

    #[test]
    fn f_g_tree_shortcut() {
        for g in [SimpleGraph::complete(3), SimpleGraph::path(3), SimpleGraph::path(2), SimpleGraph::new(3, []).unwrap()] {
            let f = condition_f_g(&g).unwrap();
            assert_eq!(f.len(), g.edge_count());
            assert_eq!(zielonka_tree_f_g(&g), zielonka_tree(&f));
        }
    }

    #[test]
    fn a_g_words() {
        let p3 = SimpleGraph::path(3);
        let a = build_a_g(&p3).unwrap();
        assert_eq!(a.size(), 3);
        let w = |v: Vec<usize>| UltimatelyPeriodicWord::periodic(v).unwrap();
        assert!(a.accepts_up_word(&w(vec![0, 1])).unwrap());
        assert!(!a.accepts_up_word(&w(vec![0, 2])).unwrap());
        assert!(!a.accepts_up_word(&w(vec![1])).unwrap());
    }

    #[test]
    fn colouring_round_trip() {
        for g in [SimpleGraph::complete(3), SimpleGraph::path(3), SimpleGraph::cycle(5)] {
            let (_, c) = chromatic_number(&g).unwrap();
            let r = colouring_to_rabin(&g, &c).unwrap();
            assert_eq!(r.size(), c.k);
            assert!(rabin_equivalent(&r, &build_a_g(&g).unwrap()).unwrap());
            let back = rabin_to_colouring(&r, &g).unwrap();
            back.check_proper(&g).unwrap();
            assert!(back.used() <= c.k);
        }
        let k3 = SimpleGraph::complete(3);
        let back = rabin_to_colouring(&build_a_g(&k3).unwrap(), &k3).unwrap();
        assert_eq!(back.colours, vec![0, 1, 2]);
    }

    #[test]
    fn wrong_graph_is_detected() {
        let p3 = SimpleGraph::path(3);
        let (_, c) = chromatic_number(&p3).unwrap();
        let r = colouring_to_rabin(&p3, &c).unwrap();
        assert!(rabin_to_colouring(&r, &SimpleGraph::complete(3)).is_err());
        let bad = Colouring::new(vec![0, 0, 1], 2).unwrap();
        assert!(matches!(colouring_to_rabin(&p3, &bad), Err(Error::ImproperColouring(0, 1))));
    }
}
