//! Zielonka trees of explicit Muller conditions, the memory numbers read off
//! them, and the parity automaton whose states are the tree's leaves.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::acceptance::Acceptance;
use crate::automaton::Automaton;
use crate::colour::{max_inclusion, Alphabet, ColourSet, MullerCondition};

/// A node of a Zielonka tree. Children are sorted by label bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZielonkaTree {
    pub label: ColourSet,
    pub accepting: bool,
    pub children: Vec<ZielonkaTree>,
}

/// Memory-related facts about a Muller condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MemoryRequirements {
    pub mem_gen: usize,
    pub half_positional: bool,
    pub genbuchi_recognizable: bool,
    pub parity_priorities_used: usize,
}

pub fn zielonka_tree(f: &MullerCondition) -> ZielonkaTree {
    build(f, f.alphabet().full())
}

fn build(f: &MullerCondition, label: ColourSet) -> ZielonkaTree {
    let accepting = f.is_accepting(label);
    let children = opposite_maximal_subsets(f, label, accepting)
        .into_iter()
        .map(|c| build(f, c))
        .collect();
    ZielonkaTree { label, accepting, children }
}

/// Maximal non-empty proper subsets of `label` whose membership differs from
/// `accepting`. Every set strictly between such a subset and `label` has the
/// same membership as `label`, so it suffices to descend through those.
fn opposite_maximal_subsets(f: &MullerCondition, label: ColourSet, accepting: bool) -> Vec<ColourSet> {
    let mut seen = HashSet::from([label]);
    let mut stack = vec![label];
    let mut found = Vec::new();
    while let Some(s) = stack.pop() {
        for c in s.iter() {
            let mut sub = s;
            sub.remove(c);
            if sub.is_empty() || !seen.insert(sub) {
                continue;
            }
            if f.is_accepting(sub) != accepting {
                found.push(sub);
            } else {
                stack.push(sub);
            }
        }
    }
    max_inclusion(found)
}

impl ZielonkaTree {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Nodes on the longest root-to-leaf path; a leaf has height 1.
    pub fn height(&self) -> usize {
        1 + self.children.iter().map(ZielonkaTree::height).max().unwrap_or(0)
    }

    pub fn leaf_count(&self) -> usize {
        if self.is_leaf() {
            1
        } else {
            self.children.iter().map(ZielonkaTree::leaf_count).sum()
        }
    }

    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(ZielonkaTree::node_count).sum::<usize>()
    }

    /// Leaf 1, max over children at rejecting nodes, sum at accepting nodes.
    pub fn memory(&self) -> usize {
        if self.is_leaf() {
            1
        } else if self.accepting {
            self.children.iter().map(ZielonkaTree::memory).sum()
        } else {
            self.children.iter().map(ZielonkaTree::memory).max().unwrap_or(1)
        }
    }

    /// Every accepting node has at most one child.
    pub fn accepting_nodes_have_one_child(&self) -> bool {
        (!self.accepting || self.children.len() <= 1)
            && self.children.iter().all(ZielonkaTree::accepting_nodes_have_one_child)
    }

    /// Recursively sorts children by label, the canonical order.
    pub fn canonicalised(mut self) -> ZielonkaTree {
        self.children = self.children.into_iter().map(ZielonkaTree::canonicalised).collect();
        self.children.sort_by_key(|c| c.label);
        self
    }

    /// Tree isomorphism up to child order.
    pub fn isomorphic(&self, other: &ZielonkaTree) -> bool {
        self.clone().canonicalised() == other.clone().canonicalised()
    }

    /// Indented text rendering, one node per line.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        let mut out = String::new();
        self.render_into(alphabet, "", true, true, &mut out);
        out
    }

    fn render_into(&self, alphabet: &Alphabet, prefix: &str, last: bool, root: bool, out: &mut String) {
        let status = if self.accepting { "accepting" } else { "rejecting" };
        let branch = if root {
            ""
        } else if last {
            "`-- "
        } else {
            "|-- "
        };
        let _ = writeln!(out, "{prefix}{branch}{} ({status})", alphabet.render(self.label));
        let child_prefix = if root {
            String::new()
        } else if last {
            format!("{prefix}    ")
        } else {
            format!("{prefix}|   ")
        };
        for (i, c) in self.children.iter().enumerate() {
            c.render_into(alphabet, &child_prefix, i + 1 == self.children.len(), false, out);
        }
    }
}

pub fn mem_gen(f: &MullerCondition) -> usize {
    zielonka_tree(f).memory()
}

pub fn is_half_positional(f: &MullerCondition) -> bool {
    zielonka_tree(f).accepting_nodes_have_one_child()
}

pub fn is_genbuchi_recognizable(f: &MullerCondition) -> bool {
    let t = zielonka_tree(f);
    match t.height() {
        1 => true,
        2 => t.accepting,
        _ => false,
    }
}

/// Number of priorities of the Zielonka-tree parity automaton, and whether
/// the top one is even.
pub fn parity_priorities_used(f: &MullerCondition) -> (usize, bool) {
    let t = zielonka_tree(f);
    (t.height(), t.accepting)
}

pub fn memory_requirements(f: &MullerCondition) -> MemoryRequirements {
    let t = zielonka_tree(f);
    let height = t.height();
    MemoryRequirements {
        mem_gen: t.memory(),
        half_positional: t.accepting_nodes_have_one_child(),
        genbuchi_recognizable: height == 1 || (height == 2 && t.accepting),
        parity_priorities_used: height,
    }
}

/// Flattened tree with parent links, in DFS preorder.
struct Flat {
    label: Vec<ColourSet>,
    depth: Vec<usize>,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
}

impl Flat {
    fn new(tree: &ZielonkaTree) -> Flat {
        let mut flat = Flat { label: vec![], depth: vec![], parent: vec![], children: vec![] };
        flat.push(tree, None, 0);
        flat
    }

    fn push(&mut self, t: &ZielonkaTree, parent: Option<usize>, depth: usize) -> usize {
        let id = self.label.len();
        self.label.push(t.label);
        self.depth.push(depth);
        self.parent.push(parent);
        self.children.push(vec![]);
        for c in &t.children {
            let cid = self.push(c, Some(id), depth + 1);
            self.children[id].push(cid);
        }
        id
    }

    fn leftmost_leaf(&self, mut n: usize) -> usize {
        while let Some(&c) = self.children[n].first() {
            n = c;
        }
        n
    }
}

/// The parity automaton of the condition's Zielonka tree.
pub fn zt_to_parity(f: &MullerCondition) -> Automaton {
    zt_to_parity_from_tree(&zielonka_tree(f), f.alphabet())
}

/// Parity automaton read off a Zielonka tree over `alphabet`: one state per
/// leaf (DFS order) and, on letter `a`, the deepest node of the current
/// branch containing `a` decides the output priority and the next branch.
///
/// Output colours are the priorities `b..b+h`, named by their value, where
/// `b` makes the root's priority even exactly when the root is accepting.
pub fn zt_to_parity_from_tree(tree: &ZielonkaTree, alphabet: &Alphabet) -> Automaton {
    let flat = Flat::new(tree);
    let h = tree.height();
    let offset = if tree.accepting == ((h - 1) % 2 == 0) { 0 } else { 1 };
    let priority = |n: usize| h - 1 - flat.depth[n] + offset;

    let leaves: Vec<usize> = (0..flat.label.len()).filter(|&n| flat.children[n].is_empty()).collect();
    let state_of = |n: usize| leaves.binary_search(&n).expect("node is a leaf");

    let delta = leaves
        .iter()
        .map(|&leaf| {
            (0..alphabet.len())
                .map(|a| {
                    let mut n = leaf;
                    let mut below = None;
                    while !flat.label[n].contains(a) {
                        below = Some(n);
                        n = flat.parent[n].expect("root label covers the alphabet");
                    }
                    let target = match below {
                        None => leaf,
                        Some(child) => {
                            let siblings = &flat.children[n];
                            let i = siblings.iter().position(|&c| c == child).expect("child of its parent");
                            flat.leftmost_leaf(siblings[(i + 1) % siblings.len()])
                        }
                    };
                    (state_of(target), priority(n) - offset)
                })
                .collect()
        })
        .collect();

    let output = Alphabet::new((offset..offset + h).map(|p| p.to_string())).expect("h >= 1 priorities");
    let prio = (offset..offset + h).map(|p| p as u32).collect();
    Automaton::new(alphabet.clone(), output, 0, delta, Acceptance::Parity(prio))
        .expect("Zielonka-tree automaton is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cs(ix: &[usize]) -> ColourSet {
        ColourSet::from_indices(ix.iter().copied())
    }

    /// Direct check of the defining property at every node.
    fn check_children(f: &MullerCondition, t: &ZielonkaTree) {
        assert_eq!(t.accepting, f.is_accepting(t.label));
        let expected: Vec<ColourSet> = max_inclusion(
            t.label
                .nonempty_subsets()
                .filter(|s| *s != t.label && f.is_accepting(*s) != t.accepting),
        );
        let got: Vec<ColourSet> = t.children.iter().map(|c| c.label).collect();
        assert_eq!(got, expected);
        for c in &t.children {
            check_children(f, c);
        }
    }

    #[test]
    fn more_than_one_tree() {
        let f = MullerCondition::more_than_one(3).unwrap();
        let t = zielonka_tree(&f);
        assert!(t.accepting);
        assert_eq!(t.children.iter().map(|c| c.label).collect::<Vec<_>>(), vec![cs(&[0]), cs(&[1]), cs(&[2])]);
        assert!(t.children.iter().all(ZielonkaTree::is_leaf));
        check_children(&f, &t);
    }

    #[test]
    fn exactly_two_tree() {
        let f = MullerCondition::exactly_two(3).unwrap();
        let t = zielonka_tree(&f);
        assert!(!t.accepting);
        assert_eq!(
            t.children.iter().map(|c| c.label).collect::<Vec<_>>(),
            vec![cs(&[0, 1]), cs(&[0, 2]), cs(&[1, 2])]
        );
        for c in &t.children {
            assert!(c.accepting);
            assert_eq!(c.children.len(), 2);
        }
        assert_eq!(t.leaf_count(), 6);
        assert_eq!(t.height(), 3);
        check_children(&f, &t);
    }

    #[test]
    fn everything_accepting_is_a_leaf() {
        let ab = Alphabet::new(["a", "b"]).unwrap();
        let f = MullerCondition::from_predicate(ab, |_| true);
        let t = zielonka_tree(&f);
        assert!(t.is_leaf());
        assert_eq!(mem_gen(&f), 1);
        assert!(is_half_positional(&f));
        assert_eq!(parity_priorities_used(&f), (1, true));
        assert_eq!(zt_to_parity(&f).size(), 1);
    }

    #[test]
    fn memory_numbers() {
        for n in 2..=6 {
            assert_eq!(mem_gen(&MullerCondition::more_than_one(n).unwrap()), n);
        }
        let f3 = MullerCondition::exactly_two(3).unwrap();
        assert_eq!(mem_gen(&f3), 2);
        assert!(!is_half_positional(&f3));
        assert!(!is_genbuchi_recognizable(&f3));
        assert!(is_genbuchi_recognizable(&MullerCondition::more_than_one(3).unwrap()));
        assert_eq!(parity_priorities_used(&MullerCondition::more_than_one(3).unwrap()), (2, true));

        let ab = Alphabet::new(["a", "b"]).unwrap();
        // accepting iff a is present: root accepting with single child {b}
        let buchi = MullerCondition::new(ab.clone(), [cs(&[0]), cs(&[0, 1])]).unwrap();
        let t = zielonka_tree(&buchi);
        assert_eq!(t.children.len(), 1);
        assert_eq!(t.children[0].label, cs(&[1]));
        assert!(is_half_positional(&buchi));

        let only_full = MullerCondition::new(ab, [cs(&[0, 1])]).unwrap();
        assert!(is_genbuchi_recognizable(&only_full));
        let r = memory_requirements(&only_full);
        assert_eq!((r.mem_gen, r.half_positional), (2, false));
    }

    #[test]
    fn parity_automaton_for_two_letters() {
        let ab = Alphabet::new(["a", "b"]).unwrap();
        let f = MullerCondition::from_predicate(ab, |s| s.len() == 2);
        let a = zt_to_parity(&f);
        assert_eq!(a.size(), 2);
        let Acceptance::Parity(prio) = a.acceptance() else { panic!() };
        let p = |q: usize, x: usize| prio[a.step(q, x).1];
        // state 0 is branch {a}: staying on a gives 1, switching gives 2
        assert_eq!((p(0, 0), p(0, 1), p(1, 1), p(1, 0)), (1, 2, 1, 2));
    }

    #[test]
    fn parity_automaton_for_exactly_two() {
        let f = MullerCondition::exactly_two(3).unwrap();
        let a = zt_to_parity(&f);
        assert_eq!(a.size(), 6);
        assert_eq!(a.acceptance(), &Acceptance::Parity(vec![1, 2, 3]));
        assert!(a.recognises_muller(&f).unwrap());
    }

    #[test]
    fn render_shape() {
        let f = MullerCondition::more_than_one(2).unwrap();
        let text = zielonka_tree(&f).render(f.alphabet());
        assert_eq!(text, "{1,2} (accepting)\n|-- {1} (rejecting)\n`-- {2} (rejecting)\n");
    }
}
