//! Colour alphabets, colour sets and explicit Muller conditions.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

/// Largest alphabet a [`ColourSet`] can index.
pub const MAX_ALPHABET: usize = 64;

/// An ordered list of distinct symbol names. The order is canonical: symbol
/// `i` is bit `i` of every [`ColourSet`] over this alphabet.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = S>) -> Result<Self> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::malformed("alphabet is empty"));
        }
        if symbols.len() > MAX_ALPHABET {
            return Err(Error::ScaleGuard(format!(
                "alphabet has {} symbols, at most {MAX_ALPHABET} are supported",
                symbols.len()
            )));
        }
        let mut seen = HashSet::new();
        for s in &symbols {
            if !seen.insert(s.as_str()) {
                return Err(Error::malformed(format!("duplicate symbol {s:?}")));
            }
        }
        Ok(Alphabet { symbols })
    }

    /// Alphabet `["0", "1", ..., "n-1"]`.
    pub fn numbered(n: usize) -> Result<Self> {
        Self::new((0..n).map(|i| i.to_string()))
    }

    /// Alphabet `["1", ..., "n"]`.
    pub fn numbered_from_one(n: usize) -> Result<Self> {
        Self::new((1..=n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn name(&self, index: usize) -> &str {
        &self.symbols[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == name)
    }

    pub fn lookup(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::malformed(format!("unknown symbol {name:?}")))
    }

    /// Set containing every symbol.
    pub fn full(&self) -> ColourSet {
        ColourSet::full(self.len())
    }

    pub fn set_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<ColourSet> {
        let mut set = ColourSet::EMPTY;
        for n in names {
            set.insert(self.lookup(n.as_ref())?);
        }
        Ok(set)
    }

    pub fn names_of(&self, set: ColourSet) -> Vec<String> {
        set.iter().map(|i| self.symbols[i].clone()).collect()
    }

    /// Renders a set as `{a,b}` using symbol names.
    pub fn render(&self, set: ColourSet) -> String {
        format!("{{{}}}", self.names_of(set).join(","))
    }

    pub(crate) fn check_set(&self, set: ColourSet) -> Result<()> {
        if set.is_subset(self.full()) {
            Ok(())
        } else {
            Err(Error::malformed(format!(
                "colour set {set:?} is outside an alphabet of {} symbols",
                self.len()
            )))
        }
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.symbols).finish()
    }
}

/// A subset of an alphabet as a bitset over symbol indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ColourSet(u64);

impl ColourSet {
    pub const EMPTY: ColourSet = ColourSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        ColourSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(i: usize) -> Self {
        debug_assert!(i < MAX_ALPHABET);
        ColourSet(1 << i)
    }

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_ALPHABET);
        if n == MAX_ALPHABET {
            ColourSet(u64::MAX)
        } else {
            ColourSet((1u64 << n) - 1)
        }
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = ColourSet::EMPTY;
        for i in indices {
            s.insert(i);
        }
        s
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_ALPHABET && self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1 << i);
    }

    pub fn union(self, other: ColourSet) -> ColourSet {
        ColourSet(self.0 | other.0)
    }

    pub fn intersection(self, other: ColourSet) -> ColourSet {
        ColourSet(self.0 & other.0)
    }

    pub fn difference(self, other: ColourSet) -> ColourSet {
        ColourSet(self.0 & !other.0)
    }

    pub fn intersects(self, other: ColourSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn is_subset(self, other: ColourSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: ColourSet) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Smallest member.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// All non-empty subsets of `self`, in ascending bit order.
    pub fn nonempty_subsets(self) -> impl Iterator<Item = ColourSet> {
        let full = self.0;
        let mut sub: u64 = 0;
        let mut done = full == 0;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            // next subset of `full` in increasing numeric order
            sub = sub.wrapping_sub(full) & full;
            if sub == 0 {
                done = true;
                None
            } else {
                Some(ColourSet(sub))
            }
        })
    }
}

impl fmt::Debug for ColourSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for ColourSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        ColourSet::from_indices(iter)
    }
}

/// Keeps the inclusion-maximal members of a family, deduplicated and sorted
/// by bit value.
pub fn max_inclusion(family: impl IntoIterator<Item = ColourSet>) -> Vec<ColourSet> {
    let mut sets: Vec<ColourSet> = family.into_iter().collect();
    sets.sort_unstable();
    sets.dedup();
    // larger sets first so each candidate only needs to be compared to kept ones
    let mut by_size = sets.clone();
    by_size.sort_by_key(|s| std::cmp::Reverse(s.len()));
    let mut kept: Vec<ColourSet> = Vec::new();
    for s in by_size {
        if !kept.iter().any(|k| s.is_subset(*k)) {
            kept.push(s);
        }
    }
    kept.sort_unstable();
    kept
}

/// An explicit Muller condition: an alphabet and the family of accepting sets.
#[derive(Clone)]
pub struct MullerCondition {
    alphabet: Alphabet,
    accepting: HashSet<ColourSet>,
}

impl MullerCondition {
    pub fn new(alphabet: Alphabet, family: impl IntoIterator<Item = ColourSet>) -> Result<Self> {
        let mut accepting = HashSet::new();
        for set in family {
            if set.is_empty() {
                return Err(Error::malformed("the empty set cannot be an accepting set"));
            }
            alphabet.check_set(set)?;
            accepting.insert(set);
        }
        Ok(MullerCondition { alphabet, accepting })
    }

    /// Condition whose accepting sets are the non-empty subsets satisfying `pred`.
    pub fn from_predicate(alphabet: Alphabet, pred: impl Fn(ColourSet) -> bool) -> Self {
        let accepting = alphabet.full().nonempty_subsets().filter(|s| pred(*s)).collect();
        MullerCondition { alphabet, accepting }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn is_accepting(&self, set: ColourSet) -> bool {
        self.accepting.contains(&set)
    }

    pub fn len(&self) -> usize {
        self.accepting.len()
    }

    pub fn is_empty(&self) -> bool {
        self.accepting.is_empty()
    }

    /// Accepting sets sorted by bit value.
    pub fn sorted_sets(&self) -> Vec<ColourSet> {
        let mut v: Vec<_> = self.accepting.iter().copied().collect();
        v.sort_unstable();
        v
    }

    /// The condition accepting exactly the non-empty sets this one rejects.
    pub fn complement(&self) -> MullerCondition {
        let accepting = self
            .alphabet
            .full()
            .nonempty_subsets()
            .filter(|s| !self.accepting.contains(s))
            .collect();
        MullerCondition { alphabet: self.alphabet.clone(), accepting }
    }

    /// Restriction of the family to subsets of `within`, keeping the alphabet.
    pub fn restricted(&self, within: ColourSet) -> MullerCondition {
        MullerCondition {
            alphabet: self.alphabet.clone(),
            accepting: self.accepting.iter().copied().filter(|s| s.is_subset(within)).collect(),
        }
    }

    /// `{A : |A| = 2}` over `1..=n`.
    pub fn exactly_two(n: usize) -> Result<Self> {
        Ok(Self::from_predicate(Alphabet::numbered_from_one(n)?, |s| s.len() == 2))
    }

    /// `{A : |A| > 1}` over `1..=n`.
    pub fn more_than_one(n: usize) -> Result<Self> {
        Ok(Self::from_predicate(Alphabet::numbered_from_one(n)?, |s| s.len() > 1))
    }
}

impl PartialEq for MullerCondition {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet && self.accepting == other.accepting
    }
}

impl Eq for MullerCondition {}

impl fmt::Debug for MullerCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sets: Vec<String> = self.sorted_sets().into_iter().map(|s| self.alphabet.render(s)).collect();
        f.debug_struct("MullerCondition")
            .field("alphabet", &self.alphabet)
            .field("accepting", &sets)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alphabet_rejects_duplicates_and_empty() {
        assert!(Alphabet::new(["a", "a"]).is_err());
        assert!(Alphabet::new(Vec::<String>::new()).is_err());
        assert!(Alphabet::numbered(65).is_err());
        assert_eq!(Alphabet::numbered(64).unwrap().full(), ColourSet::from_bits(u64::MAX));
    }

    #[test]
    fn subsets_enumerate_in_order() {
        let s = ColourSet::from_indices([0, 2]);
        let subs: Vec<_> = s.nonempty_subsets().collect();
        assert_eq!(
            subs,
            vec![
                ColourSet::from_indices([0]),
                ColourSet::from_indices([2]),
                ColourSet::from_indices([0, 2])
            ]
        );
        assert_eq!(ColourSet::EMPTY.nonempty_subsets().count(), 0);
        assert_eq!(ColourSet::full(4).nonempty_subsets().count(), 15);
    }

    #[test]
    fn max_inclusion_examples() {
        let a = ColourSet::from_indices([0]);
        let b = ColourSet::from_indices([1]);
        let ab = a.union(b);
        assert_eq!(max_inclusion([a, ab]), vec![ab]);
        assert_eq!(max_inclusion([a, b]), vec![a, b]);
        assert_eq!(max_inclusion([a, a]), vec![a]);
    }

    #[test]
    fn max_inclusion_matches_pairwise_oracle() {
        // quadratic oracle over every family of subsets of a 3-letter alphabet
        let all: Vec<ColourSet> = ColourSet::full(3).nonempty_subsets().collect();
        for mask in 0u32..(1 << all.len()) {
            let family: Vec<ColourSet> =
                (0..all.len()).filter(|i| mask >> i & 1 == 1).map(|i| all[i]).collect();
            let expected: Vec<ColourSet> = family
                .iter()
                .copied()
                .filter(|s| !family.iter().any(|t| s.is_proper_subset(*t)))
                .collect();
            assert_eq!(max_inclusion(family.clone()), expected);
        }
    }

    #[test]
    fn muller_condition_membership() {
        let f3 = MullerCondition::exactly_two(3).unwrap();
        assert!(f3.is_accepting(ColourSet::from_indices([0, 1])));
        assert!(!f3.is_accepting(ColourSet::from_indices([0])));
        assert!(!f3.is_accepting(ColourSet::full(3)));
        assert_eq!(f3.len(), 3);
        assert_eq!(f3.complement().len(), 4);
        assert!(MullerCondition::new(Alphabet::numbered(2).unwrap(), [ColourSet::EMPTY]).is_err());
        assert!(MullerCondition::new(Alphabet::numbered(2).unwrap(), [ColourSet::singleton(3)]).is_err());
    }
}
