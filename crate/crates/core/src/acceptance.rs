//! Acceptance conditions over an output alphabet. All of them depend only on
//! the set of colours seen infinitely often.

use crate::colour::{ColourSet, MullerCondition};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Pair {
    pub e: ColourSet,
    pub f: ColourSet,
}

impl Pair {
    pub fn new(e: ColourSet, f: ColourSet) -> Self {
        Pair { e, f }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Acceptance {
    /// Explicit family of accepting sets.
    Muller(Vec<ColourSet>),
    /// Priority of each output colour; max-even.
    Parity(Vec<u32>),
    Rabin(Vec<Pair>),
    Streett(Vec<Pair>),
    GenBuchi(Vec<ColourSet>),
    GenCoBuchi(Vec<ColourSet>),
}

impl Acceptance {
    pub fn muller(condition: &MullerCondition) -> Self {
        Acceptance::Muller(condition.sorted_sets())
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Acceptance::Muller(_) => "muller",
            Acceptance::Parity(_) => "parity",
            Acceptance::Rabin(_) => "rabin",
            Acceptance::Streett(_) => "streett",
            Acceptance::GenBuchi(_) => "gen_buchi",
            Acceptance::GenCoBuchi(_) => "gen_co_buchi",
        }
    }

    /// Whether a non-empty infinity set is accepting. The caller guarantees
    /// `inf` lies inside the output alphabet.
    pub fn accepts(&self, inf: ColourSet) -> bool {
        debug_assert!(!inf.is_empty());
        match self {
            Acceptance::Muller(sets) => sets.contains(&inf),
            Acceptance::Parity(prio) => {
                inf.iter().map(|c| prio[c]).max().is_some_and(|p| p % 2 == 0)
            }
            Acceptance::Rabin(pairs) => pairs.iter().any(|p| inf.intersects(p.e) && !inf.intersects(p.f)),
            Acceptance::Streett(pairs) => pairs.iter().all(|p| !inf.intersects(p.e) || inf.intersects(p.f)),
            Acceptance::GenBuchi(sets) => sets.iter().all(|b| inf.intersects(*b)),
            Acceptance::GenCoBuchi(sets) => sets.iter().any(|b| !inf.intersects(*b)),
        }
    }

    /// Union of every colour the condition mentions.
    pub fn referenced_colours(&self) -> ColourSet {
        let mut all = ColourSet::EMPTY;
        match self {
            Acceptance::Muller(sets) | Acceptance::GenBuchi(sets) | Acceptance::GenCoBuchi(sets) => {
                for s in sets {
                    all = all.union(*s);
                }
            }
            Acceptance::Parity(prio) => all = ColourSet::full(prio.len()),
            Acceptance::Rabin(pairs) | Acceptance::Streett(pairs) => {
                for p in pairs {
                    all = all.union(p.e).union(p.f);
                }
            }
        }
        all
    }

    /// Rabin presentation of the same family, when one is immediate.
    /// Parity becomes one pair per even priority; generalised co-Büchi one
    /// pair `(Γ, B_i)` per set.
    pub fn as_rabin(&self, width: usize) -> Result<Vec<Pair>> {
        let full = ColourSet::full(width);
        match self {
            Acceptance::Rabin(pairs) => Ok(pairs.clone()),
            Acceptance::Parity(prio) => {
                let mut evens: Vec<u32> = prio.iter().copied().filter(|p| p % 2 == 0).collect();
                evens.sort_unstable();
                evens.dedup();
                Ok(evens
                    .into_iter()
                    .map(|p| {
                        let e = (0..width).filter(|&c| prio[c] == p).collect();
                        let f = (0..width).filter(|&c| prio[c] > p).collect();
                        Pair::new(e, f)
                    })
                    .collect())
            }
            Acceptance::GenCoBuchi(sets) => Ok(sets.iter().map(|b| Pair::new(full, *b)).collect()),
            other => Err(Error::Unsupported(format!(
                "{} acceptance has no direct Rabin presentation",
                other.kind()
            ))),
        }
    }
}

/// Pointwise complement on non-empty sets: Rabin and Streett swap, as do
/// generalised Büchi and co-Büchi, keeping the same pairs or sets.
pub fn dualise(acc: &Acceptance) -> Result<Acceptance> {
    match acc {
        Acceptance::Rabin(p) => Ok(Acceptance::Streett(p.clone())),
        Acceptance::Streett(p) => Ok(Acceptance::Rabin(p.clone())),
        Acceptance::GenBuchi(s) => Ok(Acceptance::GenCoBuchi(s.clone())),
        Acceptance::GenCoBuchi(s) => Ok(Acceptance::GenBuchi(s.clone())),
        Acceptance::Muller(_) => Err(Error::Unsupported(
            "dualise on Muller acceptance (use MullerCondition::complement)".into(),
        )),
        Acceptance::Parity(_) => Err(Error::Unsupported("dualise on parity acceptance".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cs(ix: &[usize]) -> ColourSet {
        ColourSet::from_indices(ix.iter().copied())
    }

    #[test]
    fn definitions_on_examples() {
        let f3 = MullerCondition::exactly_two(3).unwrap();
        assert!(Acceptance::muller(&f3).accepts(cs(&[0, 1])));

        let parity = Acceptance::Parity(vec![1, 2]);
        assert!(parity.accepts(cs(&[0, 1])));
        assert!(!parity.accepts(cs(&[0])));

        let gb = Acceptance::GenBuchi(vec![cs(&[0]), cs(&[1])]);
        assert!(!gb.accepts(cs(&[0])));
        assert!(gb.accepts(cs(&[0, 1])));

        let gcb = Acceptance::GenCoBuchi(vec![cs(&[0]), cs(&[1])]);
        assert!(gcb.accepts(cs(&[0])));
        assert!(!gcb.accepts(cs(&[0, 1])));

        let rabin = Acceptance::Rabin(vec![Pair::new(cs(&[0]), cs(&[1]))]);
        assert!(rabin.accepts(cs(&[0])));
        assert!(!rabin.accepts(cs(&[0, 1])));
        assert!(!rabin.accepts(cs(&[2])));

        let streett = Acceptance::Streett(vec![Pair::new(cs(&[0]), cs(&[1]))]);
        assert!(!streett.accepts(cs(&[0])));
        assert!(streett.accepts(cs(&[0, 1])));
        assert!(streett.accepts(cs(&[2])));
    }

    #[test]
    fn dualise_swaps_kinds() {
        let rabin = Acceptance::Rabin(vec![Pair::new(cs(&[0]), cs(&[1]))]);
        let streett = dualise(&rabin).unwrap();
        assert_eq!(streett, Acceptance::Streett(vec![Pair::new(cs(&[0]), cs(&[1]))]));
        assert!(rabin.accepts(cs(&[0])) && !streett.accepts(cs(&[0])));

        let gb = Acceptance::GenBuchi(vec![cs(&[0])]);
        assert_eq!(dualise(&gb).unwrap(), Acceptance::GenCoBuchi(vec![cs(&[0])]));

        assert!(matches!(dualise(&Acceptance::Parity(vec![0])), Err(Error::Unsupported(_))));
        assert!(matches!(dualise(&Acceptance::Muller(vec![])), Err(Error::Unsupported(_))));
    }

    #[test]
    fn parity_as_rabin_is_equivalent() {
        let prio = vec![0, 3, 2, 1, 4];
        let parity = Acceptance::Parity(prio.clone());
        let rabin = Acceptance::Rabin(parity.as_rabin(prio.len()).unwrap());
        for s in ColourSet::full(prio.len()).nonempty_subsets() {
            assert_eq!(parity.accepts(s), rabin.accepts(s), "{s:?}");
        }
        let gcb = Acceptance::GenCoBuchi(vec![cs(&[0, 1]), cs(&[2])]);
        let rabin = Acceptance::Rabin(gcb.as_rabin(3).unwrap());
        for s in ColourSet::full(3).nonempty_subsets() {
            assert_eq!(gcb.accepts(s), rabin.accepts(s));
        }
    }
}
