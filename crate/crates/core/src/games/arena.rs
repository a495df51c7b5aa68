use crate::colour::Alphabet;
use crate::error::{Error, Result};
use crate::scc::{scc_decomposition, Digraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    Eve,
    Adam,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Eve => Player::Adam,
            Player::Adam => Player::Eve,
        }
    }
}

/// An edge; `colour == None` is the neutral colour ε.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GameEdge {
    pub from: usize,
    pub to: usize,
    pub colour: Option<usize>,
}

/// A game graph with edges coloured over `colours` or ε.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arena {
    colours: Alphabet,
    owner: Vec<Player>,
    initial: usize,
    edges: Vec<GameEdge>,
    out: Vec<Vec<usize>>,
}

impl Arena {
    pub fn new(colours: Alphabet, owner: Vec<Player>, initial: usize, edges: Vec<GameEdge>) -> Result<Self> {
        let n = owner.len();
        if initial >= n {
            return Err(Error::malformed(format!("initial vertex {initial} out of range")));
        }
        let mut out = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            if e.from >= n || e.to >= n {
                return Err(Error::malformed(format!("edge {i} joins a missing vertex")));
            }
            if let Some(c) = e.colour {
                if c >= colours.len() {
                    return Err(Error::malformed(format!("edge {i} has unknown colour {c}")));
                }
            }
            out[e.from].push(i);
        }
        if let Some(v) = out.iter().position(Vec::is_empty) {
            return Err(Error::malformed(format!("vertex {v} has no outgoing edge")));
        }
        let g = Digraph::from_edges(n, edges.iter().map(|e| (e.from, e.to)));
        let eps_cycle = scc_decomposition(&g, |_| true, |i| edges[i].colour.is_none())
            .into_iter()
            .any(|c| !c.is_trivial());
        if eps_cycle {
            return Err(Error::malformed("the arena has a cycle made only of ε edges"));
        }
        Ok(Arena { colours, owner, initial, edges, out })
    }

    pub fn colours(&self) -> &Alphabet {
        &self.colours
    }

    pub fn vertex_count(&self) -> usize {
        self.owner.len()
    }

    pub fn owner(&self, v: usize) -> Player {
        self.owner[v]
    }

    pub fn owners(&self) -> &[Player] {
        &self.owner
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn edges(&self) -> &[GameEdge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> GameEdge {
        self.edges[e]
    }

    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn is_epsilon_free(&self) -> bool {
        self.edges.iter().all(|e| e.colour.is_some())
    }

    /// The same arena started from another vertex.
    pub fn with_initial(&self, initial: usize) -> Result<Arena> {
        if initial >= self.vertex_count() {
            return Err(Error::malformed(format!("initial vertex {initial} out of range")));
        }
        Ok(Arena { initial, ..self.clone() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        let ab = Alphabet::new(["a"]).unwrap();
        let e = |from, to, colour| GameEdge { from, to, colour };
        assert!(Arena::new(ab.clone(), vec![Player::Eve], 0, vec![e(0, 0, Some(0))]).unwrap().is_epsilon_free());
        assert!(Arena::new(ab.clone(), vec![Player::Eve], 0, vec![e(0, 0, None)]).is_err());
        assert!(Arena::new(ab.clone(), vec![Player::Eve, Player::Adam], 0, vec![e(0, 1, Some(0))]).is_err());
        assert!(Arena::new(ab.clone(), vec![Player::Eve], 0, vec![e(0, 0, Some(1))]).is_err());
        let mixed = Arena::new(
            ab,
            vec![Player::Eve, Player::Adam],
            0,
            vec![e(0, 1, None), e(1, 0, Some(0))],
        )
        .unwrap();
        assert!(!mixed.is_epsilon_free());
    }
}
