//! JSON documents for conditions, automata, Zielonka trees, games and
//! strategies. Colours and letters are written by name.
//!
//! ```text
//! condition  {"alphabet": [..], "accepting": [[..], ..]}
//! automaton  {"states": n, "initial": q, "input": [..], "output": [..],
//!             "delta": [[q, "a", q', "x"], ..], "acceptance": {..}}
//! acceptance {"kind": "muller" | "gen_buchi" | "gen_co_buchi", "sets": [[..], ..]}
//!            {"kind": "rabin" | "streett", "pairs": [{"e": [..], "f": [..]}, ..]}
//!            {"kind": "parity", "priorities": [p for each output colour]}
//! tree       {"label": [..], "accepting": bool, "children": [..]}
//! game       {"condition": {..}, "vertices": [{"id": v, "owner": "eve" | "adam"}],
//!             "initial": v, "edges": [{"from": v, "to": w, "colour": "a" | null}]}
//! strategy   {"memory": {"states": k, "initial": m, "kind": "general" | "chromatic",
//!             "update": [[..], ..]}, "table": [{"vertex": v, "mstate": m, "edge": e}]}
//! ```
//!
//! General memory rows are indexed by edge position in the game file,
//! chromatic rows by colour position in the condition alphabet.

use serde::{Deserialize, Serialize};

use crate::acceptance::{Acceptance, Pair};
use crate::automaton::Automaton;
use crate::colour::{Alphabet, ColourSet, MullerCondition};
use crate::error::{Error, Result};
use crate::games::{Arena, GameEdge, MemoryStructure, MemoryUpdate, Player, StrategyTable};
use crate::zielonka::ZielonkaTree;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConditionDoc {
    pub alphabet: Vec<String>,
    pub accepting: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDoc {
    pub e: Vec<String>,
    pub f: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum AcceptanceDoc {
    Muller { sets: Vec<Vec<String>> },
    Parity { priorities: Vec<u32> },
    Rabin { pairs: Vec<PairDoc> },
    Streett { pairs: Vec<PairDoc> },
    GenBuchi { sets: Vec<Vec<String>> },
    GenCoBuchi { sets: Vec<Vec<String>> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomatonDoc {
    pub states: usize,
    pub initial: usize,
    pub input: Vec<String>,
    pub output: Vec<String>,
    pub delta: Vec<(usize, String, usize, String)>,
    pub acceptance: AcceptanceDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreeDoc {
    pub label: Vec<String>,
    pub accepting: bool,
    pub children: Vec<TreeDoc>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OwnerDoc {
    Eve,
    Adam,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexDoc {
    pub id: usize,
    pub owner: OwnerDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub from: usize,
    pub to: usize,
    pub colour: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameDoc {
    pub condition: ConditionDoc,
    pub vertices: Vec<VertexDoc>,
    pub initial: usize,
    pub edges: Vec<EdgeDoc>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MemoryKindDoc {
    General,
    Chromatic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MemoryDoc {
    pub states: usize,
    pub initial: usize,
    pub kind: MemoryKindDoc,
    pub update: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MoveDoc {
    pub vertex: usize,
    pub mstate: usize,
    pub edge: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrategyDoc {
    pub memory: MemoryDoc,
    pub table: Vec<MoveDoc>,
}

fn names(alphabet: &Alphabet, set: ColourSet) -> Vec<String> {
    alphabet.names_of(set)
}

fn set_of(alphabet: &Alphabet, names: &[String]) -> Result<ColourSet> {
    alphabet.set_from_names(names)
}

pub fn condition_to_doc(f: &MullerCondition) -> ConditionDoc {
    ConditionDoc {
        alphabet: f.alphabet().symbols().to_vec(),
        accepting: f.sorted_sets().into_iter().map(|s| names(f.alphabet(), s)).collect(),
    }
}

pub fn condition_from_doc(doc: &ConditionDoc) -> Result<MullerCondition> {
    let alphabet = Alphabet::new(doc.alphabet.iter().cloned())?;
    let sets = doc.accepting.iter().map(|s| set_of(&alphabet, s)).collect::<Result<Vec<_>>>()?;
    MullerCondition::new(alphabet, sets)
}

fn acceptance_to_doc(acc: &Acceptance, out: &Alphabet) -> AcceptanceDoc {
    let sets = |v: &[ColourSet]| v.iter().map(|s| names(out, *s)).collect();
    let pairs = |v: &[Pair]| v.iter().map(|p| PairDoc { e: names(out, p.e), f: names(out, p.f) }).collect();
    match acc {
        Acceptance::Muller(s) => AcceptanceDoc::Muller { sets: sets(s) },
        Acceptance::Parity(p) => AcceptanceDoc::Parity { priorities: p.clone() },
        Acceptance::Rabin(p) => AcceptanceDoc::Rabin { pairs: pairs(p) },
        Acceptance::Streett(p) => AcceptanceDoc::Streett { pairs: pairs(p) },
        Acceptance::GenBuchi(s) => AcceptanceDoc::GenBuchi { sets: sets(s) },
        Acceptance::GenCoBuchi(s) => AcceptanceDoc::GenCoBuchi { sets: sets(s) },
    }
}

fn acceptance_from_doc(doc: &AcceptanceDoc, out: &Alphabet) -> Result<Acceptance> {
    let sets = |v: &[Vec<String>]| v.iter().map(|s| set_of(out, s)).collect::<Result<Vec<_>>>();
    let pairs = |v: &[PairDoc]| {
        v.iter()
            .map(|p| Ok(Pair::new(set_of(out, &p.e)?, set_of(out, &p.f)?)))
            .collect::<Result<Vec<_>>>()
    };
    Ok(match doc {
        AcceptanceDoc::Muller { sets: s } => {
            let family = sets(s)?;
            if family.iter().any(|s| s.is_empty()) {
                return Err(Error::malformed("the empty set cannot be an accepting set"));
            }
            Acceptance::Muller(family)
        }
        AcceptanceDoc::Parity { priorities } => Acceptance::Parity(priorities.clone()),
        AcceptanceDoc::Rabin { pairs: p } => Acceptance::Rabin(pairs(p)?),
        AcceptanceDoc::Streett { pairs: p } => Acceptance::Streett(pairs(p)?),
        AcceptanceDoc::GenBuchi { sets: s } => Acceptance::GenBuchi(sets(s)?),
        AcceptanceDoc::GenCoBuchi { sets: s } => Acceptance::GenCoBuchi(sets(s)?),
    })
}

pub fn automaton_to_doc(a: &Automaton) -> AutomatonDoc {
    let delta = (0..a.edge_count())
        .map(|e| {
            let (q, x, t, c) = a.edge(e);
            (q, a.input().name(x).to_string(), t, a.output().name(c).to_string())
        })
        .collect();
    AutomatonDoc {
        states: a.size(),
        initial: a.initial(),
        input: a.input().symbols().to_vec(),
        output: a.output().symbols().to_vec(),
        delta,
        acceptance: acceptance_to_doc(a.acceptance(), a.output()),
    }
}

pub fn automaton_from_doc(doc: &AutomatonDoc) -> Result<Automaton> {
    let input = Alphabet::new(doc.input.iter().cloned())?;
    let output = Alphabet::new(doc.output.iter().cloned())?;
    let mut delta: Vec<Vec<Option<(usize, usize)>>> = vec![vec![None; input.len()]; doc.states];
    for (q, a, t, c) in &doc.delta {
        if *q >= doc.states {
            return Err(Error::malformed(format!("transition from missing state {q}")));
        }
        let a = input.lookup(a)?;
        let c = output.lookup(c)?;
        if delta[*q][a].replace((*t, c)).is_some() {
            return Err(Error::malformed(format!("two transitions from state {q} on {:?}", input.name(a))));
        }
    }
    let delta = delta
        .into_iter()
        .enumerate()
        .map(|(q, row)| {
            row.into_iter()
                .enumerate()
                .map(|(a, t)| {
                    t.ok_or_else(|| Error::malformed(format!("state {q} has no transition on {:?}", input.name(a))))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let acceptance = acceptance_from_doc(&doc.acceptance, &output)?;
    Automaton::new(input, output, doc.initial, delta, acceptance)
}

pub fn tree_to_doc(t: &ZielonkaTree, alphabet: &Alphabet) -> TreeDoc {
    TreeDoc {
        label: names(alphabet, t.label),
        accepting: t.accepting,
        children: t.children.iter().map(|c| tree_to_doc(c, alphabet)).collect(),
    }
}

pub fn tree_from_doc(doc: &TreeDoc, alphabet: &Alphabet) -> Result<ZielonkaTree> {
    Ok(ZielonkaTree {
        label: set_of(alphabet, &doc.label)?,
        accepting: doc.accepting,
        children: doc.children.iter().map(|c| tree_from_doc(c, alphabet)).collect::<Result<_>>()?,
    })
}

pub fn game_to_doc(arena: &Arena, f: &MullerCondition) -> GameDoc {
    GameDoc {
        condition: condition_to_doc(f),
        vertices: (0..arena.vertex_count())
            .map(|id| VertexDoc {
                id,
                owner: match arena.owner(id) {
                    Player::Eve => OwnerDoc::Eve,
                    Player::Adam => OwnerDoc::Adam,
                },
            })
            .collect(),
        initial: arena.initial(),
        edges: arena
            .edges()
            .iter()
            .map(|e| EdgeDoc {
                from: e.from,
                to: e.to,
                colour: e.colour.map(|c| arena.colours().name(c).to_string()),
            })
            .collect(),
    }
}

/// The arena (coloured over the condition's alphabet) and the condition.
pub fn game_from_doc(doc: &GameDoc) -> Result<(Arena, MullerCondition)> {
    let f = condition_from_doc(&doc.condition)?;
    let mut owner = vec![None; doc.vertices.len()];
    for v in &doc.vertices {
        let slot = owner
            .get_mut(v.id)
            .ok_or_else(|| Error::malformed(format!("vertex id {} out of range", v.id)))?;
        if slot.is_some() {
            return Err(Error::malformed(format!("vertex {} listed twice", v.id)));
        }
        *slot = Some(match v.owner {
            OwnerDoc::Eve => Player::Eve,
            OwnerDoc::Adam => Player::Adam,
        });
    }
    let owner = owner.into_iter().map(|o| o.expect("ids are a permutation")).collect();
    let edges = doc
        .edges
        .iter()
        .map(|e| {
            let colour = e.colour.as_deref().map(|c| f.alphabet().lookup(c)).transpose()?;
            Ok(GameEdge { from: e.from, to: e.to, colour })
        })
        .collect::<Result<Vec<_>>>()?;
    let arena = Arena::new(f.alphabet().clone(), owner, doc.initial, edges)?;
    Ok((arena, f))
}

pub fn strategy_to_doc(memory: &MemoryStructure, table: &StrategyTable) -> StrategyDoc {
    let (kind, update) = match &memory.update {
        MemoryUpdate::General(t) => (MemoryKindDoc::General, t.clone()),
        MemoryUpdate::Chromatic(t) => (MemoryKindDoc::Chromatic, t.clone()),
    };
    StrategyDoc {
        memory: MemoryDoc { states: memory.states, initial: memory.initial, kind, update },
        table: table
            .next_move
            .iter()
            .map(|(&(vertex, mstate), &edge)| MoveDoc { vertex, mstate, edge })
            .collect(),
    }
}

/// Structural decoding only; [`crate::games::verify_strategy`] checks the
/// result against a game.
pub fn strategy_from_doc(doc: &StrategyDoc) -> Result<(MemoryStructure, StrategyTable)> {
    let update = match doc.memory.kind {
        MemoryKindDoc::General => MemoryUpdate::General(doc.memory.update.clone()),
        MemoryKindDoc::Chromatic => MemoryUpdate::Chromatic(doc.memory.update.clone()),
    };
    let memory = MemoryStructure { states: doc.memory.states, initial: doc.memory.initial, update };
    let mut table = StrategyTable::default();
    for m in &doc.table {
        if table.next_move.insert((m.vertex, m.mstate), m.edge).is_some() {
            return Err(Error::malformed(format!("two moves for vertex {} in state {}", m.vertex, m.mstate)));
        }
    }
    Ok((memory, table))
}

pub fn to_json<T: Serialize>(doc: &T) -> String {
    serde_json::to_string_pretty(doc).expect("documents serialise") + "\n"
}

pub fn from_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    Ok(serde_json::from_str(text)?)
}
