use std::fs;
use std::path::{Path, PathBuf};

use omega_memory::format::*;
use omega_memory::games::{
    example22_condition, example22_game, find_chromatic_memory, more_than_one_over, solve_muller_game,
    two_state_memory_min2, verify_strategy, Arena, GameEdge, Player,
};
use omega_memory::graph::{
    build_a_g, chromatic_number, colouring_to_rabin, condition_f_g, parse_dimacs, rabin_to_colouring, Colouring,
    SimpleGraph,
};
use omega_memory::rabin::{check_rabin_typeable, min_rabin_size, muller_equivalent, rabin_equivalent, synthesize_rabin_pairs, MinRabinResult};
use omega_memory::reduction::{minimize_genbuchi, minimize_parity};
use omega_memory::zielonka::{memory_requirements, zielonka_tree, zt_to_parity};
use omega_memory::{dualise, Acceptance, Automaton, MullerCondition};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::{Command, Fixture, Format, Options};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Lib(#[from] omega_memory::Error),
    #[error("cannot read {}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use omega_memory::Error as E;
        match self {
            CliError::Lib(E::ScaleGuard(_)) => 3,
            CliError::Lib(E::NotRabinTypeable(_) | E::ImproperColouring(..)) => 1,
            _ => 2,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

/// What goes to stdout, and whether the checked property holds.
pub struct Outcome {
    pub stdout: String,
    pub holds: bool,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, holds: true }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn read_condition(path: &Path) -> Result<MullerCondition> {
    Ok(condition_from_doc(&from_json(&read(path)?)?)?)
}

fn read_automaton(path: &Path) -> Result<Automaton> {
    Ok(automaton_from_doc(&from_json(&read(path)?)?)?)
}

fn read_game(path: &Path) -> Result<(Arena, MullerCondition)> {
    Ok(game_from_doc(&from_json(&read(path)?)?)?)
}

fn read_graph(path: &Path) -> Result<SimpleGraph> {
    Ok(parse_dimacs(&read(path)?)?)
}

fn read_colouring(path: &Path, g: &SimpleGraph) -> Result<Colouring> {
    let text = read(path)?;
    let colours = text
        .split_whitespace()
        .map(|t| match t.parse::<usize>() {
            Ok(c) if c >= 1 => Ok(c - 1),
            _ => Err(omega_memory::Error::Malformed(format!("colour {t:?} is not a positive integer"))),
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    if colours.len() != g.vertex_count() {
        return Err(omega_memory::Error::Malformed(format!(
            "{} colours given for {} vertices",
            colours.len(),
            g.vertex_count()
        ))
        .into());
    }
    let k = colours.iter().max().map_or(1, |m| m + 1);
    Ok(Colouring::new(colours, k)?)
}

fn automaton_json(a: &Automaton) -> String {
    to_json(&automaton_to_doc(a))
}

fn report(format: Format, text: Vec<(&str, String)>, json: serde_json::Value) -> String {
    match format {
        Format::Text => text.into_iter().map(|(k, v)| format!("{k}={v}\n")).collect(),
        Format::Json => serde_json::to_string_pretty(&json).expect("values serialise") + "\n",
    }
}

fn one_based(c: &Colouring) -> Vec<usize> {
    c.colours.iter().map(|x| x + 1).collect()
}

pub fn run(command: &Command, opt: &Options) -> Result<Outcome> {
    match command {
        Command::Zielonka { condition } => {
            let f = read_condition(condition)?;
            let t = zielonka_tree(&f);
            eprintln!("{} nodes, {} leaves, height {}", t.node_count(), t.leaf_count(), t.height());
            Ok(Outcome::ok(match opt.format {
                Format::Text => t.render(f.alphabet()),
                Format::Json => to_json(&tree_to_doc(&t, f.alphabet())),
            }))
        }
        Command::Mem { condition } => {
            let f = read_condition(condition)?;
            let m = memory_requirements(&f);
            let leaves = zielonka_tree(&f).leaf_count();
            Ok(Outcome::ok(report(
                opt.format,
                vec![
                    ("mem_gen", m.mem_gen.to_string()),
                    ("half_positional", m.half_positional.to_string()),
                    ("genbuchi_recognizable", m.genbuchi_recognizable.to_string()),
                    ("parity_priorities", m.parity_priorities_used.to_string()),
                    ("zielonka_leaves", leaves.to_string()),
                ],
                json!({
                    "mem_gen": m.mem_gen,
                    "half_positional": m.half_positional,
                    "genbuchi_recognizable": m.genbuchi_recognizable,
                    "parity_priorities": m.parity_priorities_used,
                    "zielonka_leaves": leaves,
                }),
            )))
        }
        Command::Memchrom { condition } => {
            let f = read_condition(condition)?;
            Ok(Outcome::ok(match min_rabin_size(&f, opt.max_size)? {
                MinRabinResult::Found { size, structure } => {
                    eprintln!("found a {size}-state Rabin-typeable structure");
                    report(
                        opt.format,
                        vec![("mem_chrom", size.to_string())],
                        json!({ "mem_chrom": size, "structure": structure.delta }),
                    )
                }
                MinRabinResult::Unknown { searched_up_to } => {
                    eprintln!("no Rabin automaton with at most {searched_up_to} states; raise --max-size");
                    report(
                        opt.format,
                        vec![("mem_chrom", format!(">{searched_up_to}"))],
                        json!({ "mem_chrom": null, "searched_up_to": searched_up_to }),
                    )
                }
            }))
        }
        Command::Zt2parity { condition } => {
            let a = zt_to_parity(&read_condition(condition)?);
            eprintln!("{} states", a.size());
            Ok(Outcome::ok(automaton_json(&a)))
        }
        Command::Minparity { automaton } => {
            let input = read_automaton(automaton)?;
            let a = minimize_parity(&input)?;
            eprintln!("{} states reduced to {}", input.size(), a.size());
            Ok(Outcome::ok(automaton_json(&a)))
        }
        Command::Minbuchi { automaton } => {
            let input = read_automaton(automaton)?;
            let a = match input.acceptance() {
                Acceptance::GenCoBuchi(_) => {
                    let dual = input.with_acceptance(dualise(input.acceptance())?)?;
                    let min = minimize_genbuchi(&dual)?;
                    min.with_acceptance(dualise(min.acceptance())?)?
                }
                _ => minimize_genbuchi(&input)?,
            };
            eprintln!("{} states reduced to {}", input.size(), a.size());
            Ok(Outcome::ok(automaton_json(&a)))
        }
        Command::Rabincheck { automaton } => {
            let a = read_automaton(automaton)?;
            let r = check_rabin_typeable(&a);
            match r.witness {
                None => {
                    eprintln!("Rabin-typeable; synthesised pairs follow");
                    Ok(Outcome::ok(automaton_json(&synthesize_rabin_pairs(&a)?)))
                }
                Some(w) => {
                    eprintln!("not Rabin-typeable");
                    let out = a.output();
                    Ok(Outcome {
                        stdout: report(
                            opt.format,
                            vec![
                                ("typeable", "false".into()),
                                ("state", w.state.to_string()),
                                ("first", out.render(w.first)),
                                ("second", out.render(w.second)),
                            ],
                            json!({
                                "typeable": false,
                                "state": w.state,
                                "first": out.names_of(w.first),
                                "second": out.names_of(w.second),
                            }),
                        ),
                        holds: false,
                    })
                }
            }
        }
        Command::Equiv { first, second } => {
            let (a1, a2) = (read_automaton(first)?, read_automaton(second)?);
            let (eq, method) = match rabin_equivalent(&a1, &a2) {
                Ok(eq) => (eq, "rabin"),
                Err(omega_memory::Error::Unsupported(_)) => (muller_equivalent(&a1, &a2)?, "product"),
                Err(e) => return Err(e.into()),
            };
            eprintln!("decided by the {method} check");
            Ok(Outcome {
                stdout: report(opt.format, vec![("equivalent", eq.to_string())], json!({ "equivalent": eq })),
                holds: eq,
            })
        }
        Command::Chromatic { graph } => {
            let g = read_graph(graph)?;
            let (chi, c) = chromatic_number(&g)?;
            let colours = one_based(&c);
            let listed = colours.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
            Ok(Outcome::ok(report(
                opt.format,
                vec![("chromatic_number", chi.to_string()), ("colouring", listed)],
                json!({ "chromatic_number": chi, "colouring": colours }),
            )))
        }
        Command::Graph2rabin { graph } => {
            let a = build_a_g(&read_graph(graph)?)?;
            Ok(Outcome::ok(automaton_json(&a)))
        }
        Command::Colour2rabin { graph, colouring } => {
            let g = read_graph(graph)?;
            let c = match colouring {
                Some(path) => read_colouring(path, &g)?,
                None => chromatic_number(&g)?.1,
            };
            Ok(Outcome::ok(automaton_json(&colouring_to_rabin(&g, &c)?)))
        }
        Command::Rabin2colouring { automaton, graph } => {
            let (a, g) = (read_automaton(automaton)?, read_graph(graph)?);
            let c = rabin_to_colouring(&a, &g)?;
            let colours = one_based(&c);
            let listed = colours.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
            Ok(Outcome::ok(report(
                opt.format,
                vec![("colours_used", c.used().to_string()), ("colouring", listed)],
                json!({ "colours_used": c.used(), "colouring": colours }),
            )))
        }
        Command::Solve { game, two_state } => {
            let (arena, f) = read_game(game)?;
            if *two_state {
                if f != more_than_one_over(&arena) {
                    return Err(omega_memory::Error::Precondition(
                        "--two-state needs the condition {A : |A| > 1} over the game's colours".into(),
                    )
                    .into());
                }
                let (memory, table) = two_state_memory_min2(&arena)?;
                eprintln!("Eve wins with a two-state memory");
                return Ok(Outcome::ok(to_json(&strategy_to_doc(&memory, &table))));
            }
            let s = solve_muller_game(&arena, &f)?;
            match s.strategy {
                Some((memory, table)) => {
                    eprintln!("Eve wins; memory has {} states", memory.states);
                    Ok(Outcome::ok(to_json(&strategy_to_doc(&memory, &table))))
                }
                None => {
                    eprintln!("Adam wins from the initial vertex");
                    Ok(Outcome { stdout: String::new(), holds: false })
                }
            }
        }
        Command::Verify { game, strategy } => {
            let (arena, f) = read_game(game)?;
            let (memory, table) = strategy_from_doc(&from_json(&read(strategy)?)?)?;
            let wins = verify_strategy(&arena, &f, &memory, &table)?;
            eprintln!("{}", if wins { "the strategy wins" } else { "the strategy loses" });
            Ok(Outcome {
                stdout: report(opt.format, vec![("wins", wins.to_string())], json!({ "wins": wins })),
                holds: wins,
            })
        }
        Command::Memgame { game } => {
            let (arena, f) = read_game(game)?;
            if solve_muller_game(&arena, &f)?.winner != Player::Eve {
                eprintln!("Adam wins from the initial vertex");
                return Ok(Outcome { stdout: String::new(), holds: false });
            }
            for k in 1..=opt.max_size {
                if let Some((memory, table)) = find_chromatic_memory(&arena, &f, k)? {
                    eprintln!("smallest winning chromatic memory has {k} states");
                    return Ok(Outcome::ok(to_json(&strategy_to_doc(&memory, &table))));
                }
            }
            Err(omega_memory::Error::ScaleGuard(format!(
                "no chromatic memory with at most {} states wins; raise --max-size",
                opt.max_size
            ))
            .into())
        }
        Command::Gen { what, n } => generate(*what, *n, opt),
        Command::ReduceDemo { graph } => reduce_demo(&read_graph(graph)?, opt),
    }
}

fn generate(what: Fixture, n: usize, opt: &Options) -> Result<Outcome> {
    Ok(Outcome::ok(match what {
        Fixture::Example22 => to_json(&game_to_doc(&example22_game(), &example22_condition())),
        Fixture::CliqueCond => to_json(&condition_to_doc(&condition_f_g(&SimpleGraph::complete(n))?)),
        Fixture::Min2Cond => to_json(&condition_to_doc(&MullerCondition::more_than_one(n)?)),
        Fixture::Min2Game => {
            let f = MullerCondition::more_than_one(n)?;
            let arena = random_won_game(&f, opt.seed)?;
            to_json(&game_to_doc(&arena, &f))
        }
    }))
}

/// Random ε-free arenas are drawn until Eve wins one.
fn random_won_game(f: &MullerCondition, seed: u64) -> Result<Arena> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let colours = f.alphabet().len();
    for _ in 0..10_000 {
        let vertices = rng.gen_range(3..=8);
        let owner = (0..vertices).map(|_| if rng.gen_bool(0.5) { Player::Eve } else { Player::Adam }).collect();
        let mut edges = Vec::new();
        for from in 0..vertices {
            let mut targets: Vec<usize> = (0..vertices).collect();
            targets.shuffle(&mut rng);
            for &to in &targets[..rng.gen_range(1..=3)] {
                edges.push(GameEdge { from, to, colour: Some(rng.gen_range(0..colours)) });
            }
        }
        let arena = Arena::new(f.alphabet().clone(), owner, 0, edges)?;
        if solve_muller_game(&arena, f)?.winner == Player::Eve {
            return Ok(arena);
        }
    }
    Err(omega_memory::Error::ScaleGuard("no game won by Eve in 10000 draws".into()).into())
}

fn reduce_demo(g: &SimpleGraph, opt: &Options) -> Result<Outcome> {
    let (chi, colouring) = chromatic_number(g)?;
    let a_g = build_a_g(g)?;
    let a_c = colouring_to_rabin(g, &colouring)?;
    let equivalent = rabin_equivalent(&a_c, &a_g)?;
    let read_back = rabin_to_colouring(&a_c, g)?;
    let min = match min_rabin_size(&condition_f_g(g)?, opt.max_size)? {
        MinRabinResult::Found { size, .. } => size,
        MinRabinResult::Unknown { searched_up_to } => {
            return Err(omega_memory::Error::ScaleGuard(format!(
                "no Rabin automaton with at most {searched_up_to} states; raise --max-size"
            ))
            .into())
        }
    };
    let pairs = match a_g.acceptance() {
        Acceptance::Rabin(p) => p.len(),
        _ => unreachable!("the graph automaton has Rabin acceptance"),
    };
    let holds = equivalent && min == chi && read_back.used() <= chi;
    let rows: Vec<(&str, String)> = vec![
        ("vertices", g.vertex_count().to_string()),
        ("edges", g.edge_count().to_string()),
        ("chromatic number", chi.to_string()),
        ("graph automaton states", a_g.size().to_string()),
        ("graph automaton pairs", pairs.to_string()),
        ("colouring automaton states", a_c.size().to_string()),
        ("colouring automaton equivalent", equivalent.to_string()),
        ("colours read back", read_back.used().to_string()),
        ("minimal Rabin size", min.to_string()),
        ("minimal Rabin size = chromatic number", (min == chi).to_string()),
    ];
    let stdout = match opt.format {
        Format::Text => {
            let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            rows.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
        }
        Format::Json => {
            serde_json::to_string_pretty(&json!({
                "vertices": g.vertex_count(),
                "edges": g.edge_count(),
                "chromatic_number": chi,
                "graph_automaton_states": a_g.size(),
                "graph_automaton_pairs": pairs,
                "colouring_automaton_states": a_c.size(),
                "colouring_automaton_equivalent": equivalent,
                "colours_read_back": read_back.used(),
                "min_rabin_size": min,
            }))
            .expect("values serialise")
                + "\n"
        }
    };
    Ok(Outcome { stdout, holds })
}
