//! Graph moves and scripts of moves.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::families::{make_family, FamilyError, FamilySpec};
use crate::graph::{planar_embedding, AdGraph, GraphError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error("move does not apply: {0}")]
    InvalidSite(String),
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// Vertex and edge indices are 0-based. Removing a vertex or an edge
/// shifts every later index down by one; new vertices and edges are
/// appended.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Move {
    /// New vertex `w` joined to `vertex` by two edges.
    DoubledPendant { vertex: usize },
    /// Subdivide the parallel pair `e1, e2` (ends `u, v`): both become
    /// `u - w` and two new `w - v` edges are appended.
    DoubledPathExtend { e1: usize, e2: usize },
    /// Inverse of the extension at a degree-four vertex with two
    /// neighbours, two edges to each. The vertex merges into its lower
    /// neighbour and that pair is deleted.
    DoubledPathContract { vertex: usize },
    /// `vertex` keeps the edges in `keep`; a new vertex takes the rest;
    /// a new degree-two vertex joins the two. Both sides must be odd.
    TwoPathExtend { vertex: usize, keep: Vec<usize> },
    /// Identify `v2` into `v1`; they must lie in different components.
    OneSumComponents { v1: usize, v2: usize },
    /// Two-sum along `edge` with `other_edge` of a family member: the
    /// edges are deleted and their tails and heads identified.
    TwoSum {
        edge: usize,
        other: FamilySpec,
        other_edge: usize,
    },
}

fn invalid<T>(msg: impl Into<String>) -> Result<T, MoveError> {
    Err(MoveError::InvalidSite(msg.into()))
}

fn remove_vertex(edges: &mut [(usize, usize)], v: usize) {
    for e in edges {
        for x in [&mut e.0, &mut e.1] {
            debug_assert_ne!(*x, v);
            if *x > v {
                *x -= 1;
            }
        }
    }
}

/// The single-edge check for a contractible doubled-path vertex:
/// `(lower, higher)` neighbours.
pub fn contractible(g: &AdGraph, v: usize) -> Option<(usize, usize)> {
    let inc = g.incident();
    if inc[v].len() != 4 {
        return None;
    }
    let mut nb: Vec<usize> = inc[v].iter().map(|&e| g.other_end(e, v)).collect();
    nb.sort_unstable();
    (nb[0] == nb[1] && nb[2] == nb[3] && nb[1] != nb[2]).then_some((nb[0], nb[2]))
}

/// Apply a move. The result carries a sphere embedding whenever the
/// input did.
pub fn apply_move(g: &AdGraph, m: &Move) -> Result<AdGraph, MoveError> {
    let n = g.vertex_count();
    let mut edges = g.edges().to_vec();
    let count = match m {
        Move::DoubledPendant { vertex } => {
            if *vertex >= n {
                return invalid(format!("no vertex {vertex}"));
            }
            edges.push((*vertex, n));
            edges.push((*vertex, n));
            n + 1
        }
        Move::DoubledPathExtend { e1, e2 } => {
            let (e1, e2) = (*e1, *e2);
            if e1 == e2 || e1 >= edges.len() || e2 >= edges.len() {
                return invalid("need two distinct edges");
            }
            let (u, v) = edges[e1];
            let (a, b) = edges[e2];
            if !((a, b) == (u, v) || (a, b) == (v, u)) {
                return invalid(format!("edges {e1} and {e2} are not parallel"));
            }
            edges[e1] = (u, n);
            edges[e2] = (u, n);
            edges.push((n, v));
            edges.push((n, v));
            n + 1
        }
        Move::DoubledPathContract { vertex } => {
            let v = *vertex;
            if v >= n {
                return invalid(format!("no vertex {v}"));
            }
            let Some((a, b)) = contractible(g, v) else {
                return invalid(format!("vertex {v} is not inside a doubled path"));
            };
            edges.retain(|&(x, y)| !((x == v && y == a) || (x == a && y == v)));
            for e in &mut edges {
                if *e == (v, b) {
                    *e = (a, b);
                } else if *e == (b, v) {
                    *e = (b, a);
                }
            }
            remove_vertex(&mut edges, v);
            n - 1
        }
        Move::TwoPathExtend { vertex, keep } => {
            let v = *vertex;
            if v >= n {
                return invalid(format!("no vertex {v}"));
            }
            let inc = g.incident();
            let mut a = keep.clone();
            a.sort_unstable();
            a.dedup();
            if a.len() != keep.len() || a.iter().any(|e| !inc[v].contains(e)) {
                return invalid("kept edges must be distinct edges at the vertex");
            }
            let rest = inc[v].len() - a.len();
            if a.len() % 2 == 0 || rest.is_multiple_of(2) {
                return invalid("both sides of the split must be odd");
            }
            if let Some(rot) = g.embedding() {
                if !contiguous(&rot[v], &a) {
                    return invalid("kept edges are not consecutive in the rotation");
                }
            }
            for (i, e) in edges.iter_mut().enumerate() {
                if inc[v].contains(&i) && a.binary_search(&i).is_err() {
                    if e.0 == v {
                        e.0 = n;
                    } else {
                        e.1 = n;
                    }
                }
            }
            edges.push((v, n + 1));
            edges.push((n, n + 1));
            n + 2
        }
        Move::OneSumComponents { v1, v2 } => {
            let (v1, v2) = (*v1, *v2);
            if v1 >= n || v2 >= n {
                return invalid("vertex out of range");
            }
            let (comp, _) = g.components();
            if comp[v1] == comp[v2] {
                return invalid("vertices lie in the same component");
            }
            for e in &mut edges {
                for x in [&mut e.0, &mut e.1] {
                    if *x == v2 {
                        *x = v1;
                    }
                }
            }
            remove_vertex(&mut edges, v2);
            n - 1
        }
        Move::TwoSum {
            edge,
            other,
            other_edge,
        } => {
            let h = make_family(other)?;
            if *edge >= edges.len() || *other_edge >= h.edge_count() {
                return invalid("edge out of range");
            }
            let (a, b) = edges.remove(*edge);
            let (c, d) = h.edges()[*other_edge];
            let map = |x: usize| {
                if x == c {
                    a
                } else if x == d {
                    b
                } else {
                    n + x - usize::from(x > c) - usize::from(x > d)
                }
            };
            for (i, &(x, y)) in h.edges().iter().enumerate() {
                if i != *other_edge {
                    edges.push((map(x), map(y)));
                }
            }
            n + h.vertex_count() - 2
        }
    };
    let out = AdGraph::new(count, edges)?;
    if g.embedding().is_some() {
        let rot = planar_embedding(&out)?;
        return Ok(out.with_embedding(rot)?);
    }
    Ok(out)
}

/// Whether the sorted edge set `a` is a cyclic interval of `rot`.
fn contiguous(rot: &[usize], a: &[usize]) -> bool {
    let k = rot.len();
    let inside: Vec<bool> = rot.iter().map(|e| a.binary_search(e).is_ok()).collect();
    let starts = (0..k).filter(|&i| inside[i] && !inside[(i + k - 1) % k]).count();
    starts <= 1
}

/// A starting number of isolated vertices and a list of moves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveScript {
    pub start: usize,
    pub moves: Vec<Move>,
}

impl MoveScript {
    pub fn run(&self) -> Result<AdGraph, MoveError> {
        let mut g = AdGraph::isolated(self.start).with_embedding(vec![Vec::new(); self.start])?;
        for m in &self.moves {
            g = apply_move(&g, m)?;
        }
        Ok(g)
    }
}

impl fmt::Display for MoveScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "start {}", self.start)?;
        for m in &self.moves {
            match m {
                Move::DoubledPendant { vertex } => writeln!(f, "pendant {}", vertex + 1)?,
                Move::DoubledPathExtend { e1, e2 } => writeln!(f, "extend {} {}", e1 + 1, e2 + 1)?,
                Move::DoubledPathContract { vertex } => writeln!(f, "contract {}", vertex + 1)?,
                Move::TwoPathExtend { vertex, keep } => {
                    let list: Vec<String> = keep.iter().map(|e| (e + 1).to_string()).collect();
                    writeln!(f, "twopath {} : {}", vertex + 1, list.join(" "))?
                }
                Move::OneSumComponents { v1, v2 } => writeln!(f, "onesum {} {}", v1 + 1, v2 + 1)?,
                Move::TwoSum {
                    edge,
                    other,
                    other_edge,
                } => {
                    let spec = script_spec(other);
                    writeln!(f, "twosum {} {} : {}", edge + 1, other_edge + 1, spec)?
                }
            }
        }
        Ok(())
    }
}

/// Family specs in scripts use a compact prefix form, e.g. `K4pq 2 2` or
/// `C4Legs 0 1 0 1`. Composite specs are not scriptable.
fn script_spec(spec: &FamilySpec) -> String {
    match spec {
        FamilySpec::DoubledPath(k) => format!("DoubledPath {k}"),
        FamilySpec::DoubledCycle(i) => format!("DoubledCycle {i}"),
        FamilySpec::Theta(i, j, k) => format!("Theta {i} {j} {k}"),
        FamilySpec::K4pq(p, q) => format!("K4pq {p} {q}"),
        FamilySpec::K4p(p) => format!("K4p {p}"),
        FamilySpec::K4TwoSum(p, q) => format!("K4TwoSum {p} {q}"),
        FamilySpec::C4Legs(p, q, r, s) => format!("C4Legs {p} {q} {r} {s}"),
        FamilySpec::K4tilde(p, q) => format!("K4tilde {p} {q}"),
        FamilySpec::K4tildeTwoSum(p, q, r, s) => format!("K4tildeTwoSum {p} {q} {r} {s}"),
        other => format!("{other:?}"),
    }
}

fn parse_spec(words: &[usize], name: &str) -> Option<FamilySpec> {
    let w = words;
    Some(match (name, w.len()) {
        ("DoubledPath", 1) => FamilySpec::DoubledPath(w[0]),
        ("DoubledCycle", 1) => FamilySpec::DoubledCycle(w[0]),
        ("Theta", 3) => FamilySpec::Theta(w[0], w[1], w[2]),
        ("K4pq", 2) => FamilySpec::K4pq(w[0], w[1]),
        ("K4p", 1) => FamilySpec::K4p(w[0]),
        ("K4TwoSum", 2) => FamilySpec::K4TwoSum(w[0], w[1]),
        ("C4Legs", 4) => FamilySpec::C4Legs(w[0], w[1], w[2], w[3]),
        ("K4tilde", 2) => FamilySpec::K4tilde(w[0], w[1]),
        ("K4tildeTwoSum", 4) => FamilySpec::K4tildeTwoSum(w[0], w[1], w[2], w[3]),
        _ => return None,
    })
}

impl FromStr for MoveScript {
    type Err = MoveError;

    fn from_str(text: &str) -> Result<Self, MoveError> {
        let mut start = None;
        let mut moves = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line_no = ln + 1;
            let body = line.split('#').next().unwrap_or("");
            let toks: Vec<(usize, &str)> = body
                .split_whitespace()
                .map(|t| (t.as_ptr() as usize - line.as_ptr() as usize + 1, t))
                .collect();
            let Some(&(col0, head)) = toks.first() else { continue };
            let err = |column: usize, message: &str| MoveError::Parse {
                line: line_no,
                column,
                message: message.to_string(),
            };
            let num = |i: usize| -> Result<usize, MoveError> {
                let (c, t) = *toks.get(i).ok_or_else(|| err(line.len() + 1, "missing number"))?;
                t.parse::<usize>().map_err(|_| err(c, "expected a number"))
            };
            let idx = |i: usize| -> Result<usize, MoveError> {
                let v = num(i)?;
                v.checked_sub(1).ok_or_else(|| err(toks[i].0, "indices are 1-based"))
            };
            let arity = |k: usize| -> Result<(), MoveError> {
                match toks.get(k) {
                    Some(&(c, _)) => Err(err(c, "unexpected token")),
                    None => Ok(()),
                }
            };
            if start.is_none() && head != "start" {
                return Err(err(col0, "script must begin with `start N`"));
            }
            let m = match head {
                "start" => {
                    if start.is_some() {
                        return Err(err(col0, "duplicate `start`"));
                    }
                    start = Some(num(1)?);
                    arity(2)?;
                    continue;
                }
                "pendant" => {
                    arity(2)?;
                    Move::DoubledPendant { vertex: idx(1)? }
                }
                "extend" => {
                    arity(3)?;
                    Move::DoubledPathExtend {
                        e1: idx(1)?,
                        e2: idx(2)?,
                    }
                }
                "contract" => {
                    arity(2)?;
                    Move::DoubledPathContract { vertex: idx(1)? }
                }
                "onesum" => {
                    arity(3)?;
                    Move::OneSumComponents {
                        v1: idx(1)?,
                        v2: idx(2)?,
                    }
                }
                "twopath" => {
                    let vertex = idx(1)?;
                    match toks.get(2) {
                        Some(&(_, ":")) => {}
                        Some(&(c, _)) => return Err(err(c, "expected `:`")),
                        None => return Err(err(line.len() + 1, "expected `:`")),
                    }
                    let keep = (3..toks.len()).map(idx).collect::<Result<Vec<_>, _>>()?;
                    Move::TwoPathExtend { vertex, keep }
                }
                "twosum" => {
                    let edge = idx(1)?;
                    let other_edge = idx(2)?;
                    match toks.get(3) {
                        Some(&(_, ":")) => {}
                        Some(&(c, _)) => return Err(err(c, "expected `:`")),
                        None => return Err(err(line.len() + 1, "expected `:`")),
                    }
                    let &(c, name) = toks.get(4).ok_or_else(|| err(line.len() + 1, "missing family"))?;
                    let params = (5..toks.len()).map(num).collect::<Result<Vec<_>, _>>()?;
                    let other = parse_spec(&params, name).ok_or_else(|| err(c, "unknown family"))?;
                    Move::TwoSum {
                        edge,
                        other,
                        other_edge,
                    }
                }
                _ => return Err(err(col0, "unknown move")),
            };
            moves.push(m);
        }
        let start = start.ok_or(MoveError::Parse {
            line: 1,
            column: 1,
            message: "empty script".into(),
        })?;
        Ok(MoveScript { start, moves })
    }
}

/// A random script of `len` moves built only from moves that keep the
/// genus at zero: doubled pendants, two-path extensions over
/// consecutive edges, one-sums of components, and extensions of
/// separating parallel pairs.
pub fn random_genus0<R: Rng>(len: usize, rng: &mut R) -> MoveScript {
    let start = rng.gen_range(1..=2);
    let mut script = MoveScript {
        start,
        moves: Vec::new(),
    };
    let mut g = script.run().expect("isolated vertices");
    while script.moves.len() < len {
        let n = g.vertex_count();
        let m = match rng.gen_range(0..4) {
            0 => Move::DoubledPendant {
                vertex: rng.gen_range(0..n),
            },
            1 => {
                let (comp, k) = g.components();
                if k < 2 {
                    continue;
                }
                let v1 = rng.gen_range(0..n);
                let others: Vec<usize> = (0..n).filter(|&v| comp[v] != comp[v1]).collect();
                Move::OneSumComponents {
                    v1,
                    v2: *others.choose(rng).expect("k >= 2"),
                }
            }
            2 => {
                let rot = g.embedding().expect("scripts stay embedded");
                let cands: Vec<usize> = (0..n).filter(|&v| rot[v].len() >= 2).collect();
                let Some(&v) = cands.choose(rng) else { continue };
                let d = rot[v].len();
                let len = 2 * rng.gen_range(0..d / 2) + 1;
                let off = rng.gen_range(0..d);
                let keep = (0..len).map(|i| rot[v][(off + i) % d]).collect();
                Move::TwoPathExtend { vertex: v, keep }
            }
            _ => {
                let pairs = separating_pairs(&g);
                let Some(&(e1, e2)) = pairs.choose(rng) else { continue };
                Move::DoubledPathExtend { e1, e2 }
            }
        };
        g = apply_move(&g, &m).expect("generated moves apply");
        script.moves.push(m);
    }
    script
}

/// Parallel pairs whose removal disconnects their component.
fn separating_pairs(g: &AdGraph) -> Vec<(usize, usize)> {
    let k = g.component_count();
    let e = g.edges();
    let mut out = Vec::new();
    for i in 0..e.len() {
        for j in i + 1..e.len() {
            let same = e[i] == e[j] || (e[i].0 == e[j].1 && e[i].1 == e[j].0);
            if !same {
                continue;
            }
            let rest: Vec<(usize, usize)> = e
                .iter()
                .enumerate()
                .filter(|&(x, _)| x != i && x != j)
                .map(|(_, &p)| p)
                .collect();
            let h = AdGraph::new(g.vertex_count(), rest).expect("subgraph");
            if h.component_count() > k {
                out.push((i, j));
            }
        }
    }
    out
}
