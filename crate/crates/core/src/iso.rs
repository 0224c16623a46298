//! Multigraph isomorphism and canonical forms by colour refinement and
//! individualization.

use std::cmp::Ordering;

use crate::graph::AdGraph;

/// Canonical certificate plus the vertex order that produced it.
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    pub certificate: Vec<u32>,
    /// `order[i]` is the original vertex placed at canonical position `i`.
    pub order: Vec<usize>,
}

impl PartialEq for CanonicalForm {
    fn eq(&self, other: &Self) -> bool {
        self.certificate == other.certificate
    }
}

impl Eq for CanonicalForm {}

impl PartialOrd for CanonicalForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonicalForm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.certificate.cmp(&other.certificate)
    }
}

struct Matrix {
    n: usize,
    m: Vec<u32>,
}

impl Matrix {
    fn get(&self, a: usize, b: usize) -> u32 {
        self.m[a * self.n + b]
    }
}

/// Refine an ordered partition until equitable. Cells split by the
/// sorted multiset of multiplicities into each cell.
fn refine(mat: &Matrix, cells: &mut Vec<Vec<usize>>) {
    loop {
        let mut cell_of = vec![0; mat.n];
        for (i, c) in cells.iter().enumerate() {
            for &v in c {
                cell_of[v] = i;
            }
        }
        let mut next = Vec::with_capacity(cells.len());
        for c in cells.iter() {
            if c.len() == 1 {
                next.push(c.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = c
                .iter()
                .map(|&v| {
                    let mut sig = vec![0u32; cells.len()];
                    for w in 0..mat.n {
                        sig[cell_of[w]] += mat.get(v, w);
                    }
                    (sig, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    start = i;
                }
            }
        }
        let changed = next.len() != cells.len();
        *cells = next;
        if !changed {
            return;
        }
    }
}

fn certificate(mat: &Matrix, order: &[usize]) -> Vec<u32> {
    let n = order.len();
    let mut out = Vec::with_capacity(n * (n - 1) / 2 + 1);
    out.push(n as u32);
    for i in 0..n {
        for j in i + 1..n {
            out.push(mat.get(order[i], order[j]));
        }
    }
    out
}

/// Interchangeable vertices: equal multiplicities to every third vertex.
fn twins(mat: &Matrix, u: usize, v: usize) -> bool {
    (0..mat.n).all(|w| w == u || w == v || mat.get(u, w) == mat.get(v, w))
}

fn search(mat: &Matrix, cells: Vec<Vec<usize>>, best: &mut Option<(Vec<u32>, Vec<usize>)>) {
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let cert = certificate(mat, &order);
        if best.as_ref().is_none_or(|(b, _)| cert < *b) {
            *best = Some((cert, order));
        }
        return;
    };
    let cell = &cells[target];
    let mut tried: Vec<usize> = Vec::new();
    for &v in cell {
        if tried.iter().any(|&u| twins(mat, u, v)) {
            continue;
        }
        tried.push(v);
        let mut child = cells.clone();
        let rest: Vec<usize> = cell.iter().copied().filter(|&w| w != v).collect();
        child.splice(target..=target, [vec![v], rest]);
        refine(mat, &mut child);
        search(mat, child, best);
    }
}

fn connected_form(mat: &Matrix) -> (Vec<u32>, Vec<usize>) {
    let mut cells = vec![(0..mat.n).collect::<Vec<_>>()];
    refine(mat, &mut cells);
    let mut best = None;
    search(mat, cells, &mut best);
    best.expect("search reaches a leaf")
}

/// Canonical form of a loopless multigraph. Components are canonized
/// separately and concatenated in certificate order.
pub fn canonical_form(g: &AdGraph) -> CanonicalForm {
    let (comp, k) = g.components();
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); k];
    for v in 0..g.vertex_count() {
        members[comp[v]].push(v);
    }
    let mut local = vec![0; g.vertex_count()];
    for list in &members {
        for (i, &v) in list.iter().enumerate() {
            local[v] = i;
        }
    }
    let mut mats: Vec<Matrix> = members
        .iter()
        .map(|l| Matrix {
            n: l.len(),
            m: vec![0; l.len() * l.len()],
        })
        .collect();
    for &(a, b) in g.edges() {
        let m = &mut mats[comp[a]];
        let (i, j) = (local[a], local[b]);
        m.m[i * m.n + j] += 1;
        m.m[j * m.n + i] += 1;
    }
    let mut parts: Vec<(Vec<u32>, Vec<usize>)> = mats
        .iter()
        .zip(&members)
        .map(|(mat, list)| {
            let (cert, order) = connected_form(mat);
            (cert, order.into_iter().map(|i| list[i]).collect())
        })
        .collect();
    parts.sort();
    let mut certificate = vec![k as u32];
    let mut order = Vec::with_capacity(g.vertex_count());
    for (c, o) in parts {
        certificate.extend(c);
        order.extend(o);
    }
    CanonicalForm { certificate, order }
}

/// A vertex bijection `phi` with `phi[v]` in `h` for `v` in `g`, if the
/// multigraphs are isomorphic.
pub fn isomorphism(g: &AdGraph, h: &AdGraph) -> Option<Vec<usize>> {
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
        return None;
    }
    let mut dg = g.degrees();
    let mut dh = h.degrees();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return None;
    }
    let cg = canonical_form(g);
    let ch = canonical_form(h);
    if cg != ch {
        return None;
    }
    let mut phi = vec![0; g.vertex_count()];
    for (i, &v) in cg.order.iter().enumerate() {
        phi[v] = ch.order[i];
    }
    Some(phi)
}

pub fn isomorphic(g: &AdGraph, h: &AdGraph) -> bool {
    isomorphism(g, h).is_some()
}

/// Check that `phi` carries the edge multiset of `g` onto that of `h`.
pub fn is_isomorphism(g: &AdGraph, h: &AdGraph, phi: &[usize]) -> bool {
    let mapped: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|&(a, b)| (phi[a].min(phi[b]), phi[a].max(phi[b])))
        .collect();
    let mut a = mapped;
    let mut b: Vec<(usize, usize)> = h.edges().iter().map(|&(x, y)| (x.min(y), x.max(y))).collect();
    a.sort_unstable();
    b.sort_unstable();
    let mut seen = vec![false; phi.len()];
    phi.iter()
        .all(|&p| p < seen.len() && !std::mem::replace(&mut seen[p], true))
        && a == b
}
