//! Exhaustive census of small alternating decomposition graphs.
//!
//! Connected graphs with edges are generated as bipartite multiplicity
//! matrices `a x b` (`a <= b`) whose rows and columns are both in
//! nonincreasing lexicographic order; every multigraph has such a
//! matrix, so the search is complete, and canonical forms remove the
//! remaining duplicates. Disconnected graphs are multisets of connected
//! ones plus isolated vertices.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::{canonical_contract, classify, ClassifyError, Shape};
use crate::graph::{planar_embedding, turaev_genus_graph, AdGraph, GraphError, ValidAdGraph};
use crate::iso::canonical_form;
use crate::par;

/// Largest supported `max_edges`.
pub const MAX_EDGES_LIMIT: usize = 16;
/// Largest supported `max_vertices`.
pub const MAX_VERTICES_LIMIT: usize = 32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerateError {
    #[error("bounds too large: max_edges <= {MAX_EDGES_LIMIT} and max_vertices <= {MAX_VERTICES_LIMIT} are supported")]
    BoundsTooLarge,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusFilter {
    pub max_vertices: usize,
    pub max_edges: usize,
    pub require_reduced: bool,
    pub require_no_deg2: bool,
    pub genus_equals: Option<usize>,
    /// At most this many degree-two vertices.
    #[serde(default)]
    pub max_deg2: Option<usize>,
    /// Exclude isolated vertices (the empty graph is excluded too).
    #[serde(default)]
    pub no_isolated: bool,
}

impl CensusFilter {
    /// All graphs with at most `max_edges` edges and no more vertices
    /// than edges (at least one).
    pub fn new(max_edges: usize) -> Self {
        Self {
            max_vertices: max_edges.max(1),
            max_edges,
            require_reduced: false,
            require_no_deg2: false,
            genus_equals: None,
            max_deg2: None,
            no_isolated: false,
        }
    }

    pub fn reduced(mut self) -> Self {
        self.require_reduced = true;
        self
    }

    pub fn genus(mut self, k: usize) -> Self {
        self.genus_equals = Some(k);
        self
    }

    pub fn no_deg2(mut self) -> Self {
        self.require_no_deg2 = true;
        self
    }

    fn min_degree(&self) -> usize {
        if self.require_reduced || self.require_no_deg2 {
            4
        } else {
            2
        }
    }

    fn check(&self) -> Result<(), EnumerateError> {
        if self.max_edges > MAX_EDGES_LIMIT || self.max_vertices > MAX_VERTICES_LIMIT {
            return Err(EnumerateError::BoundsTooLarge);
        }
        Ok(())
    }
}

/// A connected graph with edges, plus its genus.
#[derive(Clone)]
struct Piece {
    graph: AdGraph,
    genus: usize,
    deg2: usize,
}

struct Search<'a> {
    a: usize,
    b: usize,
    m: usize,
    min_deg: usize,
    max_deg2: usize,
    out: &'a mut Vec<Vec<u8>>,
}

impl Search<'_> {
    /// Fill row `r`; `tied[j]` says columns `j` and `j + 1` agree so far.
    fn rows(&mut self, r: usize, used: usize, deg2: usize, mat: &mut Vec<u8>, tied: &[bool]) {
        if r == self.a {
            if used == self.m {
                self.out.push(mat.clone());
            }
            return;
        }
        let left = self.m - used;
        let rest_min = (self.a - r - 1) * self.min_deg;
        if left < self.min_deg + rest_min {
            return;
        }
        let mut row = vec![0u8; self.b];
        let prev: Option<Vec<u8>> = (r > 0).then(|| mat[(r - 1) * self.b..r * self.b].to_vec());
        self.entries(r, 0, left - rest_min, 0, true, &prev, &mut row, used, deg2, mat, tied);
    }

    #[allow(clippy::too_many_arguments)]
    fn entries(
        &mut self,
        r: usize,
        j: usize,
        cap: usize,
        sum: usize,
        equal_prev: bool,
        prev: &Option<Vec<u8>>,
        row: &mut Vec<u8>,
        used: usize,
        deg2: usize,
        mat: &mut Vec<u8>,
        tied: &[bool],
    ) {
        if j == self.b {
            if sum % 2 == 1 || sum < self.min_deg {
                return;
            }
            let deg2 = deg2 + usize::from(sum == 2);
            if deg2 > self.max_deg2 {
                return;
            }
            let new_tied: Vec<bool> = (0..self.b - 1).map(|k| tied[k] && row[k] == row[k + 1]).collect();
            mat.extend_from_slice(row);
            self.rows(r + 1, used + sum, deg2, mat, &new_tied);
            mat.truncate(r * self.b);
            return;
        }
        let mut hi = cap - sum;
        if equal_prev {
            if let Some(p) = prev {
                hi = hi.min(p[j] as usize);
            }
        }
        if j > 0 && tied[j - 1] {
            hi = hi.min(row[j - 1] as usize);
        }
        for x in (0..=hi).rev() {
            row[j] = x as u8;
            let eq = equal_prev && prev.as_ref().is_some_and(|p| p[j] as usize == x);
            self.entries(r, j + 1, cap, sum + x, eq, prev, row, used, deg2, mat, tied);
        }
        row[j] = 0;
    }
}

fn matrix_graph(a: usize, b: usize, mat: &[u8]) -> AdGraph {
    let mut edges = Vec::new();
    for i in 0..a {
        for j in 0..b {
            for _ in 0..mat[i * b + j] {
                edges.push((i, a + j));
            }
        }
    }
    AdGraph::new(a + b, edges).expect("bipartite edges are loopless")
}

/// Connected planar graphs with exactly `m` edges, deduplicated.
fn connected_pieces(m: usize, filter: &CensusFilter) -> Vec<Piece> {
    let min_deg = filter.min_degree();
    let max_deg2 = filter.max_deg2.unwrap_or(usize::MAX);
    let mut shapes = Vec::new();
    for a in 1..=m / min_deg {
        for b in a..=m / min_deg {
            if a + b <= filter.max_vertices {
                shapes.push((a, b));
            }
        }
    }
    let found: Vec<Vec<(Vec<u32>, Piece)>> = par::map(&shapes, |&(a, b)| {
        let mut mats = Vec::new();
        let mut search = Search {
            a,
            b,
            m,
            min_deg,
            max_deg2,
            out: &mut mats,
        };
        search.rows(0, 0, 0, &mut Vec::new(), &vec![true; b.saturating_sub(1)]);
        let mut keep = Vec::new();
        for mat in mats {
            let g = matrix_graph(a, b, &mat);
            let deg = g.degrees();
            if deg.iter().any(|d| d % 2 == 1 || *d < min_deg) {
                continue;
            }
            let deg2 = deg.iter().filter(|&&d| d == 2).count();
            if deg2 > max_deg2 || g.component_count() != 1 {
                continue;
            }
            let Ok(rot) = planar_embedding(&g) else { continue };
            if filter.require_reduced && !crate::classify::is_reduced(&g) {
                continue;
            }
            let cert = canonical_form(&g).certificate;
            let g = g.with_embedding(rot).expect("embedding from planarity test");
            let v = g.clone().validate().expect("bipartite, even and planar");
            let genus = turaev_genus_graph(&v).expect("validated graphs reduce");
            keep.push((cert, Piece { graph: g, genus, deg2 }));
        }
        keep
    });
    let mut unique: BTreeMap<Vec<u32>, Piece> = BTreeMap::new();
    for (cert, p) in found.into_iter().flatten() {
        unique.entry(cert).or_insert(p);
    }
    unique.into_values().collect()
}

/// Every validated graph within the bounds, up to isomorphism, in a
/// deterministic order: by edge count, then vertex count, then the
/// chosen components.
pub fn enumerate_adgs(filter: &CensusFilter) -> Result<Vec<ValidAdGraph>, EnumerateError> {
    filter.check()?;
    let mut pieces: Vec<Piece> = Vec::new();
    for m in (2..=filter.max_edges).step_by(2) {
        pieces.extend(connected_pieces(m, filter));
    }
    let mut found: Vec<(usize, usize, Vec<usize>, usize)> = Vec::new();
    let mut chosen = Vec::new();
    combine(&pieces, filter, 0, 0, 0, 0, 0, &mut chosen, &mut found);
    found.sort();
    let max_deg2 = filter.max_deg2.unwrap_or(usize::MAX);
    let mut out = Vec::new();
    for (_, _, idx, isolated) in found {
        let mut g = AdGraph::isolated(0).with_embedding(Vec::new()).expect("empty");
        for &i in &idx {
            g = g.disjoint_union(&pieces[i].graph);
        }
        let iso = AdGraph::isolated(isolated)
            .with_embedding(vec![Vec::new(); isolated])
            .expect("isolated");
        g = g.disjoint_union(&iso);
        debug_assert!(g.degrees().iter().filter(|&&d| d == 2).count() <= max_deg2);
        out.push(g.validate()?);
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn combine(
    pieces: &[Piece],
    filter: &CensusFilter,
    from: usize,
    edges: usize,
    verts: usize,
    genus: usize,
    deg2: usize,
    chosen: &mut Vec<usize>,
    found: &mut Vec<(usize, usize, Vec<usize>, usize)>,
) {
    let genus_ok = filter.genus_equals.is_none_or(|k| k == genus);
    if genus_ok {
        if filter.require_reduced {
            // Reduced: the single vertex alone, or reduced components only.
            if chosen.is_empty() {
                if filter.max_vertices >= 1 {
                    found.push((0, 1, Vec::new(), 1));
                }
            } else {
                found.push((edges, verts, chosen.clone(), 0));
            }
        } else if filter.no_isolated {
            if !chosen.is_empty() {
                found.push((edges, verts, chosen.clone(), 0));
            }
        } else {
            for iso in 0..=filter.max_vertices - verts {
                if verts + iso > 0 {
                    found.push((edges, verts + iso, chosen.clone(), iso));
                }
            }
        }
    }
    let max_deg2 = filter.max_deg2.unwrap_or(usize::MAX);
    for i in from..pieces.len() {
        let p = &pieces[i];
        let (e, v) = (edges + p.graph.edge_count(), verts + p.graph.vertex_count());
        if e > filter.max_edges || v > filter.max_vertices {
            continue;
        }
        if filter.genus_equals.is_some_and(|k| genus + p.genus > k) || deg2 + p.deg2 > max_deg2 {
            continue;
        }
        chosen.push(i);
        combine(pieces, filter, i, e, v, genus + p.genus, deg2 + p.deg2, chosen, found);
        chosen.pop();
    }
}

/// One doubled-path equivalence class of the census.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusClass {
    /// Canonically contracted representative.
    pub representative: AdGraph,
    /// Number of census graphs in the class.
    pub count: usize,
    /// Smallest census member.
    pub example: AdGraph,
    pub shape: Option<Shape>,
}

/// Group the graphs of genus `k` within `filter` by their canonical
/// contraction.
pub fn census(k: usize, filter: &CensusFilter) -> Result<Vec<CensusClass>, EnumerateError> {
    let f = CensusFilter {
        genus_equals: Some(k),
        ..filter.clone()
    };
    let graphs = enumerate_adgs(&f)?;
    let keyed: Vec<(Vec<u32>, AdGraph)> = par::map(&graphs, |g| {
        let c = canonical_contract(g);
        (canonical_form(&c).certificate, c)
    });
    let mut classes: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    let mut out: Vec<CensusClass> = Vec::new();
    for ((cert, rep), g) in keyed.into_iter().zip(&graphs) {
        match classes.get(&cert) {
            Some(&i) => out[i].count += 1,
            None => {
                classes.insert(cert, out.len());
                let shape = classify(g)?.shape;
                out.push(CensusClass {
                    representative: rep.without_embedding(),
                    count: 1,
                    example: (**g).clone(),
                    shape,
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_family, FamilySpec as F};
    use crate::iso::isomorphic;

    #[test]
    fn zero_edges() {
        let f = CensusFilter {
            max_vertices: 3,
            ..CensusFilter::new(0)
        };
        let gs = enumerate_adgs(&f).unwrap();
        assert_eq!(gs.len(), 3);
        assert!(gs.iter().all(|g| g.edge_count() == 0));
    }

    #[test]
    fn two_vertices_four_edges() {
        let f = CensusFilter {
            max_vertices: 2,
            ..CensusFilter::new(4)
        };
        let gs = enumerate_adgs(&f).unwrap();
        // 1 vertex, 2 vertices, C2, C2^2.
        assert_eq!(gs.len(), 4);
        assert!(gs
            .iter()
            .any(|g| isomorphic(g, &make_family(&F::DoubledPath(1)).unwrap())));
        assert!(gs
            .iter()
            .any(|g| isomorphic(g, &make_family(&F::DoubledCycle(2)).unwrap())));
    }

    #[test]
    fn too_large() {
        assert_eq!(
            enumerate_adgs(&CensusFilter::new(18)).unwrap_err(),
            EnumerateError::BoundsTooLarge
        );
    }

    #[test]
    fn reduced_genus_one_is_doubled_even_cycles() {
        let gs = enumerate_adgs(&CensusFilter::new(12).reduced().genus(1)).unwrap();
        assert_eq!(gs.len(), 3);
        for g in &gs {
            let n = g.vertex_count();
            assert!(isomorphic(g, &make_family(&F::DoubledCycle(n)).unwrap()));
        }
    }

    #[test]
    fn reduced_genus_zero_is_a_vertex() {
        let classes = census(0, &CensusFilter::new(8).reduced()).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].representative.vertex_count(), 1);
        assert_eq!(classes[0].count, 1);
    }

    #[test]
    fn genus_one_census() {
        let classes = census(1, &CensusFilter::new(12).reduced()).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].shape, Some(Shape::DoubledEvenCycle));
    }
}
