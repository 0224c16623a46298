//! Alternating decomposition graphs: loopless planar multigraphs.

mod genus;
mod planarity;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ribbon::RibbonGraph;
use crate::unionfind::UnionFind;

pub use genus::{turaev_genus_graph, turaev_genus_randomized, GenusStrategy};
pub use planarity::planar_embedding;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("edge {edge} is a loop")]
    HasLoop { edge: usize },
    #[error("edge {edge} has an endpoint outside 0..{vertices}")]
    BadVertex { edge: usize, vertices: usize },
    #[error("vertex {0} has odd degree")]
    OddDegree(usize),
    #[error("graph is not bipartite; odd cycle through vertices {cycle:?}")]
    NotBipartite { cycle: Vec<usize> },
    #[error("component containing vertex {vertex} is not planar")]
    NotPlanar { vertex: usize },
    #[error("rotation system is invalid: {0}")]
    BadEmbedding(String),
    #[error("graph has no sphere embedding attached")]
    NotEmbedded,
    #[error("no parallel pair and fewer than four degree-two vertices in a graph with edges")]
    NoReduction,
}

/// Loopless multigraph with optional 2-colouring and rotation system.
///
/// Rotations list edge indices in cyclic order around each vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bipartition: Option<Vec<bool>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    embedding: Option<Vec<Vec<usize>>>,
}

impl AdGraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        for (i, &(a, b)) in edges.iter().enumerate() {
            if a >= vertex_count || b >= vertex_count {
                return Err(GraphError::BadVertex {
                    edge: i,
                    vertices: vertex_count,
                });
            }
            if a == b {
                return Err(GraphError::HasLoop { edge: i });
            }
        }
        Ok(Self {
            vertex_count,
            edges,
            bipartition: None,
            embedding: None,
        })
    }

    pub fn isolated(n: usize) -> Self {
        Self {
            vertex_count: n,
            edges: Vec::new(),
            bipartition: None,
            embedding: None,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn bipartition(&self) -> Option<&[bool]> {
        self.bipartition.as_deref()
    }

    pub fn embedding(&self) -> Option<&[Vec<usize>]> {
        self.embedding.as_deref()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertex_count];
        for &(a, b) in &self.edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    pub fn incident(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.vertex_count];
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            inc[a].push(i);
            inc[b].push(i);
        }
        inc
    }

    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// Component label of each vertex and the number of components.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let mut uf = UnionFind::new(self.vertex_count);
        for &(a, b) in &self.edges {
            uf.union(a, b);
        }
        uf.labels()
    }

    pub fn component_count(&self) -> usize {
        self.components().1
    }

    /// Attach a rotation system after checking it is a sphere embedding
    /// of every component.
    pub fn with_embedding(mut self, rotations: Vec<Vec<usize>>) -> Result<Self, GraphError> {
        self.check_embedding(&rotations)?;
        self.embedding = Some(rotations);
        Ok(self)
    }

    pub fn without_embedding(mut self) -> Self {
        self.embedding = None;
        self
    }

    fn check_embedding(&self, rot: &[Vec<usize>]) -> Result<(), GraphError> {
        if rot.len() != self.vertex_count {
            return Err(GraphError::BadEmbedding(format!(
                "{} rotations for {} vertices",
                rot.len(),
                self.vertex_count
            )));
        }
        let mut seen = vec![[false; 2]; self.edges.len()];
        for (v, r) in rot.iter().enumerate() {
            for &e in r {
                let (a, b) = *self
                    .edges
                    .get(e)
                    .ok_or_else(|| GraphError::BadEmbedding(format!("unknown edge {e}")))?;
                let side = if a == v {
                    0
                } else if b == v {
                    1
                } else {
                    return Err(GraphError::BadEmbedding(format!("edge {e} is not at vertex {v}")));
                };
                if seen[e][side] {
                    return Err(GraphError::BadEmbedding(format!("edge {e} repeated at vertex {v}")));
                }
                seen[e][side] = true;
            }
        }
        if let Some(e) = seen.iter().position(|s| !s[0] || !s[1]) {
            return Err(GraphError::BadEmbedding(format!("edge {e} missing from a rotation")));
        }
        let r =
            RibbonGraph::from_edge_rotations(&self.edges, rot).map_err(|e| GraphError::BadEmbedding(e.to_string()))?;
        if r.euler_genus() != 0 {
            return Err(GraphError::BadEmbedding(format!(
                "not a sphere embedding (euler genus {})",
                r.euler_genus()
            )));
        }
        Ok(())
    }

    /// Flat ribbon graph of the attached embedding.
    pub fn ribbon(&self) -> Result<RibbonGraph, GraphError> {
        let rot = self.embedding.as_ref().ok_or(GraphError::NotEmbedded)?;
        RibbonGraph::from_edge_rotations(&self.edges, rot).map_err(|e| GraphError::BadEmbedding(e.to_string()))
    }

    /// Genus of the all-twisted ribbon graph of the attached embedding.
    pub fn twisted_genus(&self) -> Result<usize, GraphError> {
        let r = self.ribbon()?.twist_all();
        r.ribbon_genus().map_err(|e| GraphError::BadEmbedding(e.to_string()))
    }

    /// Proper 2-colouring, or an odd cycle.
    pub fn two_colouring(&self) -> Result<Vec<bool>, GraphError> {
        let inc = self.incident();
        let mut colour: Vec<Option<bool>> = vec![None; self.vertex_count];
        let mut parent = vec![usize::MAX; self.vertex_count];
        let mut depth = vec![0usize; self.vertex_count];
        for root in 0..self.vertex_count {
            if colour[root].is_some() {
                continue;
            }
            colour[root] = Some(false);
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for &e in &inc[u] {
                    let w = self.other_end(e, u);
                    match colour[w] {
                        None => {
                            colour[w] = Some(!colour[u].expect("coloured"));
                            parent[w] = u;
                            depth[w] = depth[u] + 1;
                            queue.push_back(w);
                        }
                        Some(c) if c == colour[u].expect("coloured") => {
                            return Err(GraphError::NotBipartite {
                                cycle: tree_cycle(&parent, &depth, u, w),
                            });
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        Ok(colour.into_iter().map(|c| c.expect("all coloured")).collect())
    }

    /// Check even degrees, 2-colourability and planarity, attaching the
    /// colouring.
    pub fn validate(mut self) -> Result<ValidAdGraph, GraphError> {
        if let Some(v) = self.degrees().iter().position(|d| d % 2 == 1) {
            return Err(GraphError::OddDegree(v));
        }
        let colouring = self.two_colouring()?;
        if self.embedding.is_none() {
            planar_embedding(&self)?;
        }
        self.bipartition = Some(colouring);
        Ok(ValidAdGraph(self))
    }

    pub fn simplify(&self) -> SimpleGraph {
        SimpleGraph {
            vertex_count: self.vertex_count,
            edges: self.edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect(),
        }
    }

    /// e - v + k.
    pub fn nullity(&self) -> usize {
        self.edges.len() + self.component_count() - self.vertex_count
    }

    /// Edge multiplicity for each adjacent pair `(min, max)`.
    pub fn multiplicities(&self) -> BTreeMap<(usize, usize), usize> {
        let mut m = BTreeMap::new();
        for &(a, b) in &self.edges {
            *m.entry((a.min(b), a.max(b))).or_insert(0) += 1;
        }
        m
    }

    /// Text form: `v N`, `e i j` (1-based), then `rot` lines if embedded.
    pub fn to_text(&self) -> String {
        let mut s = format!("v {}\n", self.vertex_count);
        for &(a, b) in &self.edges {
            s.push_str(&format!("e {} {}\n", a + 1, b + 1));
        }
        if let Some(rot) = &self.embedding {
            for (v, r) in rot.iter().enumerate() {
                if r.is_empty() {
                    continue;
                }
                let list: Vec<String> = r.iter().map(|e| (e + 1).to_string()).collect();
                s.push_str(&format!("rot {} : {}\n", v + 1, list.join(" ")));
            }
        }
        s
    }

    /// Parse the text form. `rot` lines are optional; if any are given,
    /// vertices without one get an empty rotation.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut n: Option<usize> = None;
        let mut edges = Vec::new();
        let mut rots: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (ln, line) in text.lines().enumerate() {
            let body = line.split('#').next().unwrap_or("");
            let toks: Vec<(usize, &str)> = body
                .split_whitespace()
                .map(|t| (t.as_ptr() as usize - body.as_ptr() as usize + 1, t))
                .collect();
            if toks.is_empty() {
                continue;
            }
            let err = |column: usize, message: String| GraphError::Parse {
                line: ln + 1,
                column,
                message,
            };
            let num = |(col, t): (usize, &str)| -> Result<usize, GraphError> {
                t.parse::<usize>()
                    .map_err(|_| err(col, format!("'{t}' is not a number")))
            };
            let index = |tok: (usize, &str), limit: usize| -> Result<usize, GraphError> {
                let k = num(tok)?;
                if k == 0 || k > limit {
                    return Err(err(tok.0, format!("index {k} out of range 1..={limit}")));
                }
                Ok(k - 1)
            };
            match toks[0].1 {
                "v" => {
                    if toks.len() != 2 {
                        return Err(err(toks[0].0, "expected 'v N'".into()));
                    }
                    if n.is_some() {
                        return Err(err(toks[0].0, "duplicate 'v' line".into()));
                    }
                    n = Some(num(toks[1])?);
                }
                "e" => {
                    let nv = n.ok_or_else(|| err(toks[0].0, "'e' before 'v'".into()))?;
                    if toks.len() != 3 {
                        return Err(err(toks[0].0, "expected 'e i j'".into()));
                    }
                    let a = index(toks[1], nv)?;
                    let b = index(toks[2], nv)?;
                    if a == b {
                        return Err(err(toks[2].0, "loops are not allowed".into()));
                    }
                    edges.push((a, b));
                }
                "rot" => {
                    let nv = n.ok_or_else(|| err(toks[0].0, "'rot' before 'v'".into()))?;
                    if toks.len() < 3 || toks[2].1 != ":" {
                        return Err(err(toks[0].0, "expected 'rot i : e1 e2 ...'".into()));
                    }
                    let v = index(toks[1], nv)?;
                    let list = toks[3..]
                        .iter()
                        .map(|&t| {
                            num(t).and_then(|k| {
                                if k == 0 {
                                    Err(err(t.0, "edge indices are 1-based".into()))
                                } else {
                                    Ok(k - 1)
                                }
                            })
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    if rots.insert(v, list).is_some() {
                        return Err(err(toks[0].0, format!("duplicate rotation for vertex {}", v + 1)));
                    }
                }
                other => return Err(err(toks[0].0, format!("unknown directive '{other}'"))),
            }
        }
        let n = n.ok_or(GraphError::Parse {
            line: 0,
            column: 0,
            message: "missing 'v' line".into(),
        })?;
        let g = AdGraph::new(n, edges)?;
        if rots.is_empty() {
            return Ok(g);
        }
        let rot = (0..n).map(|v| rots.remove(&v).unwrap_or_default()).collect();
        g.with_embedding(rot)
    }

    /// Disjoint union; vertices of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &AdGraph) -> AdGraph {
        let off = self.vertex_count;
        let eoff = self.edges.len();
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(a, b)| (a + off, b + off)));
        let embedding = match (&self.embedding, &other.embedding) {
            (Some(r1), Some(r2)) => {
                let mut r = r1.clone();
                r.extend(r2.iter().map(|l| l.iter().map(|e| e + eoff).collect()));
                Some(r)
            }
            _ => None,
        };
        AdGraph {
            vertex_count: off + other.vertex_count,
            edges,
            bipartition: None,
            embedding,
        }
    }

    /// Subgraph induced on the vertices with `keep[v]`; returns the
    /// graph and the old index of each new vertex.
    pub fn induced(&self, keep: &[bool]) -> (AdGraph, Vec<usize>) {
        let old: Vec<usize> = (0..self.vertex_count).filter(|&v| keep[v]).collect();
        let mut new = vec![usize::MAX; self.vertex_count];
        for (i, &v) in old.iter().enumerate() {
            new[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(a, b)| keep[a] && keep[b])
            .map(|&(a, b)| (new[a], new[b]))
            .collect();
        (AdGraph::isolated(old.len()).with_edges(edges), old)
    }

    fn with_edges(mut self, edges: Vec<(usize, usize)>) -> Self {
        self.edges = edges;
        self
    }
}

impl fmt::Display for AdGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn tree_cycle(parent: &[usize], depth: &[usize], mut u: usize, mut w: usize) -> Vec<usize> {
    let mut left = vec![u];
    let mut right = vec![w];
    while depth[u] > depth[w] {
        u = parent[u];
        left.push(u);
    }
    while depth[w] > depth[u] {
        w = parent[w];
        right.push(w);
    }
    while u != w {
        u = parent[u];
        w = parent[w];
        left.push(u);
        right.push(w);
    }
    right.pop();
    left.extend(right.into_iter().rev());
    left
}

/// An [`AdGraph`] that passed [`AdGraph::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidAdGraph(AdGraph);

impl ValidAdGraph {
    pub fn into_inner(self) -> AdGraph {
        self.0
    }

    /// Attach a sphere embedding, computing one if none is present.
    pub fn embedded(self) -> Result<ValidAdGraph, GraphError> {
        if self.0.embedding.is_some() {
            return Ok(self);
        }
        let rot = planar_embedding(&self.0)?;
        let bip = self.0.bipartition.clone();
        let mut g = self.0.with_embedding(rot)?;
        g.bipartition = bip;
        Ok(ValidAdGraph(g))
    }

    pub fn turaev_genus(&self) -> Result<usize, GraphError> {
        turaev_genus_graph(self)
    }
}

impl Deref for ValidAdGraph {
    type Target = AdGraph;

    fn deref(&self) -> &AdGraph {
        &self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleGraph {
    pub vertex_count: usize,
    pub edges: BTreeSet<(usize, usize)>,
}

impl SimpleGraph {
    pub fn nullity(&self) -> usize {
        let mut uf = UnionFind::new(self.vertex_count);
        for &(a, b) in &self.edges {
            uf.union(a, b);
        }
        self.edges.len() + uf.labels().1 - self.vertex_count
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn c2sq() -> AdGraph {
        AdGraph::new(2, vec![(0, 1); 4]).unwrap()
    }

    #[test]
    fn validation() {
        assert!(c2sq().validate().is_ok());
        let c3 = AdGraph::new(3, vec![(0, 1), (0, 1), (1, 2), (1, 2), (2, 0), (2, 0)]).unwrap();
        match c3.validate() {
            Err(GraphError::NotBipartite { cycle }) => assert_eq!(cycle.len(), 3),
            other => panic!("{other:?}"),
        }
        let odd = AdGraph::new(2, vec![(0, 1); 3]).unwrap();
        assert_eq!(odd.validate(), Err(GraphError::OddDegree(0)));
        assert_eq!(AdGraph::new(1, vec![(0, 0)]), Err(GraphError::HasLoop { edge: 0 }));
    }

    #[test]
    fn k33_doubled_is_not_planar() {
        let mut edges = Vec::new();
        for a in 0..3 {
            for b in 3..6 {
                edges.push((a, b));
                edges.push((a, b));
            }
        }
        let g = AdGraph::new(6, edges).unwrap();
        assert!(matches!(g.validate(), Err(GraphError::NotPlanar { .. })));
    }

    #[test]
    fn simplify_and_nullity() {
        let s = c2sq().simplify();
        assert_eq!(s.edges.len(), 1);
        assert_eq!(s.nullity(), 0);
        assert_eq!(c2sq().nullity(), 3);
        let e = AdGraph::isolated(3);
        assert_eq!(e.simplify().edges.len(), 0);
        assert_eq!(e.nullity(), 0);
    }

    #[test]
    fn text_round_trip() {
        let g = c2sq().validate().unwrap().embedded().unwrap().into_inner();
        let back = AdGraph::parse(&g.to_text()).unwrap();
        assert_eq!(back.edges(), g.edges());
        assert_eq!(back.embedding(), g.embedding());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            AdGraph::parse("v 2\ne 1 1\n"),
            Err(GraphError::Parse { line: 2, column: 5, .. })
        ));
        assert!(matches!(
            AdGraph::parse("v 2\ne 1 3\n"),
            Err(GraphError::Parse { line: 2, column: 5, .. })
        ));
        assert!(matches!(
            AdGraph::parse("e 1 2"),
            Err(GraphError::Parse { line: 1, .. })
        ));
        assert!(AdGraph::parse("v 2\ne 1 2\ne 1 2\nrot 1 : 1 2\nrot 2 : 1 2\n").is_ok());
    }

    #[test]
    fn bad_embedding_rejected() {
        // Theta graph with equal orders at both ends lives on a torus.
        let g = AdGraph::new(2, vec![(0, 1); 3]).unwrap();
        assert!(matches!(
            g.with_embedding(vec![vec![0, 1, 2], vec![0, 1, 2]]),
            Err(GraphError::BadEmbedding(_))
        ));
    }

    #[test]
    fn doubled_square_twisted_genus() {
        let g = c2sq().with_embedding(vec![vec![0, 1, 2, 3], vec![3, 2, 1, 0]]).unwrap();
        assert_eq!(g.twisted_genus().unwrap(), 1);
    }
}
