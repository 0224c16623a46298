//! Build an adequate diagram whose decomposition graph is a given graph.
//!
//! Each vertex of degree `2k` becomes an alternating tangle: the medial
//! of a star whose centre is joined to `k` boundary vertices by two
//! parallel edges each. Each edge becomes a non-alternating arc joining
//! two tangle endpoints. An isolated vertex becomes a trefoil.

use std::collections::VecDeque;

use thiserror::Error;

use crate::diagram::{ArcId, DiagramError, PlanarDiagram, Sign};
use crate::graph::{planar_embedding, AdGraph, GraphError, ValidAdGraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("edge signs cannot alternate around every vertex")]
    Signs,
    #[error("port {0} is left unconnected")]
    OpenPort(usize),
}

/// Crossings given by four ports in counterclockwise order, joined in
/// pairs. Ports `0, 2` of a crossing are the under-strand unless the
/// crossing is mirrored.
#[derive(Clone, Debug, Default)]
pub struct DiagramBuilder {
    link: Vec<usize>,
    mirrored: Vec<bool>,
}

impl DiagramBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_crossing(&mut self, mirrored: bool) -> usize {
        self.link.extend([usize::MAX; 4]);
        self.mirrored.push(mirrored);
        self.mirrored.len() - 1
    }

    pub fn crossing_count(&self) -> usize {
        self.mirrored.len()
    }

    pub fn port(c: usize, slot: usize) -> usize {
        4 * c + slot
    }

    pub fn connect(&mut self, a: usize, b: usize) {
        self.link[a] = b;
        self.link[b] = a;
    }

    pub fn mirror_crossing(&mut self, c: usize) {
        self.mirrored[c] = !self.mirrored[c];
    }

    /// Whether the strand through `port` passes over.
    pub fn is_over(&self, port: usize) -> bool {
        (port % 2 == 1) != self.mirrored[port / 4]
    }

    /// Orient every strand and emit the diagram.
    pub fn build(&self) -> Result<PlanarDiagram, ConstructError> {
        if let Some(p) = self.link.iter().position(|&l| l == usize::MAX) {
            return Err(ConstructError::OpenPort(p));
        }
        let through = |p: usize| 4 * (p / 4) + (p % 4 + 2) % 4;
        let mut entered = vec![false; self.link.len()];
        let mut seen = vec![false; self.link.len()];
        let mut label = vec![0 as ArcId; self.link.len()];
        let mut next: ArcId = 1;
        for start in 0..self.link.len() {
            if seen[start] {
                continue;
            }
            let mut p = start;
            loop {
                let q = through(p);
                entered[p] = true;
                seen[p] = true;
                seen[q] = true;
                let r = self.link[q];
                label[q] = next;
                label[r] = next;
                next += 1;
                if r == start {
                    break;
                }
                p = r;
            }
        }
        let tuples = (0..self.mirrored.len()).map(|c| {
            let under = usize::from(self.mirrored[c]);
            let first = if entered[4 * c + under] { under } else { under + 2 };
            std::array::from_fn(|k| label[4 * c + (first + k) % 4])
        });
        Ok(PlanarDiagram::from_pd(tuples)?)
    }
}

/// A sphere embedding of `g`.
pub fn embed_planar(g: &AdGraph) -> Result<AdGraph, GraphError> {
    let rot = planar_embedding(g)?;
    g.clone().with_embedding(rot)
}

/// Signs on edges alternating around every vertex of the embedding.
pub fn alternating_signs(g: &AdGraph) -> Result<Vec<Sign>, ConstructError> {
    let rot = g.embedding().ok_or(GraphError::NotEmbedded)?;
    let m = g.edge_count();
    let mut adj = vec![Vec::new(); m];
    for r in rot {
        for j in 0..r.len() {
            let (a, b) = (r[j], r[(j + 1) % r.len()]);
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    let mut sign: Vec<Option<Sign>> = vec![None; m];
    for s in 0..m {
        if sign[s].is_some() {
            continue;
        }
        sign[s] = Some(Sign::Plus);
        let mut queue = VecDeque::from([s]);
        while let Some(e) = queue.pop_front() {
            let want = sign[e].expect("queued edges are signed").flip();
            for &f in &adj[e] {
                match sign[f] {
                    None => {
                        sign[f] = Some(want);
                        queue.push_back(f);
                    }
                    Some(x) if x != want => return Err(ConstructError::Signs),
                    _ => {}
                }
            }
        }
    }
    Ok(sign.into_iter().map(|s| s.expect("all signed")).collect())
}

/// Star tangle with `k` boundary vertices; returns its endpoint ports in
/// counterclockwise order.
fn star_tangle(b: &mut DiagramBuilder, k: usize) -> Vec<usize> {
    // Per boundary vertex, the cw edge `a` and the ccw edge `c`. Ports of
    // each crossing: 0 = R at the boundary vertex, 1 = L at the centre,
    // 2 = R at the centre, 3 = L at the boundary vertex.
    let edges: Vec<[usize; 2]> = (0..k).map(|_| [b.add_crossing(false), b.add_crossing(false)]).collect();
    let p = DiagramBuilder::port;
    let centre: Vec<usize> = edges.iter().flatten().copied().collect();
    for j in 0..centre.len() {
        b.connect(p(centre[j], 1), p(centre[(j + 1) % centre.len()], 2));
    }
    let mut ends = Vec::with_capacity(2 * k);
    for &[a, c] in &edges {
        b.connect(p(c, 3), p(a, 0));
        ends.push(p(a, 3));
        ends.push(p(c, 0));
    }
    ends
}

/// Realize `g` using its attached embedding, or a computed one.
pub fn realize_diagram(g: &ValidAdGraph) -> Result<PlanarDiagram, ConstructError> {
    let embedded = match g.embedding() {
        Some(_) => (**g).clone(),
        None => embed_planar(g)?,
    };
    realize_embedded(&embedded)
}

fn realize_embedded(g: &AdGraph) -> Result<PlanarDiagram, ConstructError> {
    let rot = g.embedding().ok_or(GraphError::NotEmbedded)?;
    let signs = alternating_signs(g)?;
    let mut b = DiagramBuilder::new();
    let mut port_of = vec![[usize::MAX; 2]; g.edge_count()];
    let mut isolated = 0;
    for (v, r) in rot.iter().enumerate() {
        if r.is_empty() {
            isolated += 1;
            continue;
        }
        let first = b.crossing_count();
        let ends = star_tangle(&mut b, r.len() / 2);
        let want_over = signs[r[0]] == Sign::Plus;
        if b.is_over(ends[0]) != want_over {
            for c in first..b.crossing_count() {
                b.mirror_crossing(c);
            }
        }
        for (j, &e) in r.iter().enumerate() {
            let side = usize::from(g.edges()[e].0 != v);
            port_of[e][side] = ends[j];
        }
    }
    for [x, y] in port_of {
        b.connect(x, y);
    }
    let mut d = if b.crossing_count() > 0 {
        b.build()?
    } else {
        PlanarDiagram::empty()
    };
    let trefoil = PlanarDiagram::from_pd([[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]])?;
    for _ in 0..isolated {
        d = d.disjoint_union(&trefoil);
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::altdecomp::decompose;
    use crate::families::{make_family, FamilySpec as F};
    use crate::iso::isomorphic;

    fn round_trip(g: AdGraph) {
        let v = g.clone().validate().unwrap();
        let d = realize_diagram(&v).unwrap();
        let dec = decompose(&d).unwrap();
        assert!(isomorphic(&dec.graph, &g), "round trip failed for\n{g}");
        assert!(d.is_adequate().unwrap(), "not adequate for\n{g}");
        assert_eq!(d.turaev_genus().unwrap(), v.turaev_genus().unwrap());
    }

    #[test]
    fn builder_emits_trefoil() {
        // Three crossings in a ring: standard trefoil shape.
        let mut b = DiagramBuilder::new();
        for _ in 0..3 {
            b.add_crossing(false);
        }
        let p = DiagramBuilder::port;
        for c in 0..3 {
            let n = (c + 1) % 3;
            b.connect(p(c, 3), p(n, 0));
            b.connect(p(c, 2), p(n, 1));
        }
        let d = b.build().unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.link_components(), 1);
        assert!(d.is_alternating());
        assert_eq!(d.turaev_genus().unwrap(), 0);
    }

    #[test]
    fn small_families_round_trip() {
        for spec in [
            F::DoubledCycle(2),
            F::DoubledPath(1),
            F::DoubledPath(3),
            F::DoubledCycle(4),
            F::Theta(1, 1, 1),
            F::K4pq(2, 2),
            F::C4Legs(1, 0, 2, 0),
        ] {
            round_trip(make_family(&spec).unwrap().without_embedding());
        }
    }

    #[test]
    fn isolated_and_disconnected() {
        round_trip(AdGraph::isolated(1));
        round_trip(AdGraph::isolated(2));
        let g = make_family(&F::DisjointUnion(vec![F::DoubledCycle(2), F::DoubledPath(0)])).unwrap();
        round_trip(g.without_embedding());
    }
}
