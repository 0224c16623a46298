//! Alternating decomposition of a link diagram.
//!
//! Every non-alternating arc carries two marked points, one near each
//! end. Inside a face, the point where the boundary walk leaves one
//! non-alternating arc is joined to the point where it enters the next.
//! The joins close up into disjoint curves; each curve becomes a vertex
//! of the decomposition graph and each non-alternating arc an edge.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{ArcId, ArcKind, DiagramError, Endpoint, PlanarDiagram, Sign};
use crate::graph::{AdGraph, GraphError};
use crate::unionfind::UnionFind;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecomposeError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("decomposition graph: {0}")]
    Graph(#[from] GraphError),
    #[error("inconsistent decomposition: {0}")]
    Inconsistent(String),
}

/// A marked point on a non-alternating arc; `end` 0 sits near the arc's
/// tail, 1 near its head.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MarkedPoint {
    pub arc: ArcId,
    pub end: u8,
}

/// A piece of a curve inside one face.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceArc {
    pub face: usize,
    pub from: MarkedPoint,
    pub to: MarkedPoint,
    /// Crossings on the face boundary cut off by this piece.
    pub crossings: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Curve {
    /// Marked points in the order the curve crosses them.
    pub points: Vec<MarkedPoint>,
    /// Indices into [`CurveSystem::face_arcs`], `face_arcs[i]` leaving `points[i]`.
    pub face_arcs: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSystem {
    pub curves: Vec<Curve>,
    pub face_arcs: Vec<FaceArc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub curves: CurveSystem,
    /// Embedded decomposition graph: one vertex per curve, then one
    /// isolated vertex per split component without curves.
    pub graph: AdGraph,
    /// Curve index of each vertex; `None` for the isolated extras.
    pub vertex_curve: Vec<Option<usize>>,
    /// Non-alternating arc of each edge.
    pub edge_arc: Vec<ArcId>,
    pub edge_sign: Vec<Sign>,
    /// Number of alternating regions.
    pub r_alt: usize,
}

impl Decomposition {
    /// Genus of the decomposition graph's twisted ribbon surface.
    pub fn twisted_genus(&self) -> Result<usize, GraphError> {
        self.graph.twisted_genus()
    }
}

pub fn decompose(d: &PlanarDiagram) -> Result<Decomposition, DecomposeError> {
    let inconsistent = |m: String| DecomposeError::Inconsistent(m);
    let point_near = |arc: usize, e: Endpoint| MarkedPoint {
        arc: d.label(arc),
        end: u8::from(d.arc_ends(arc)[1] == e),
    };
    let point_index = |p: MarkedPoint| 2 * d.arc_index(p.arc).expect("known arc") + p.end as usize;
    let non_alt = |arc: usize| matches!(d.kind_of(arc), ArcKind::NonAlternating(_));

    // Face-arcs, indexed by the marked point they leave from.
    let faces = d.faces();
    let mut face_arcs: Vec<FaceArc> = Vec::new();
    let mut leaving = vec![usize::MAX; 2 * d.arc_count()];
    for (fi, face) in faces.iter().enumerate() {
        let marks: Vec<usize> = (0..face.len()).filter(|&i| non_alt(d.arc_at(face[i]))).collect();
        if marks.len() % 2 == 1 {
            return Err(inconsistent(format!(
                "face {fi} has an odd number of non-alternating arcs"
            )));
        }
        for (k, &i) in marks.iter().enumerate() {
            let j = marks[(k + 1) % marks.len()];
            let ai = d.arc_at(face[i]);
            let aj = d.arc_at(face[j]);
            let from = point_near(ai, d.opposite(face[i]));
            let to = point_near(aj, face[j]);
            let mut crossings = Vec::new();
            let mut t = (i + 1) % face.len();
            loop {
                crossings.push(face[t].crossing);
                if t == j {
                    break;
                }
                t = (t + 1) % face.len();
            }
            let slot = &mut leaving[point_index(from)];
            if *slot != usize::MAX {
                return Err(inconsistent(format!("marked point {from:?} leaves two face-arcs")));
            }
            *slot = face_arcs.len();
            face_arcs.push(FaceArc {
                face: fi,
                from,
                to,
                crossings,
            });
        }
    }

    // Trace curves.
    let mut curve_of_point = vec![usize::MAX; 2 * d.arc_count()];
    let mut curves: Vec<Curve> = Vec::new();
    for arc in 0..d.arc_count() {
        if !non_alt(arc) {
            continue;
        }
        for end in 0..2 {
            let start = 2 * arc + end;
            if curve_of_point[start] != usize::MAX {
                continue;
            }
            let id = curves.len();
            let mut curve = Curve {
                points: Vec::new(),
                face_arcs: Vec::new(),
            };
            let mut p = start;
            while curve_of_point[p] == usize::MAX {
                curve_of_point[p] = id;
                let fa = leaving[p];
                if fa == usize::MAX {
                    return Err(inconsistent("marked point without a face-arc".into()));
                }
                curve.points.push(MarkedPoint {
                    arc: d.label(p / 2),
                    end: (p % 2) as u8,
                });
                curve.face_arcs.push(fa);
                p = point_index(face_arcs[fa].to);
            }
            if p != start {
                return Err(inconsistent("curve does not close up".into()));
            }
            curves.push(curve);
        }
    }

    // Graph: vertices are curves, edges non-alternating arcs.
    let mut edges = Vec::new();
    let mut edge_arc = Vec::new();
    let mut edge_sign = Vec::new();
    let mut edge_of_arc = vec![usize::MAX; d.arc_count()];
    for arc in 0..d.arc_count() {
        if let ArcKind::NonAlternating(sign) = d.kind_of(arc) {
            let (c0, c1) = (curve_of_point[2 * arc], curve_of_point[2 * arc + 1]);
            if c0 == c1 {
                return Err(inconsistent(format!("arc {} crossed twice by one curve", d.label(arc))));
            }
            edge_of_arc[arc] = edges.len();
            edges.push((c0, c1));
            edge_arc.push(d.label(arc));
            edge_sign.push(sign);
        }
    }
    let mut rotations: Vec<Vec<usize>> = curves
        .iter()
        .map(|c| {
            c.points
                .iter()
                .map(|p| edge_of_arc[d.arc_index(p.arc).expect("known arc")])
                .collect()
        })
        .collect();
    let mut vertex_curve: Vec<Option<usize>> = (0..curves.len()).map(Some).collect();

    // Split components with no curves, and crossingless circles.
    let mut has_curve = vec![false; d.crossing_component_count()];
    for arc in 0..d.arc_count() {
        if non_alt(arc) {
            has_curve[d.crossing_component(d.arc_ends(arc)[0].crossing)] = true;
        }
    }
    let extra = has_curve.iter().filter(|h| !**h).count() + d.free_loops();
    rotations.extend(std::iter::repeat_with(Vec::new).take(extra));
    vertex_curve.extend(std::iter::repeat_n(None, extra));

    let graph = AdGraph::new(curves.len() + extra, edges)?.with_embedding(rotations)?;

    // Alternating regions: crossings joined by alternating arcs.
    let mut uf = UnionFind::new(d.crossing_count());
    for arc in 0..d.arc_count() {
        if !non_alt(arc) {
            let [t, h] = d.arc_ends(arc);
            uf.union(t.crossing, h.crossing);
        }
    }
    let (region_of, regions) = uf.labels();
    let r_alt = regions + d.free_loops();

    let out = Decomposition {
        curves: CurveSystem { curves, face_arcs },
        graph,
        vertex_curve,
        edge_arc,
        edge_sign,
        r_alt,
    };
    check_regions(&out, &region_of)?;
    Ok(out)
}

/// Curves bounding one alternating region lie in distinct components
/// of the graph.
fn check_regions(dec: &Decomposition, region_of: &[usize]) -> Result<(), DecomposeError> {
    let (comp, _) = dec.graph.components();
    let regions = region_of.iter().copied().max().map_or(0, |m| m + 1);
    let mut bounding: Vec<Vec<usize>> = vec![Vec::new(); regions];
    for (ci, curve) in dec.curves.curves.iter().enumerate() {
        for &fa in &curve.face_arcs {
            let r = region_of[dec.curves.face_arcs[fa].crossings[0]];
            if !bounding[r].contains(&ci) {
                bounding[r].push(ci);
            }
        }
    }
    for (r, list) in bounding.iter().enumerate() {
        let mut comps: Vec<usize> = list.iter().map(|&c| comp[c]).collect();
        comps.sort_unstable();
        if comps.windows(2).any(|w| w[0] == w[1]) {
            return Err(DecomposeError::Inconsistent(format!(
                "two curves bounding region {r} share a graph component"
            )));
        }
    }
    Ok(())
}

/// Genus of the twisted ribbon graph of the decomposition.
pub fn twisted_genus(d: &PlanarDiagram) -> Result<usize, DecomposeError> {
    Ok(decompose(d)?.twisted_genus()?)
}
