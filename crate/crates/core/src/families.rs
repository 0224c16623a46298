//! Named graph families.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{planar_embedding, AdGraph, GraphError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilySpec {
    /// Path with `k` doubled edges.
    DoubledPath(usize),
    /// Cycle of length `i >= 2` with doubled edges.
    DoubledCycle(usize),
    /// Two vertices joined by three paths of lengths `i, j, k`, doubled.
    Theta(usize, usize, usize),
    /// `K4` with two opposite edges replaced by doubled paths.
    K4pq(usize, usize),
    /// `K4` with one edge replaced by a doubled path.
    K4p(usize),
    /// Two-sum of `K4p(p)` and `K4p(q)` along the edge away from the paths.
    K4TwoSum(usize, usize),
    /// Four-cycle with pendant doubled paths at its corners.
    C4Legs(usize, usize, usize, usize),
    /// `K4` minus an edge, with pendant doubled paths at the ends of the
    /// missing edge.
    K4tilde(usize, usize),
    /// Two-sum of two `K4tilde` along the edge away from the paths.
    K4tildeTwoSum(usize, usize, usize, usize),
    /// A tree on vertices `0..=edges.len()` with every edge doubled.
    DoubledTree(Vec<(usize, usize)>),
    DisjointUnion(Vec<FamilySpec>),
    /// Identify the chosen vertex of every member into one.
    OneSum(Vec<(FamilySpec, usize)>),
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::DoubledPath(k) => write!(f, "P{k}^2"),
            FamilySpec::DoubledCycle(i) => write!(f, "C{i}^2"),
            FamilySpec::Theta(i, j, k) => write!(f, "C^2({i},{j},{k})"),
            FamilySpec::K4pq(p, q) => write!(f, "K4({p},{q})"),
            FamilySpec::K4p(p) => write!(f, "K4({p})"),
            FamilySpec::K4TwoSum(p, q) => write!(f, "K4({p}) +2 K4({q})"),
            FamilySpec::C4Legs(p, q, r, s) => write!(f, "C4({p},{q},{r},{s})"),
            FamilySpec::K4tilde(p, q) => write!(f, "K4~({p},{q})"),
            FamilySpec::K4tildeTwoSum(p, q, r, s) => write!(f, "K4~({p},{q}) +2 K4~({r},{s})"),
            FamilySpec::DoubledTree(e) => write!(f, "doubled tree on {} vertices", e.len() + 1),
            FamilySpec::DisjointUnion(parts) => {
                let s: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", s.join(" + "))
            }
            FamilySpec::OneSum(parts) => {
                let s: Vec<String> = parts.iter().map(|(p, v)| format!("{p}@{v}")).collect();
                write!(f, "{}", s.join(" +1 "))
            }
        }
    }
}

#[derive(Default)]
struct Builder {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Builder {
    fn vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    fn vertices(&mut self, k: usize) -> Vec<usize> {
        (0..k).map(|_| self.vertex()).collect()
    }

    fn edge(&mut self, a: usize, b: usize) {
        self.edges.push((a, b));
    }

    fn doubled(&mut self, a: usize, b: usize) {
        self.edge(a, b);
        self.edge(a, b);
    }

    /// Doubled path of length `len >= 1` from `a` to `b`.
    fn doubled_path(&mut self, a: usize, b: usize, len: usize) {
        let mut prev = a;
        for _ in 1..len {
            let v = self.vertex();
            self.doubled(prev, v);
            prev = v;
        }
        self.doubled(prev, b);
    }

    /// Pendant doubled path of length `len` hanging from `a`.
    fn pendant(&mut self, a: usize, len: usize) {
        let mut prev = a;
        for _ in 0..len {
            let v = self.vertex();
            self.doubled(prev, v);
            prev = v;
        }
    }

    fn finish(self) -> Result<AdGraph, FamilyError> {
        Ok(AdGraph::new(self.n, self.edges)?)
    }
}

fn need(ok: bool, what: &str) -> Result<(), FamilyError> {
    if ok {
        Ok(())
    } else {
        Err(FamilyError::BadParameters(what.to_string()))
    }
}

fn build(spec: &FamilySpec) -> Result<AdGraph, FamilyError> {
    let mut b = Builder::default();
    match *spec {
        FamilySpec::DoubledPath(k) => {
            let start = b.vertex();
            b.pendant(start, k);
        }
        FamilySpec::DoubledCycle(i) => {
            need(i >= 2, "doubled cycle needs length >= 2")?;
            let vs = b.vertices(i);
            for k in 0..i {
                b.doubled(vs[k], vs[(k + 1) % i]);
            }
        }
        FamilySpec::Theta(i, j, k) => {
            need(i >= 1 && j >= 1 && k >= 1, "theta path lengths must be >= 1")?;
            let (s, t) = (b.vertex(), b.vertex());
            for len in [i, j, k] {
                b.doubled_path(s, t, len);
            }
        }
        FamilySpec::K4pq(p, q) => {
            need(p >= 1 && q >= 1, "path lengths must be >= 1")?;
            let v = b.vertices(4);
            b.doubled_path(v[0], v[1], p);
            b.doubled_path(v[2], v[3], q);
            for (x, y) in [(0, 2), (0, 3), (1, 2), (1, 3)] {
                b.edge(v[x], v[y]);
            }
        }
        FamilySpec::K4p(p) => {
            need(p >= 1, "path length must be >= 1")?;
            let v = b.vertices(4);
            b.doubled_path(v[0], v[1], p);
            for (x, y) in [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
                b.edge(v[x], v[y]);
            }
        }
        FamilySpec::K4TwoSum(p, q) => {
            need(p >= 1 && q >= 1, "path lengths must be >= 1")?;
            // c, d shared; (a, b) and (a2, b2) carry the paths.
            let v = b.vertices(6);
            let (c, d) = (v[0], v[1]);
            for (x, y, len) in [(v[2], v[3], p), (v[4], v[5], q)] {
                b.doubled_path(x, y, len);
                for (s, t) in [(x, c), (x, d), (y, c), (y, d)] {
                    b.edge(s, t);
                }
            }
        }
        FamilySpec::C4Legs(p, q, r, s) => {
            let v = b.vertices(4);
            for k in 0..4 {
                b.edge(v[k], v[(k + 1) % 4]);
            }
            for (k, len) in [p, q, r, s].into_iter().enumerate() {
                b.pendant(v[k], len);
            }
        }
        FamilySpec::K4tilde(p, q) => {
            let v = b.vertices(4);
            let (x, y, u, w) = (v[0], v[1], v[2], v[3]);
            for (s, t) in [(x, u), (x, w), (y, u), (y, w), (u, w)] {
                b.edge(s, t);
            }
            b.pendant(x, p);
            b.pendant(y, q);
        }
        FamilySpec::K4tildeTwoSum(p, q, r, s) => {
            let v = b.vertices(6);
            let (u, w) = (v[0], v[1]);
            for &x in &v[2..6] {
                b.edge(x, u);
                b.edge(x, w);
            }
            for (k, len) in [p, q, r, s].into_iter().enumerate() {
                b.pendant(v[k + 2], len);
            }
        }
        FamilySpec::DoubledTree(ref tree) => {
            let n = tree.len() + 1;
            b.vertices(n);
            let mut uf = crate::unionfind::UnionFind::new(n);
            for &(x, y) in tree {
                need(x < n && y < n && x != y, "tree edge out of range")?;
                need(uf.union(x, y), "tree edges contain a cycle")?;
                b.doubled(x, y);
            }
        }
        FamilySpec::DisjointUnion(ref parts) => {
            let mut g = AdGraph::isolated(0);
            for p in parts {
                g = g.disjoint_union(&build(p)?);
            }
            return Ok(g);
        }
        FamilySpec::OneSum(ref parts) => {
            need(!parts.is_empty(), "one-sum needs at least one member")?;
            let mut n = 0;
            let mut edges = Vec::new();
            let mut glue = usize::MAX;
            for (p, pick) in parts {
                let g = build(p)?;
                need(*pick < g.vertex_count(), "one-sum vertex out of range")?;
                let base = n;
                let map = |v: usize| {
                    if v == *pick && glue != usize::MAX {
                        glue
                    } else if glue != usize::MAX && v > *pick {
                        base + v - 1
                    } else {
                        base + v
                    }
                };
                edges.extend(g.edges().iter().map(|&(a, b)| (map(a), map(b))));
                if glue == usize::MAX {
                    glue = base + pick;
                    n += g.vertex_count();
                } else {
                    n += g.vertex_count() - 1;
                }
            }
            return Ok(AdGraph::new(n, edges)?);
        }
    }
    b.finish()
}

/// Build a family member with a sphere embedding.
pub fn make_family(spec: &FamilySpec) -> Result<AdGraph, FamilyError> {
    let g = build(spec)?;
    let rot = planar_embedding(&g)?;
    Ok(g.with_embedding(rot)?)
}

/// The five minimal genus-two forms, in the order of the classification.
pub fn genus_two_minimal_forms() -> [FamilySpec; 5] {
    [
        FamilySpec::DisjointUnion(vec![FamilySpec::DoubledCycle(2), FamilySpec::DoubledCycle(2)]),
        FamilySpec::OneSum(vec![(FamilySpec::DoubledCycle(2), 0), (FamilySpec::DoubledCycle(2), 0)]),
        FamilySpec::Theta(1, 1, 1),
        FamilySpec::K4pq(1, 1),
        FamilySpec::K4TwoSum(1, 1),
    ]
}

/// Smallest bipartite member of each genus-two class.
pub fn genus_two_representatives() -> [FamilySpec; 5] {
    [
        FamilySpec::DisjointUnion(vec![FamilySpec::DoubledCycle(2), FamilySpec::DoubledCycle(2)]),
        FamilySpec::OneSum(vec![(FamilySpec::DoubledCycle(2), 0), (FamilySpec::DoubledCycle(2), 0)]),
        FamilySpec::Theta(1, 1, 1),
        FamilySpec::K4pq(2, 2),
        FamilySpec::K4TwoSum(2, 2),
    ]
}

/// The genus-five example built from two stacked copies of a doubled
/// hexagon pattern: 14 vertices, 28 edges.
pub fn genus_five_example() -> AdGraph {
    // L = 0, R = 1, a(y_k) = 2 + k, b(y_k) = 8 + k for
    // y = 0, 0.75, 1.5, 3.5, 4.25, 5.
    let a = |k: usize| 2 + k;
    let b = |k: usize| 8 + k;
    let (l, r) = (0, 1);
    let mut edges = vec![
        (l, a(0)),
        (a(0), b(0)),
        (b(0), r),
        (r, b(2)),
        (b(2), a(2)),
        (a(2), l),
        (l, a(3)),
        (a(3), b(3)),
        (b(3), r),
        (r, b(5)),
        (b(5), a(5)),
        (a(5), l),
    ];
    for (x, y) in [
        (a(5), a(4)),
        (b(5), b(4)),
        (a(0), a(1)),
        (b(0), b(1)),
        (a(4), a(3)),
        (b(4), b(3)),
        (a(1), a(2)),
        (b(1), b(2)),
    ] {
        edges.push((x, y));
        edges.push((x, y));
    }
    let g = AdGraph::new(14, edges).expect("valid edge list");
    let rot = planar_embedding(&g).expect("planar");
    g.with_embedding(rot).expect("sphere embedding")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(spec: FamilySpec) -> (usize, usize) {
        let g = make_family(&spec).unwrap();
        (g.vertex_count(), g.edge_count())
    }

    #[test]
    fn sizes() {
        assert_eq!(counts(FamilySpec::DoubledPath(0)), (1, 0));
        assert_eq!(counts(FamilySpec::DoubledPath(3)), (4, 6));
        assert_eq!(counts(FamilySpec::DoubledCycle(2)), (2, 4));
        assert_eq!(counts(FamilySpec::Theta(1, 1, 1)), (2, 6));
        assert_eq!(counts(FamilySpec::Theta(2, 2, 2)), (5, 12));
        assert_eq!(counts(FamilySpec::K4pq(2, 2)), (6, 12));
        assert_eq!(counts(FamilySpec::K4TwoSum(2, 2)), (8, 16));
        assert_eq!(counts(FamilySpec::C4Legs(1, 1, 1, 1)), (8, 12));
        assert_eq!(counts(FamilySpec::K4tildeTwoSum(1, 1, 1, 1)), (10, 16));
        assert_eq!(counts(FamilySpec::K4tilde(0, 0)), (4, 5));
    }

    #[test]
    fn one_sum_of_doubled_bigons() {
        let g = make_family(&genus_two_minimal_forms()[1]).unwrap();
        assert_eq!(g.vertex_count(), 3);
        let mut deg = g.degrees();
        deg.sort();
        assert_eq!(deg, vec![4, 4, 8]);
    }

    #[test]
    fn bipartite_only_for_even_paths() {
        assert!(make_family(&FamilySpec::K4pq(2, 2)).unwrap().two_colouring().is_ok());
        assert!(make_family(&FamilySpec::K4pq(1, 2)).unwrap().two_colouring().is_err());
        assert!(make_family(&FamilySpec::K4TwoSum(2, 4))
            .unwrap()
            .two_colouring()
            .is_ok());
        assert!(make_family(&FamilySpec::Theta(1, 3, 5))
            .unwrap()
            .two_colouring()
            .is_ok());
        assert!(make_family(&FamilySpec::Theta(1, 2, 1))
            .unwrap()
            .two_colouring()
            .is_err());
    }

    #[test]
    fn genus_five_example_sizes() {
        let g = genus_five_example();
        assert_eq!((g.vertex_count(), g.edge_count()), (14, 28));
        assert_eq!(g.simplify().nullity(), 7);
        let v = g.validate().unwrap();
        assert_eq!(v.turaev_genus().unwrap(), 5);
    }

    #[test]
    fn bad_parameters() {
        assert!(matches!(
            make_family(&FamilySpec::DoubledCycle(1)),
            Err(FamilyError::BadParameters(_))
        ));
        assert!(matches!(
            make_family(&FamilySpec::DoubledTree(vec![(0, 1), (1, 0)])),
            Err(FamilyError::BadParameters(_))
        ));
    }
}
