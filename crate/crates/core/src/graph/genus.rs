//! Turaev genus of a graph by removing parallel pairs and degree-two
//! vertices.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{GraphError, ValidAdGraph};
use crate::unionfind::UnionFind;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenusStrategy {
    /// Lowest degree-two vertex first, else the least parallel pair.
    Deterministic,
    /// Any applicable reduction, chosen at random.
    Randomized,
}

#[derive(Clone, Copy, Debug)]
enum Step {
    SmoothVertex(usize),
    DeletePair(usize, usize),
    ContractPair(usize, usize),
}

struct Work {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Work {
    fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(a, b) in &self.edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    fn components(&self) -> usize {
        let mut uf = UnionFind::new(self.n);
        for &(a, b) in &self.edges {
            uf.union(a, b);
        }
        uf.labels().1
    }

    fn drop_isolated(&mut self) {
        let deg = self.degrees();
        let mut map = vec![usize::MAX; self.n];
        let mut next = 0;
        for v in 0..self.n {
            if deg[v] > 0 {
                map[v] = next;
                next += 1;
            }
        }
        self.n = next;
        for e in &mut self.edges {
            *e = (map[e.0], map[e.1]);
        }
    }

    fn parallel_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.edges.len() {
            for j in i + 1..self.edges.len() {
                if same_ends(self.edges[i], self.edges[j]) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    fn least_pair(&self) -> Option<(usize, usize)> {
        for i in 0..self.edges.len() {
            for j in i + 1..self.edges.len() {
                if same_ends(self.edges[i], self.edges[j]) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    fn remove_edges(&mut self, i: usize, j: usize) {
        let (lo, hi) = (i.min(j), i.max(j));
        self.edges.remove(hi);
        self.edges.remove(lo);
    }

    /// Identify every vertex in `from` with `into`.
    fn merge(&mut self, into: usize, from: &[usize]) {
        for e in &mut self.edges {
            for x in [&mut e.0, &mut e.1] {
                if from.contains(x) {
                    *x = into;
                }
            }
        }
        debug_assert!(self.edges.iter().all(|&(a, b)| a != b), "merge created a loop");
    }

    fn is_separating(&self, i: usize, j: usize) -> bool {
        let before = self.components();
        let mut w = Work {
            n: self.n,
            edges: self.edges.clone(),
        };
        w.remove_edges(i, j);
        w.components() > before
    }

    /// Apply a step and return its genus contribution.
    fn apply(&mut self, step: Step) -> usize {
        match step {
            Step::SmoothVertex(v) => {
                let inc: Vec<usize> = (0..self.edges.len())
                    .filter(|&e| self.edges[e].0 == v || self.edges[e].1 == v)
                    .collect();
                let other = |e: usize| {
                    let (a, b) = self.edges[e];
                    if a == v {
                        b
                    } else {
                        a
                    }
                };
                let (a, b) = (other(inc[0]), other(inc[1]));
                self.remove_edges(inc[0], inc[1]);
                self.merge(a, &[v, b]);
                0
            }
            Step::DeletePair(i, j) => {
                let sep = self.is_separating(i, j);
                self.remove_edges(i, j);
                usize::from(!sep)
            }
            Step::ContractPair(i, j) => {
                let (a, b) = self.edges[i];
                self.remove_edges(i, j);
                self.merge(a, &[b]);
                0
            }
        }
    }

    fn check_reduction_site(&self, deg: &[usize]) -> Result<(), GraphError> {
        let deg2 = deg.iter().filter(|&&d| d == 2).count();
        if deg2 < 4 && self.least_pair().is_none() {
            return Err(GraphError::NoReduction);
        }
        Ok(())
    }
}

fn same_ends(a: (usize, usize), b: (usize, usize)) -> bool {
    a == b || (a.0 == b.1 && a.1 == b.0)
}

/// Genus by the deterministic reduction order.
pub fn turaev_genus_graph(g: &ValidAdGraph) -> Result<usize, GraphError> {
    let mut w = Work {
        n: g.vertex_count(),
        edges: g.edges().to_vec(),
    };
    let mut genus = 0;
    loop {
        w.drop_isolated();
        if w.edges.is_empty() {
            return Ok(genus);
        }
        let deg = w.degrees();
        w.check_reduction_site(&deg)?;
        let step = match deg.iter().position(|&d| d == 2) {
            Some(v) => Step::SmoothVertex(v),
            None => {
                let (i, j) = w.least_pair().ok_or(GraphError::NoReduction)?;
                Step::DeletePair(i, j)
            }
        };
        genus += w.apply(step);
    }
}

/// Genus by reductions picked uniformly at random among all that apply,
/// including contraction of separating parallel pairs.
pub fn turaev_genus_randomized<R: Rng>(g: &ValidAdGraph, rng: &mut R) -> Result<usize, GraphError> {
    let mut w = Work {
        n: g.vertex_count(),
        edges: g.edges().to_vec(),
    };
    let mut genus = 0;
    loop {
        w.drop_isolated();
        if w.edges.is_empty() {
            return Ok(genus);
        }
        let deg = w.degrees();
        w.check_reduction_site(&deg)?;
        let mut steps: Vec<Step> = (0..w.n).filter(|&v| deg[v] == 2).map(Step::SmoothVertex).collect();
        for (i, j) in w.parallel_pairs() {
            steps.push(Step::DeletePair(i, j));
            if w.is_separating(i, j) {
                steps.push(Step::ContractPair(i, j));
            }
        }
        let step = *steps.choose(rng).ok_or(GraphError::NoReduction)?;
        genus += w.apply(step);
    }
}
