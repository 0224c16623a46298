//! Ribbon graphs: rotation systems with a twist bit per edge.
//!
//! Edge `e` owns half-edges `2e` and `2e + 1`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::unionfind::UnionFind;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RibbonError {
    #[error("half-edge {0} appears in no rotation or in more than one")]
    BadRotation(usize),
    #[error("ribbon graph is non-orientable (euler genus {euler_genus})")]
    NonOrientable { euler_genus: i64 },
    #[error("2k - v + e - f = {value} is odd")]
    Parity { value: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RibbonGraph {
    rotations: Vec<Vec<usize>>,
    twisted: Vec<bool>,
    #[serde(skip)]
    vertex_of: Vec<usize>,
    #[serde(skip)]
    pos: Vec<usize>,
}

impl RibbonGraph {
    /// `rotations[v]` is the cyclic half-edge order at `v`; `twisted[e]`
    /// the twist bit of edge `e`.
    pub fn new(rotations: Vec<Vec<usize>>, twisted: Vec<bool>) -> Result<Self, RibbonError> {
        let halves = 2 * twisted.len();
        let mut vertex_of = vec![usize::MAX; halves];
        let mut pos = vec![0; halves];
        for (v, rot) in rotations.iter().enumerate() {
            for (i, &h) in rot.iter().enumerate() {
                if h >= halves || vertex_of[h] != usize::MAX {
                    return Err(RibbonError::BadRotation(h));
                }
                vertex_of[h] = v;
                pos[h] = i;
            }
        }
        if let Some(h) = vertex_of.iter().position(|&v| v == usize::MAX) {
            return Err(RibbonError::BadRotation(h));
        }
        Ok(Self {
            rotations,
            twisted,
            vertex_of,
            pos,
        })
    }

    /// Untwisted ribbon graph from per-vertex rotations of edge indices.
    /// Each edge must be listed once at each of its two distinct ends.
    pub fn from_edge_rotations(edges: &[(usize, usize)], rotations: &[Vec<usize>]) -> Result<Self, RibbonError> {
        let rots = rotations
            .iter()
            .enumerate()
            .map(|(v, rot)| {
                rot.iter()
                    .map(|&e| if edges[e].0 == v { 2 * e } else { 2 * e + 1 })
                    .collect()
            })
            .collect();
        Self::new(rots, vec![false; edges.len()])
    }

    pub fn vertex_count(&self) -> usize {
        self.rotations.len()
    }

    pub fn edge_count(&self) -> usize {
        self.twisted.len()
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotations[v]
    }

    pub fn is_twisted(&self, e: usize) -> bool {
        self.twisted[e]
    }

    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        (self.vertex_of[2 * e], self.vertex_of[2 * e + 1])
    }

    pub fn component_count(&self) -> usize {
        let mut uf = UnionFind::new(self.vertex_count());
        for e in 0..self.edge_count() {
            let (a, b) = self.endpoints(e);
            uf.union(a, b);
        }
        uf.labels().1
    }

    fn step(&self, h: usize, forward: bool) -> usize {
        let rot = &self.rotations[self.vertex_of[h]];
        let i = self.pos[h];
        let n = rot.len();
        if forward {
            rot[(i + 1) % n]
        } else {
            rot[(i + n - 1) % n]
        }
    }

    /// Number of boundary components of the ribbon surface.
    pub fn boundary_count(&self) -> usize {
        let halves = 2 * self.edge_count();
        // Token 2h + 0 walks forward from h, 2h + 1 backward.
        let mut seen = vec![false; 2 * halves];
        let mut orbits = 0;
        for start in 0..2 * halves {
            if seen[start] {
                continue;
            }
            orbits += 1;
            let mut t = start;
            while !seen[t] {
                seen[t] = true;
                let (h, mut forward) = (t / 2, t % 2 == 0);
                let across = h ^ 1;
                if self.twisted[h / 2] {
                    forward = !forward;
                }
                let next = self.step(across, forward);
                t = 2 * next + usize::from(!forward);
            }
        }
        let isolated = self.rotations.iter().filter(|r| r.is_empty()).count();
        orbits / 2 + isolated
    }

    /// 2k - v + e - f.
    pub fn euler_genus(&self) -> i64 {
        2 * self.component_count() as i64 - self.vertex_count() as i64 + self.edge_count() as i64
            - self.boundary_count() as i64
    }

    pub fn is_orientable(&self) -> bool {
        let n = self.vertex_count();
        let mut side: Vec<Option<bool>> = vec![None; n];
        let mut adj: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
        for e in 0..self.edge_count() {
            let (a, b) = self.endpoints(e);
            adj[a].push((b, self.twisted[e]));
            adj[b].push((a, self.twisted[e]));
        }
        for root in 0..n {
            if side[root].is_some() {
                continue;
            }
            side[root] = Some(true);
            let mut stack = vec![root];
            while let Some(u) = stack.pop() {
                let su = side[u].expect("visited");
                for &(w, tw) in &adj[u] {
                    let want = su ^ tw;
                    match side[w] {
                        None => {
                            side[w] = Some(want);
                            stack.push(w);
                        }
                        Some(s) if s != want => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }

    pub fn ribbon_genus(&self) -> Result<usize, RibbonError> {
        let euler_genus = self.euler_genus();
        if !self.is_orientable() {
            return Err(RibbonError::NonOrientable { euler_genus });
        }
        if euler_genus % 2 != 0 || euler_genus < 0 {
            return Err(RibbonError::Parity { value: euler_genus });
        }
        Ok((euler_genus / 2) as usize)
    }

    pub fn twist_all(&self) -> RibbonGraph {
        let mut out = self.clone();
        out.twisted.iter_mut().for_each(|t| *t = true);
        out
    }

    /// Reverse every rotation (mirror image of the embedding).
    pub fn reversed(&self) -> RibbonGraph {
        let rotations = self
            .rotations
            .iter()
            .map(|r| r.iter().rev().copied().collect())
            .collect();
        RibbonGraph::new(rotations, self.twisted.clone()).expect("same half-edges")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c2sq() -> RibbonGraph {
        RibbonGraph::from_edge_rotations(&[(0, 1); 4], &[vec![0, 1, 2, 3], vec![3, 2, 1, 0]]).unwrap()
    }

    #[test]
    fn single_vertex() {
        let r = RibbonGraph::new(vec![vec![]], vec![]).unwrap();
        assert_eq!(r.boundary_count(), 1);
        assert_eq!(r.ribbon_genus().unwrap(), 0);
    }

    #[test]
    fn doubled_square_flat_and_twisted() {
        let flat = c2sq();
        assert_eq!(flat.boundary_count(), 4);
        assert_eq!(flat.ribbon_genus().unwrap(), 0);
        let tw = flat.twist_all();
        assert!(tw.is_orientable());
        assert_eq!(tw.boundary_count(), 2);
        assert_eq!(tw.ribbon_genus().unwrap(), 1);
        assert_eq!(tw.twist_all(), tw);
    }

    #[test]
    fn disjoint_doubled_squares_twisted() {
        let rot = vec![vec![0, 1, 2, 3], vec![3, 2, 1, 0], vec![4, 5, 6, 7], vec![7, 6, 5, 4]];
        let edges = [(0, 1), (0, 1), (0, 1), (0, 1), (2, 3), (2, 3), (2, 3), (2, 3)];
        let r = RibbonGraph::from_edge_rotations(&edges, &rot).unwrap();
        assert_eq!(r.ribbon_genus().unwrap(), 0);
        assert_eq!(r.twist_all().ribbon_genus().unwrap(), 2);
    }

    #[test]
    fn theta_graph() {
        let r = RibbonGraph::from_edge_rotations(&[(0, 1); 3], &[vec![0, 1, 2], vec![2, 1, 0]]).unwrap();
        assert_eq!(r.boundary_count(), 3);
        assert_eq!(r.ribbon_genus().unwrap(), 0);
        // Same cyclic order at both ends puts the theta on a torus.
        let t = RibbonGraph::from_edge_rotations(&[(0, 1); 3], &[vec![0, 1, 2], vec![0, 1, 2]]).unwrap();
        assert_eq!(t.boundary_count(), 1);
        assert_eq!(t.ribbon_genus().unwrap(), 1);
    }

    #[test]
    fn mobius_band() {
        let r = RibbonGraph::new(vec![vec![0, 1]], vec![true]).unwrap();
        assert!(!r.is_orientable());
        assert_eq!(r.boundary_count(), 1);
        assert_eq!(r.ribbon_genus(), Err(RibbonError::NonOrientable { euler_genus: 1 }));
        let annulus = RibbonGraph::new(vec![vec![0, 1]], vec![false]).unwrap();
        assert_eq!(annulus.boundary_count(), 2);
    }

    #[test]
    fn rotation_must_cover_half_edges() {
        assert_eq!(
            RibbonGraph::new(vec![vec![0], vec![]], vec![false]),
            Err(RibbonError::BadRotation(1))
        );
        assert_eq!(
            RibbonGraph::new(vec![vec![0, 0]], vec![false]),
            Err(RibbonError::BadRotation(0))
        );
    }

    /// Random flat tree on `n` vertices with shuffled rotations.
    fn tree_strategy() -> impl Strategy<Value = RibbonGraph> {
        (1usize..12)
            .prop_flat_map(|n| (Just(n), proptest::collection::vec(any::<u32>(), n)))
            .prop_map(|(n, seeds)| {
                let edges: Vec<(usize, usize)> = (1..n).map(|v| (seeds[v] as usize % v, v)).collect();
                let mut rot = vec![Vec::new(); n];
                for (e, &(a, b)) in edges.iter().enumerate() {
                    rot[a].push(e);
                    rot[b].push(e);
                }
                for (v, r) in rot.iter_mut().enumerate() {
                    let k = r.len().max(1);
                    r.rotate_left(seeds[v] as usize % k);
                }
                RibbonGraph::from_edge_rotations(&edges, &rot).unwrap()
            })
    }

    proptest! {
        #[test]
        fn flat_trees_are_planar(t in tree_strategy()) {
            prop_assert_eq!(t.boundary_count(), 1);
            prop_assert_eq!(t.ribbon_genus().unwrap(), 0);
            prop_assert_eq!(t.reversed().boundary_count(), t.boundary_count());
        }

        #[test]
        fn boundary_count_is_mirror_invariant(
            rots in proptest::collection::vec(0usize..6, 4),
            tw in proptest::collection::vec(any::<bool>(), 6),
        ) {
            // Six edges on three vertices: a fixed multigraph with random rotations.
            let edges = [(0, 1), (1, 2), (2, 0), (0, 1), (1, 2), (2, 0)];
            let mut rot = vec![Vec::new(); 3];
            for (e, &(a, b)) in edges.iter().enumerate() {
                rot[a].push(e);
                rot[b].push(e);
            }
            for (v, r) in rot.iter_mut().enumerate() {
                r.swap(0, rots[v] % 4);
                r.rotate_left(rots[v + 1] % 4);
            }
            let mut g = RibbonGraph::from_edge_rotations(&edges, &rot).unwrap();
            g.twisted = tw;
            prop_assert_eq!(g.reversed().boundary_count(), g.boundary_count());
            prop_assert!(g.euler_genus() >= 0);
        }
    }
}
