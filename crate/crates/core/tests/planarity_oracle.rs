//! Planarity test against exhaustive search over rotation systems.

use proptest::prelude::*;
use turaev_core::graph::{planar_embedding, AdGraph};

/// Faces of an orientable rotation system: leave `v` along `e`, arrive
/// at `w`, continue with the successor of `e` around `w`.
fn face_count(g: &AdGraph, rot: &[Vec<usize>]) -> usize {
    let m = g.edge_count();
    let mut pos = vec![[usize::MAX; 2]; m];
    for (v, r) in rot.iter().enumerate() {
        for (i, &e) in r.iter().enumerate() {
            let side = usize::from(g.edges()[e].0 != v);
            pos[e][side] = i;
        }
    }
    let mut seen = vec![[false; 2]; m];
    let mut faces = 0;
    for e0 in 0..m {
        for s0 in 0..2 {
            if seen[e0][s0] {
                continue;
            }
            faces += 1;
            let (mut e, mut s) = (e0, s0);
            while !seen[e][s] {
                seen[e][s] = true;
                let w = if s == 0 { g.edges()[e].1 } else { g.edges()[e].0 };
                let r = &rot[w];
                let ws = usize::from(g.edges()[e].0 != w);
                let f = r[(pos[e][ws] + 1) % r.len()];
                e = f;
                s = usize::from(g.edges()[f].0 != w);
            }
        }
    }
    faces
}

fn components(g: &AdGraph) -> usize {
    let n = g.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for &(a, b) in g.edges() {
        let (x, y) = (find(&mut parent, a), find(&mut parent, b));
        parent[x] = y;
    }
    (0..n).filter(|&v| find(&mut parent, v) == v).count()
}

fn is_sphere(g: &AdGraph, rot: &[Vec<usize>]) -> bool {
    let isolated = rot.iter().filter(|r| r.is_empty()).count();
    let chi = g.vertex_count() as i64 - g.edge_count() as i64 + (face_count(g, rot) + isolated) as i64;
    chi == 2 * components(g) as i64
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

fn brute_force_planar(g: &AdGraph) -> bool {
    let options: Vec<Vec<Vec<usize>>> = g
        .incident()
        .into_iter()
        .map(|inc| match inc.split_first() {
            None => vec![Vec::new()],
            Some((&first, rest)) => permutations(rest)
                .into_iter()
                .map(|mut p| {
                    p.insert(0, first);
                    p
                })
                .collect(),
        })
        .collect();
    let mut idx = vec![0; options.len()];
    loop {
        let rot: Vec<Vec<usize>> = idx.iter().zip(&options).map(|(&i, o)| o[i].clone()).collect();
        if is_sphere(g, &rot) {
            return true;
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return false;
            }
            idx[k] += 1;
            if idx[k] < options[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn check(g: &AdGraph) {
    let brute = brute_force_planar(g);
    match planar_embedding(g) {
        Ok(rot) => {
            assert!(brute, "embedded a non-planar graph {:?}", g.edges());
            let mut count = vec![0; g.edge_count()];
            for r in &rot {
                for &e in r {
                    count[e] += 1;
                }
            }
            assert!(count.iter().all(|&c| c == 2));
            assert!(is_sphere(g, &rot), "embedding is not spherical for {:?}", g.edges());
        }
        Err(_) => assert!(!brute, "rejected a planar graph {:?}", g.edges()),
    }
}

fn complete(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
}

fn k33() -> Vec<(usize, usize)> {
    (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect()
}

#[test]
fn kuratowski_graphs() {
    check(&AdGraph::new(5, complete(5)).unwrap());
    check(&AdGraph::new(6, k33()).unwrap());
    let mut k5e = complete(5);
    k5e.pop();
    check(&AdGraph::new(5, k5e).unwrap());
    let mut k33e = k33();
    k33e.pop();
    check(&AdGraph::new(6, k33e).unwrap());
    // Subdivided K33 with a doubled edge.
    let mut sub = k33();
    let (a, b) = sub.remove(0);
    sub.extend([(a, 6), (6, b), (a, 6)]);
    check(&AdGraph::new(7, sub).unwrap());
    check(&AdGraph::new(5, complete(4)).unwrap());
}

fn small_graph() -> impl Strategy<Value = AdGraph> {
    (2usize..=6)
        .prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, 0..n), 0..=10)))
        .prop_map(|(n, raw)| {
            let mut deg = vec![0; n];
            let mut edges = Vec::new();
            for (a, b) in raw {
                if a != b && deg[a] < 4 && deg[b] < 4 {
                    deg[a] += 1;
                    deg[b] += 1;
                    edges.push((a, b));
                }
            }
            AdGraph::new(n, edges).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn planarity_agrees_with_exhaustive_search(g in small_graph()) {
        check(&g);
    }
}
