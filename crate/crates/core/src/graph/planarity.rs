//! Planarity test with embedding, by face-by-face path insertion
//! (Demoucron, Malgrange and Pertuiset) on each biconnected block.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{AdGraph, GraphError};
use crate::ribbon::RibbonGraph;

/// Sphere rotation system of every component, as edge indices in cyclic
/// order. Parallel edges are placed next to each other.
pub fn planar_embedding(g: &AdGraph) -> Result<Vec<Vec<usize>>, GraphError> {
    let n = g.vertex_count();
    let mult = g.multiplicities();
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for &(a, b) in mult.keys() {
        adj[a].insert(b);
        adj[b].insert(a);
    }

    // Cyclic neighbour order at each vertex, one list per block.
    let mut nbr_rot: Vec<Vec<usize>> = vec![Vec::new(); n];
    for block in blocks(&adj) {
        if block.len() == 1 {
            let (a, b) = block[0];
            nbr_rot[a].push(b);
            nbr_rot[b].push(a);
            continue;
        }
        let succ = embed_block(&block).ok_or(GraphError::NotPlanar { vertex: block[0].0 })?;
        for (v, order) in block_rotations(&succ) {
            nbr_rot[v].extend(order);
        }
    }

    // Expand each neighbour into its bundle of parallel edges: in edge
    // order at the lower end, reversed at the higher end.
    let mut bundles: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (i, &(a, b)) in g.edges().iter().enumerate() {
        bundles.entry((a.min(b), a.max(b))).or_default().push(i);
    }
    let rot: Vec<Vec<usize>> = nbr_rot
        .iter()
        .enumerate()
        .map(|(v, order)| {
            order
                .iter()
                .flat_map(|&w| {
                    let bundle = &bundles[&(v.min(w), v.max(w))];
                    if v < w {
                        bundle.clone()
                    } else {
                        bundle.iter().rev().copied().collect()
                    }
                })
                .collect()
        })
        .collect();

    let ribbon =
        RibbonGraph::from_edge_rotations(g.edges(), &rot).map_err(|e| GraphError::BadEmbedding(e.to_string()))?;
    if ribbon.euler_genus() != 0 {
        return Err(GraphError::BadEmbedding(format!(
            "computed rotation has euler genus {}",
            ribbon.euler_genus()
        )));
    }
    Ok(rot)
}

/// Biconnected blocks as edge lists (Hopcroft-Tarjan with an edge stack).
fn blocks(adj: &[BTreeSet<usize>]) -> Vec<Vec<(usize, usize)>> {
    let n = adj.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut out = Vec::new();
    let mut estack: Vec<(usize, usize)> = Vec::new();
    let adj: Vec<Vec<usize>> = adj.iter().map(|s| s.iter().copied().collect()).collect();

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // (vertex, parent, next neighbour index)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&mut (u, p, ref mut i)) = stack.last_mut() {
            if *i < adj[u].len() {
                let w = adj[u][*i];
                *i += 1;
                if w == p {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    estack.push((u, w));
                    stack.push((w, u, 0));
                } else if disc[w] < disc[u] {
                    low[u] = low[u].min(disc[w]);
                    estack.push((u, w));
                }
            } else {
                stack.pop();
                if let Some(&(pu, _, _)) = stack.last() {
                    low[pu] = low[pu].min(low[u]);
                    if low[u] >= disc[pu] {
                        let mut block = Vec::new();
                        while let Some(e) = estack.pop() {
                            block.push(e);
                            if e == (pu, u) {
                                break;
                            }
                        }
                        out.push(block);
                    }
                }
            }
        }
    }
    out
}

/// Embed a biconnected simple graph with at least one cycle. Returns
/// `succ[(y, x)] = z` meaning `z` follows `x` in the rotation at `y`.
fn embed_block(edges: &[(usize, usize)]) -> Option<BTreeMap<(usize, usize), usize>> {
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(a, b) in edges {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    for list in adj.values_mut() {
        list.sort_unstable();
    }
    let norm = |a: usize, b: usize| (a.min(b), a.max(b));

    let cycle = find_cycle(&adj)?;
    let mut in_h: BTreeSet<usize> = cycle.iter().copied().collect();
    let mut h_edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 0..cycle.len() {
        h_edges.insert(norm(cycle[i], cycle[(i + 1) % cycle.len()]));
    }
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle.iter().rev().copied().collect()];

    while h_edges.len() < edges.len() {
        let frags = fragments(&adj, &in_h, &h_edges);
        // Pick a fragment with the fewest admissible faces.
        let mut best: Option<(usize, usize, usize)> = None;
        for (fi, frag) in frags.iter().enumerate() {
            let admissible: Vec<usize> = faces
                .iter()
                .enumerate()
                .filter(|(_, f)| frag.attachments.iter().all(|a| f.contains(a)))
                .map(|(i, _)| i)
                .collect();
            if admissible.is_empty() {
                return None;
            }
            if best.is_none_or(|(_, _, k)| admissible.len() < k) {
                best = Some((fi, admissible[0], admissible.len()));
            }
        }
        let (fi, face_idx, _) = best.expect("at least one fragment");
        let path = frags[fi].path(&adj, &in_h);
        for w in path.windows(2) {
            h_edges.insert(norm(w[0], w[1]));
        }
        in_h.extend(path.iter().copied());

        let face = faces.swap_remove(face_idx);
        let (f1, f2) = split_face(&face, &path);
        faces.push(f1);
        faces.push(f2);
    }

    let mut succ = BTreeMap::new();
    for f in &faces {
        let m = f.len();
        for i in 0..m {
            let (x, y, z) = (f[i], f[(i + 1) % m], f[(i + 2) % m]);
            succ.insert((y, x), z);
        }
    }
    Some(succ)
}

fn block_rotations(succ: &BTreeMap<(usize, usize), usize>) -> BTreeMap<usize, Vec<usize>> {
    let mut out = BTreeMap::new();
    for &(y, x) in succ.keys() {
        if out.contains_key(&y) {
            continue;
        }
        let mut order = vec![x];
        let mut cur = succ[&(y, x)];
        while cur != x {
            order.push(cur);
            cur = succ[&(y, cur)];
        }
        out.insert(y, order);
    }
    out
}

/// A cycle through the first edge: a shortest path between its ends
/// that avoids the edge itself.
fn find_cycle(adj: &BTreeMap<usize, Vec<usize>>) -> Option<Vec<usize>> {
    let (&a, list) = adj.iter().next()?;
    let b = *list.first()?;
    let mut prev: BTreeMap<usize, usize> = BTreeMap::from([(a, a)]);
    let mut queue = VecDeque::from([a]);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[&u] {
            if (u == a && w == b) || prev.contains_key(&w) {
                continue;
            }
            prev.insert(w, u);
            if w == b {
                let mut cyc = vec![b];
                let mut x = b;
                while x != a {
                    x = prev[&x];
                    cyc.push(x);
                }
                return Some(cyc);
            }
            queue.push_back(w);
        }
    }
    None
}

struct Fragment {
    /// Either a single chord `(a, b)` or a set of interior vertices.
    chord: Option<(usize, usize)>,
    interior: BTreeSet<usize>,
    attachments: BTreeSet<usize>,
}

impl Fragment {
    /// A path between two distinct attachments through the fragment.
    fn path(&self, adj: &BTreeMap<usize, Vec<usize>>, in_h: &BTreeSet<usize>) -> Vec<usize> {
        if let Some((a, b)) = self.chord {
            return vec![a, b];
        }
        let a = *self.attachments.iter().next().expect("fragment has attachments");
        let start = *adj[&a]
            .iter()
            .find(|w| self.interior.contains(w))
            .expect("attachment touches interior");
        let mut prev: BTreeMap<usize, usize> = BTreeMap::new();
        let mut queue = VecDeque::from([start]);
        prev.insert(start, start);
        while let Some(u) = queue.pop_front() {
            if let Some(&b) = adj[&u].iter().find(|&&w| w != a && in_h.contains(&w)) {
                let mut path = vec![b, u];
                let mut x = u;
                while prev[&x] != x {
                    x = prev[&x];
                    path.push(x);
                }
                path.push(a);
                path.reverse();
                return path;
            }
            for &w in &adj[&u] {
                if self.interior.contains(&w) && !prev.contains_key(&w) {
                    prev.insert(w, u);
                    queue.push_back(w);
                }
            }
        }
        unreachable!("biconnected block: every fragment has two attachments")
    }
}

fn fragments(
    adj: &BTreeMap<usize, Vec<usize>>,
    in_h: &BTreeSet<usize>,
    h_edges: &BTreeSet<(usize, usize)>,
) -> Vec<Fragment> {
    let mut out = Vec::new();
    for (&a, list) in adj {
        for &b in list {
            if a < b && in_h.contains(&a) && in_h.contains(&b) && !h_edges.contains(&(a, b)) {
                out.push(Fragment {
                    chord: Some((a, b)),
                    interior: BTreeSet::new(),
                    attachments: [a, b].into_iter().collect(),
                });
            }
        }
    }
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    for &s in adj.keys() {
        if in_h.contains(&s) || seen.contains(&s) {
            continue;
        }
        let mut interior = BTreeSet::from([s]);
        let mut attachments = BTreeSet::new();
        let mut queue = VecDeque::from([s]);
        seen.insert(s);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[&u] {
                if in_h.contains(&w) {
                    attachments.insert(w);
                } else if seen.insert(w) {
                    interior.insert(w);
                    queue.push_back(w);
                }
            }
        }
        out.push(Fragment {
            chord: None,
            interior,
            attachments,
        });
    }
    out
}

/// Split an oriented face along a path whose ends lie on it.
fn split_face(face: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let m = face.len();
    let a = path[0];
    let b = *path.last().expect("non-empty path");
    let i = face.iter().position(|&v| v == a).expect("path starts on face");
    let j = face.iter().position(|&v| v == b).expect("path ends on face");
    let inner = &path[1..path.len() - 1];

    let mut f1 = Vec::new();
    let mut k = i;
    loop {
        f1.push(face[k]);
        if k == j {
            break;
        }
        k = (k + 1) % m;
    }
    f1.extend(inner.iter().rev());

    let mut f2 = Vec::new();
    let mut k = j;
    loop {
        f2.push(face[k]);
        if k == i {
            break;
        }
        k = (k + 1) % m;
    }
    f2.extend(inner.iter());
    (f1, f2)
}
