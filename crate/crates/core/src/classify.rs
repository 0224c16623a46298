//! Reduced graphs and the classification of low genus.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::families::{genus_two_minimal_forms, make_family, FamilySpec};
use crate::graph::{AdGraph, GraphError, ValidAdGraph};
use crate::iso::isomorphic;
use crate::moves::{apply_move, contractible, Move};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    /// A graph the classification says cannot exist.
    #[error("no known shape matches a genus-{genus} graph: {reason}")]
    ClassificationFailure { genus: usize, reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Shape {
    /// Genus zero: two doubled paths.
    TwoDoubledPaths,
    /// Genus zero: doubled tree with two to four leaves.
    DoubledTree {
        leaves: usize,
    },
    /// Genus zero: four-cycle with pendant doubled paths.
    C4Legs,
    /// Genus zero: two-sum of two `K4tilde`.
    K4tildeTwoSum,
    /// Genus one.
    DoubledEvenCycle,
    /// Genus two, classes one to five.
    TwoDoubledCycles,
    OneSumDoubledCycles,
    DoubledTheta,
    K4pq,
    K4TwoSum,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub genus: usize,
    pub reduced: bool,
    pub shape: Option<Shape>,
    /// A family member isomorphic to the input, when a shape matched.
    pub family: Option<FamilySpec>,
}

/// Contract doubled-path vertices, lowest index first, until none is left.
pub fn canonical_contract(g: &AdGraph) -> AdGraph {
    let mut g = g.clone();
    while let Some(v) = (0..g.vertex_count()).find(|&v| contractible(&g, v).is_some()) {
        g = apply_move(&g, &Move::DoubledPathContract { vertex: v }).expect("contractible");
    }
    g
}

/// As [`canonical_contract`], picking the vertex at random each time.
pub fn canonical_contract_random<R: Rng>(g: &AdGraph, rng: &mut R) -> AdGraph {
    let mut g = g.clone();
    loop {
        let cands: Vec<usize> = (0..g.vertex_count())
            .filter(|&v| contractible(&g, v).is_some())
            .collect();
        let Some(&v) = cands.choose(rng) else { return g };
        g = apply_move(&g, &Move::DoubledPathContract { vertex: v }).expect("contractible");
    }
}

fn connected_without(n: usize, edges: &[(usize, usize)], skip: &[usize], members: &[usize]) -> bool {
    let mut uf = crate::unionfind::UnionFind::new(n);
    for (i, &(a, b)) in edges.iter().enumerate() {
        if !skip.contains(&i) {
            uf.union(a, b);
        }
    }
    members.iter().all(|&v| uf.find(v) == uf.find(members[0]))
}

/// A single vertex, or every component has at least two vertices and
/// stays connected after deleting any two of its edges.
pub fn is_reduced(g: &AdGraph) -> bool {
    let n = g.vertex_count();
    if n == 1 && g.edge_count() == 0 {
        return true;
    }
    let (comp, k) = g.components();
    let mut members = vec![Vec::new(); k];
    for v in 0..n {
        members[comp[v]].push(v);
    }
    if members.iter().any(|m| m.len() < 2) {
        return false;
    }
    let edges = g.edges();
    let m = edges.len();
    for i in 0..m {
        let ci = &members[comp[edges[i].0]];
        if !connected_without(n, edges, &[i], ci) {
            return false;
        }
        for j in i + 1..m {
            if comp[edges[j].0] == comp[edges[i].0] && !connected_without(n, edges, &[i, j], ci) {
                return false;
            }
        }
    }
    true
}

fn fail(genus: usize, reason: &str) -> ClassifyError {
    ClassifyError::ClassificationFailure {
        genus,
        reason: reason.to_string(),
    }
}

/// Every adjacent pair has multiplicity two and the simple graph is a
/// forest.
fn doubled_forest(g: &AdGraph) -> bool {
    let mult = g.multiplicities();
    mult.values().all(|&m| m == 2) && mult.len() + g.component_count() == g.vertex_count()
}

/// Length of the doubled path hanging from `root` through `first`,
/// stopping at a vertex of degree two.
fn pendant_length(g: &AdGraph, root: usize, first: usize) -> Option<usize> {
    let inc = g.incident();
    let (mut prev, mut cur, mut len) = (root, first, 1);
    loop {
        let nb: Vec<usize> = inc[cur].iter().map(|&e| g.other_end(e, cur)).collect();
        match nb.len() {
            2 => return Some(len),
            4 => {
                let next: Vec<usize> = nb.iter().copied().filter(|&w| w != prev).collect();
                if next.len() != 2 || next[0] != next[1] {
                    return None;
                }
                prev = cur;
                cur = next[0];
                len += 1;
            }
            _ => return None,
        }
    }
}

/// Pendant lengths at the ends of the single edges, for shapes whose
/// core is made of single edges.
fn core_with_legs(g: &AdGraph) -> Option<Vec<(usize, usize)>> {
    let mult = g.multiplicities();
    let mut core: Vec<usize> = mult
        .iter()
        .filter(|(_, &m)| m == 1)
        .flat_map(|(&(a, b), _)| [a, b])
        .collect();
    core.sort_unstable();
    core.dedup();
    let mut out = Vec::new();
    for &v in &core {
        let legs: Vec<usize> = mult
            .iter()
            .filter(|(&(a, b), &m)| m == 2 && (a == v || b == v))
            .map(|(&(a, b), _)| if a == v { b } else { a })
            .collect();
        match legs.as_slice() {
            [] => out.push((v, 0)),
            [w] if core.binary_search(w).is_err() => out.push((v, pendant_length(g, v, *w)?)),
            _ => return None,
        }
    }
    Some(out)
}

fn matches(g: &AdGraph, spec: &FamilySpec) -> bool {
    make_family(spec).is_ok_and(|h| isomorphic(g, &h))
}

fn genus_zero(g: &AdGraph) -> Result<(Shape, FamilySpec), ClassifyError> {
    let deg = g.degrees();
    let k = g.component_count();
    if doubled_forest(g) {
        let leaves = deg.iter().filter(|&&d| d == 2).count();
        let mut paths = Vec::new();
        for comp in components(g) {
            let (sub, _) = g.induced(&comp);
            let tree: Vec<(usize, usize)> = sub.multiplicities().keys().copied().collect();
            paths.push(FamilySpec::DoubledTree(tree));
        }
        if k == 2 && leaves == 4 {
            let lens: Vec<usize> = paths
                .iter()
                .map(|p| match p {
                    FamilySpec::DoubledTree(t) => t.len(),
                    _ => unreachable!(),
                })
                .collect();
            let spec =
                FamilySpec::DisjointUnion(vec![FamilySpec::DoubledPath(lens[0]), FamilySpec::DoubledPath(lens[1])]);
            if matches(g, &spec) {
                return Ok((Shape::TwoDoubledPaths, spec));
            }
        }
        if k == 1 && (2..=4).contains(&leaves) {
            return Ok((Shape::DoubledTree { leaves }, paths.remove(0)));
        }
        return Err(fail(0, "doubled forest of the wrong shape"));
    }
    if k != 1 {
        return Err(fail(0, "disconnected and not a pair of doubled paths"));
    }
    let legs = core_with_legs(g).ok_or_else(|| fail(0, "pendant paths are not simple"))?;
    let l: Vec<usize> = legs.iter().map(|&(_, len)| len).collect();
    if legs.len() == 4 {
        // Four-cycle: order the corners around it.
        let mult = g.multiplicities();
        let adj = |a: usize, b: usize| mult.get(&(a.min(b), a.max(b))) == Some(&1);
        let v: Vec<usize> = legs.iter().map(|&(v, _)| v).collect();
        let order = [0usize, 1, 2, 3]
            .into_iter()
            .filter(|&i| i != 0)
            .find_map(|opp| {
                let rest: Vec<usize> = (1..4).filter(|&i| i != opp).collect();
                (!adj(v[0], v[opp])).then(|| [0, rest[0], opp, rest[1]])
            })
            .ok_or_else(|| fail(0, "single edges do not form a four-cycle"))?;
        let spec = FamilySpec::C4Legs(l[order[0]], l[order[1]], l[order[2]], l[order[3]]);
        if matches(g, &spec) {
            return Ok((Shape::C4Legs, spec));
        }
    }
    if legs.len() == 6 {
        // Hubs meet four single edges; the other four corners carry legs.
        let mult = g.multiplicities();
        let singles = |v: usize| mult.iter().filter(|(&(a, b), &m)| m == 1 && (a == v || b == v)).count();
        let spokes: Vec<usize> = legs
            .iter()
            .filter(|&&(v, _)| singles(v) == 2)
            .map(|&(_, x)| x)
            .collect();
        if spokes.len() == 4 {
            let spec = FamilySpec::K4tildeTwoSum(spokes[0], spokes[1], spokes[2], spokes[3]);
            if matches(g, &spec) {
                return Ok((Shape::K4tildeTwoSum, spec));
            }
        }
    }
    Err(fail(0, "no genus-zero shape matches"))
}

fn components(g: &AdGraph) -> Vec<Vec<bool>> {
    let (comp, k) = g.components();
    (0..k).map(|c| comp.iter().map(|&x| x == c).collect()).collect()
}

/// Lengths of the maximal doubled paths between vertices that are not
/// inside a doubled path. Parallel pairs between two such vertices count
/// as paths of length one.
fn doubled_path_lengths(g: &AdGraph) -> Vec<usize> {
    let n = g.vertex_count();
    let inner: Vec<bool> = (0..n).map(|v| contractible(g, v).is_some()).collect();
    let mut out = Vec::new();
    for (&(a, b), &m) in &g.multiplicities() {
        if !inner[a] && !inner[b] {
            out.extend(std::iter::repeat_n(1, m / 2));
        }
    }
    let (sub, _) = g.induced(&inner);
    let (comp, k) = sub.components();
    let mut sizes = vec![0; k];
    for c in comp {
        sizes[c] += 1;
    }
    out.extend(sizes.into_iter().map(|s| s + 1));
    out.sort_unstable();
    out
}

fn genus_two(g: &AdGraph) -> Result<(Shape, FamilySpec), ClassifyError> {
    let core = canonical_contract(g);
    let forms = genus_two_minimal_forms();
    let class = forms
        .iter()
        .position(|f| matches(&core, f))
        .ok_or_else(|| fail(2, "contraction is not one of the five minimal forms"))?;
    let cycle_len = |mask: &[bool]| mask.iter().filter(|&&x| x).count();
    let (shape, spec) = match class {
        0 => {
            let c = components(g);
            let mut l = [cycle_len(&c[0]), cycle_len(&c[1])];
            l.sort_unstable();
            (
                Shape::TwoDoubledCycles,
                FamilySpec::DisjointUnion(vec![FamilySpec::DoubledCycle(l[0]), FamilySpec::DoubledCycle(l[1])]),
            )
        }
        1 => {
            let deg = g.degrees();
            let cut = (0..g.vertex_count())
                .find(|&v| deg[v] == 8)
                .ok_or_else(|| fail(2, "no cut vertex of degree eight"))?;
            let keep: Vec<bool> = (0..g.vertex_count()).map(|v| v != cut).collect();
            let (rest, _) = g.induced(&keep);
            let mut l: Vec<usize> = components(&rest).iter().map(|m| cycle_len(m) + 1).collect();
            l.sort_unstable();
            if l.len() != 2 {
                return Err(fail(2, "cut vertex does not split into two blocks"));
            }
            (
                Shape::OneSumDoubledCycles,
                FamilySpec::OneSum(vec![
                    (FamilySpec::DoubledCycle(l[0]), 0),
                    (FamilySpec::DoubledCycle(l[1]), 0),
                ]),
            )
        }
        _ => {
            let l = doubled_path_lengths(g);
            match (class, l.as_slice()) {
                (2, &[i, j, k]) => (Shape::DoubledTheta, FamilySpec::Theta(i, j, k)),
                (3, &[p, q]) => (Shape::K4pq, FamilySpec::K4pq(p, q)),
                (4, &[p, q]) => (Shape::K4TwoSum, FamilySpec::K4TwoSum(p, q)),
                _ => return Err(fail(2, "unexpected doubled paths")),
            }
        }
    };
    if !matches(g, &spec) {
        return Err(fail(2, "rebuilt family member is not isomorphic"));
    }
    Ok((shape, spec))
}

/// Genus plus the family a low-genus graph belongs to. Reduced graphs of
/// genus one and two always match; genus zero is matched for graphs
/// without isolated vertices and at most four degree-two vertices.
pub fn classify(g: &ValidAdGraph) -> Result<Classification, ClassifyError> {
    let genus = g.turaev_genus()?;
    let reduced = is_reduced(g);
    let deg = g.degrees();
    let found = match genus {
        0 if g.vertex_count() > 0 && deg.iter().all(|&d| d > 0) && deg.iter().filter(|&&d| d == 2).count() <= 4 => {
            Some(genus_zero(g)?)
        }
        1 if reduced => {
            let n = g.vertex_count();
            let spec = FamilySpec::DoubledCycle(n);
            if n < 2 || !matches(g, &spec) {
                return Err(fail(1, "reduced but not a doubled even cycle"));
            }
            Some((Shape::DoubledEvenCycle, spec))
        }
        2 if reduced => Some(genus_two(g)?),
        _ => None,
    };
    let (shape, family) = found.map_or((None, None), |(s, f)| (Some(s), Some(f)));
    Ok(Classification {
        genus,
        reduced,
        shape,
        family,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{genus_two_representatives, FamilySpec as F};
    use crate::graph::AdGraph;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fam(s: F) -> AdGraph {
        make_family(&s).unwrap()
    }

    fn cls(s: F) -> Classification {
        classify(&fam(s).validate().unwrap()).unwrap()
    }

    #[test]
    fn contraction_examples() {
        assert!(isomorphic(
            &canonical_contract(&fam(F::DoubledCycle(6))),
            &fam(F::DoubledCycle(2))
        ));
        assert!(isomorphic(
            &canonical_contract(&fam(F::K4pq(2, 2))),
            &fam(F::K4pq(1, 1))
        ));
        let fixed = fam(genus_two_minimal_forms()[1].clone());
        assert_eq!(canonical_contract(&fixed), fixed);
    }

    #[test]
    fn random_contraction_order_agrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for spec in [F::K4TwoSum(3, 4), F::Theta(2, 3, 5), F::DoubledCycle(8)] {
            let g = fam(spec);
            let a = canonical_contract(&g);
            for _ in 0..5 {
                assert!(isomorphic(&a, &canonical_contract_random(&g, &mut rng)));
            }
        }
    }

    #[test]
    fn reduced_examples() {
        assert!(is_reduced(&AdGraph::isolated(1)));
        assert!(is_reduced(&fam(F::DoubledCycle(2))));
        assert!(!is_reduced(&fam(F::DoubledPath(2))));
        assert!(!is_reduced(&AdGraph::isolated(2)));
        assert!(is_reduced(&fam(F::K4pq(2, 2))));
        assert!(!is_reduced(&fam(F::C4Legs(1, 0, 0, 0))));
    }

    #[test]
    fn classify_examples() {
        let c = cls(F::DoubledCycle(10));
        assert_eq!((c.genus, c.shape), (1, Some(Shape::DoubledEvenCycle)));
        assert_eq!(c.family, Some(F::DoubledCycle(10)));
        let c = cls(F::Theta(1, 1, 1));
        assert_eq!(
            (c.genus, c.shape, c.family),
            (2, Some(Shape::DoubledTheta), Some(F::Theta(1, 1, 1)))
        );
        let c = cls(F::DisjointUnion(vec![F::DoubledPath(2), F::DoubledPath(3)]));
        assert_eq!((c.genus, c.shape), (0, Some(Shape::TwoDoubledPaths)));
    }

    #[test]
    fn genus_two_classes() {
        let expect = [
            Shape::TwoDoubledCycles,
            Shape::OneSumDoubledCycles,
            Shape::DoubledTheta,
            Shape::K4pq,
            Shape::K4TwoSum,
        ];
        for (spec, shape) in genus_two_representatives().into_iter().zip(expect) {
            let c = cls(spec.clone());
            assert_eq!(c.genus, 2, "{spec}");
            assert!(c.reduced, "{spec}");
            assert_eq!(c.shape, Some(shape), "{spec}");
            assert_eq!(c.family, Some(spec));
        }
        let c = cls(F::K4TwoSum(2, 4));
        assert_eq!(c.family, Some(F::K4TwoSum(2, 4)));
        let c = cls(F::Theta(1, 3, 5));
        assert_eq!(c.family, Some(F::Theta(1, 3, 5)));
    }

    #[test]
    fn genus_zero_shapes() {
        let c = cls(F::C4Legs(2, 0, 4, 2));
        assert_eq!(c.shape, Some(Shape::C4Legs));
        let c = cls(F::K4tildeTwoSum(1, 1, 1, 1));
        assert_eq!((c.genus, c.shape), (0, Some(Shape::K4tildeTwoSum)));
        let c = cls(F::DoubledTree(vec![(0, 1), (0, 2), (0, 3)]));
        assert_eq!(c.shape, Some(Shape::DoubledTree { leaves: 3 }));
    }
}
