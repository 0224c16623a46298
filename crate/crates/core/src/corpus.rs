//! Named diagrams and a small knot corpus.

use crate::diagram::PlanarDiagram;

pub fn unknot_kink() -> PlanarDiagram {
    PlanarDiagram::from_pd([[1, 1, 2, 2]]).expect("valid PD")
}

pub fn trefoil() -> PlanarDiagram {
    PlanarDiagram::from_pd([[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]]).expect("valid PD")
}

pub fn figure_eight() -> PlanarDiagram {
    PlanarDiagram::from_pd([[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]]).expect("valid PD")
}

/// The non-alternating knot 9_42, as in the standard tables.
pub fn nine_42() -> PlanarDiagram {
    PlanarDiagram::from_pd([
        [1, 4, 2, 5],
        [5, 10, 6, 11],
        [3, 9, 4, 8],
        [9, 3, 10, 2],
        [16, 12, 17, 11],
        [14, 7, 15, 8],
        [6, 15, 7, 16],
        [18, 14, 1, 13],
        [12, 18, 13, 17],
    ])
    .expect("valid PD")
}

/// Connected sum of two copies of 9_42 along an alternating arc of each:
/// a connected diagram whose decomposition graph is disconnected.
pub fn nine_42_sum() -> PlanarDiagram {
    let d = nine_42();
    d.connected_sum(2, &d, 2).expect("arc 2 exists")
}

/// Knots given as closed braids on three and four strands.
pub const BRAID_WORDS: &[(usize, &[i32])] = &[
    (3, &[1, 1, 1, 2, -1, 2]),
    (3, &[1, -2, 1, -2, 1, -2]),
    (3, &[1, 1, 1, 1, 1, 2, -1, 2]),
    (3, &[1, 1, -2, 1, -2, -2]),
    (3, &[1, 1, 1, -2, 1, -2]),
    (3, &[1, 1, 1, 1, -2, 1, -2]),
    (3, &[1, 2, 1, 2, 1, 2, 1]),
    (3, &[1, 1, 2, 1, 1, 2, 2]),
    (3, &[1, -2, 1, 1, -2, -2, 1, -2]),
    (3, &[1, 1, 1, -2, -2, 1, -2, -2]),
    (3, &[1, 2, 2, 2, -1, 2, 2, 2]),
    (3, &[1, 1, 1, 2, 1, 1, 1, 2]),
    (3, &[1, -2, -2, 1, -2, 1, 1, -2, 1, -2]),
    (4, &[1, -2, 3, -2, 1, -2, 3]),
    (4, &[1, 1, 2, -1, 2, 3, -2, 3]),
    (4, &[1, -2, 1, 3, -2, 3, 3]),
    (4, &[1, 2, 3, 1, 2, 3, 1, 2, 3, 1, 2]),
    (4, &[1, -2, 3, 1, -2, 3, 1, -2, 3]),
    (4, &[1, 1, 2, -3, 2, 1, -3, -3, 2]),
];

/// Named diagrams, braid closures that are knots, connected sums and
/// twisted copies; all have at most twelve crossings.
pub fn knot_corpus() -> Vec<(String, PlanarDiagram)> {
    let mut out = vec![
        ("trefoil".to_string(), trefoil()),
        ("figure-eight".to_string(), figure_eight()),
        ("9_42".to_string(), nine_42()),
        (
            "trefoil#trefoil".to_string(),
            trefoil().connected_sum(1, &trefoil(), 1).expect("arc 1"),
        ),
        (
            "trefoil#figure-eight".to_string(),
            trefoil().connected_sum(2, &figure_eight(), 3).expect("arcs"),
        ),
        (
            "trefoil#mirror".to_string(),
            trefoil().connected_sum(1, &trefoil().mirror(), 1).expect("arc 1"),
        ),
        (
            "twisted figure-eight".to_string(),
            figure_eight().insert_twist(1).expect("arc 1"),
        ),
        ("twisted 9_42".to_string(), nine_42().insert_twist(2).expect("arc 2")),
    ];
    for (strands, word) in BRAID_WORDS {
        let d = PlanarDiagram::braid_closure(*strands, word).expect("valid braid");
        if d.link_components() == 1 && d.crossing_count() <= 12 {
            out.push((format!("braid{strands}{word:?}"), d));
        }
    }
    out
}

/// Lookup by name: `trefoil`, `figure-eight`, `9_42`, `9_42#9_42`.
pub fn named(name: &str) -> Option<PlanarDiagram> {
    match name {
        "unknot-kink" => Some(unknot_kink()),
        "trefoil" => Some(trefoil()),
        "figure-eight" => Some(figure_eight()),
        "9_42" => Some(nine_42()),
        "9_42#9_42" => Some(nine_42_sum()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::altdecomp::decompose;
    use crate::families::{make_family, FamilySpec};
    use crate::iso::isomorphic;

    #[test]
    fn sum_of_two_9_42_splits_the_graph() {
        let d = nine_42_sum();
        assert_eq!(d.split_components(), 1);
        let dec = decompose(&d).unwrap();
        let two = make_family(&FamilySpec::DisjointUnion(vec![
            FamilySpec::DoubledCycle(2),
            FamilySpec::DoubledCycle(2),
        ]))
        .unwrap();
        assert!(isomorphic(&dec.graph, &two));
        assert_eq!(d.turaev_genus().unwrap(), 2);
    }

    #[test]
    fn corpus_is_large_enough() {
        let c = knot_corpus();
        assert!(c.len() >= 20, "only {} diagrams", c.len());
        for (name, d) in &c {
            assert!(d.crossing_count() <= 12, "{name}");
            assert_eq!(d.split_components(), 1, "{name}");
            assert_eq!(d.link_components(), 1, "{name}");
        }
    }
}
