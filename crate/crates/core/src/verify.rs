//! Seeded property sweep across the independent genus computations.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::altdecomp::decompose;
use crate::construct::realize_diagram;
use crate::diagram::{PlanarDiagram, SmoothingConvention};
use crate::enumerate::{enumerate_adgs, CensusFilter};
use crate::graph::{turaev_genus_randomized, AdGraph, ValidAdGraph};
use crate::iso::isomorphic;
use crate::moves::{random_genus0, MoveScript};

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub iterations: usize,
    pub seed: u64,
    pub checks: usize,
    /// Passed checks per property suite.
    pub suites: BTreeMap<String, usize>,
}

/// A failed property with the smallest input found that still fails.
#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub property: String,
    pub detail: String,
    /// Graph text, move script or PD code.
    pub counterexample: String,
}

/// Genus of a diagram three ways: states, twisted surface of the
/// decomposition graph, and graph reduction. Also checks the mirror,
/// the swapped smoothing convention and a randomized reduction order.
pub fn check_diagram<R: Rng>(d: &PlanarDiagram, rng: &mut R) -> Result<usize, String> {
    let states = d.turaev_genus().map_err(|e| e.to_string())?;
    let dec = decompose(d).map_err(|e| e.to_string())?;
    let twisted = dec.twisted_genus().map_err(|e| e.to_string())?;
    let v = dec.graph.clone().validate().map_err(|e| e.to_string())?;
    let graph = v.turaev_genus().map_err(|e| e.to_string())?;
    if !(states == twisted && twisted == graph) {
        return Err(format!("states {states}, twisted {twisted}, graph {graph}"));
    }
    let swapped = d
        .turaev_genus_with(SmoothingConvention::Swapped)
        .map_err(|e| e.to_string())?;
    let mirror = d.mirror().turaev_genus().map_err(|e| e.to_string())?;
    let random = turaev_genus_randomized(&v, rng).map_err(|e| e.to_string())?;
    if swapped != states || mirror != states || random != states {
        return Err(format!(
            "genus {states}, swapped {swapped}, mirror {mirror}, randomized {random}"
        ));
    }
    Ok(states)
}

/// Round trip through a realized diagram.
pub fn check_graph<R: Rng>(g: &ValidAdGraph, rng: &mut R) -> Result<(), String> {
    let genus = g.turaev_genus().map_err(|e| e.to_string())?;
    let d = realize_diagram(g).map_err(|e| e.to_string())?;
    let dec = decompose(&d).map_err(|e| e.to_string())?;
    if !isomorphic(&dec.graph, g) {
        return Err("decomposition of the realized diagram is not isomorphic".into());
    }
    if !d.is_adequate().map_err(|e| e.to_string())? {
        return Err("realized diagram is not adequate".into());
    }
    let dg = check_diagram(&d, rng)?;
    if dg != genus {
        return Err(format!("graph genus {genus}, realized diagram genus {dg}"));
    }
    if d.arc_count() > 0 && d.crossing_count() < 14 {
        let labels = d.arc_labels();
        let a = labels[rng.gen_range(0..labels.len())];
        let t = d.insert_twist(a).map_err(|e| e.to_string())?;
        let tg = check_diagram(&t, rng)?;
        if tg != genus {
            return Err(format!("twist changed genus from {genus} to {tg}"));
        }
    }
    Ok(())
}

fn check_script(s: &MoveScript, seed: u64) -> Result<(), (String, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = s.run().map_err(|e| ("script".to_string(), e.to_string()))?;
    let v = g.validate().map_err(|e| ("validate".to_string(), e.to_string()))?;
    let genus = v.turaev_genus().map_err(|e| ("genus".to_string(), e.to_string()))?;
    if genus != 0 {
        return Err(("genus-zero moves".into(), format!("genus {genus}")));
    }
    check_graph(&v, &mut rng).map_err(|e| ("round trip".to_string(), e))
}

/// Drop moves from the end while the script still fails.
fn minimize(s: &MoveScript, seed: u64) -> MoveScript {
    let mut best = s.clone();
    for len in (0..s.moves.len()).rev() {
        let shorter = MoveScript {
            start: s.start,
            moves: s.moves[..len].to_vec(),
        };
        if check_script(&shorter, seed).is_err() {
            best = shorter;
        }
    }
    best
}

pub fn verify(iterations: usize, seed: u64) -> Result<VerifyReport, Violation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let census: Vec<ValidAdGraph> = enumerate_adgs(&CensusFilter::new(8)).expect("small bounds");
    let mut suites: BTreeMap<String, usize> = BTreeMap::new();
    for _ in 0..iterations {
        let script = random_genus0(rng.gen_range(0..=20), &mut rng);
        let sub_seed = rng.gen();
        if let Err((property, detail)) = check_script(&script, sub_seed) {
            let small = minimize(&script, sub_seed);
            return Err(Violation {
                property,
                detail,
                counterexample: small.to_string(),
            });
        }
        let g = census.choose(&mut rng).expect("nonempty census");
        if let Err(detail) = check_graph(g, &mut rng) {
            return Err(Violation {
                property: "round trip".into(),
                detail,
                counterexample: AdGraph::to_text(g),
            });
        }
        *suites.entry("genus-zero scripts".into()).or_default() += 1;
        *suites.entry("census round trips".into()).or_default() += 1;
    }
    let checks = suites.values().sum();
    Ok(VerifyReport {
        iterations,
        seed,
        checks,
        suites,
    })
}
