//! Workloads shared by the benchmarks.

use knotslope_core::cabling::cable_diagram;
use knotslope_core::{corpus, CableVector, LinkDiagram};

/// Cable of a corpus diagram, e.g. `("figure-eight", &[2])`.
pub fn cable(name: &str, k: &[u32]) -> LinkDiagram {
    let d = corpus::by_name(name).expect("corpus diagram");
    cable_diagram(&d, &CableVector(k.to_vec())).expect("cable").diagram
}

/// Diagrams small enough for both bracket engines, by crossing count.
pub fn engine_workloads() -> Vec<(String, LinkDiagram)> {
    vec![
        ("6_2".into(), corpus::knot_6_2()),
        ("T(-2,4)".into(), corpus::torus_braid(-2, 4)),
        ("trefoil x2".into(), cable("trefoil-right", &[2])),
        ("figure-eight x2".into(), cable("figure-eight", &[2])),
    ]
}
