//! Small named diagrams used by the test suites, benches and the CLI.

use crate::diagram::{BraidWord, LinkDiagram};

pub struct NamedDiagram {
    pub name: &'static str,
    pub diagram: LinkDiagram,
}

fn pd(code: &[[i64; 4]]) -> LinkDiagram {
    LinkDiagram::from_pd(code, None).expect("corpus PD codes are valid")
}

/// Two-crossing Hopf link with both crossings positive.
pub fn hopf() -> LinkDiagram {
    pd(&[[1, 3, 2, 4], [3, 1, 4, 2]])
}

pub fn trefoil_left() -> LinkDiagram {
    pd(&[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]])
}

pub fn trefoil_right() -> LinkDiagram {
    trefoil_left().mirror()
}

pub fn figure_eight() -> LinkDiagram {
    pd(&[[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]])
}

pub fn knot_5_2() -> LinkDiagram {
    pd(&[[1, 4, 2, 5], [3, 8, 4, 9], [5, 10, 6, 1], [9, 6, 10, 7], [7, 2, 8, 3]])
}

pub fn knot_6_2() -> LinkDiagram {
    pd(&[
        [1, 4, 2, 5],
        [5, 10, 6, 11],
        [3, 9, 4, 8],
        [9, 3, 10, 2],
        [7, 12, 8, 1],
        [11, 6, 12, 7],
    ])
}

/// Standard braid closure of the `(r, s)` torus link.
pub fn torus_braid(r: i64, s: usize) -> LinkDiagram {
    LinkDiagram::from_braid(&BraidWord::torus(r, s).expect("valid torus braid"))
}

/// The acceptance corpus.
pub fn all() -> Vec<NamedDiagram> {
    vec![
        NamedDiagram { name: "hopf", diagram: hopf() },
        NamedDiagram { name: "trefoil-right", diagram: trefoil_right() },
        NamedDiagram { name: "trefoil-left", diagram: trefoil_left() },
        NamedDiagram { name: "figure-eight", diagram: figure_eight() },
        NamedDiagram { name: "5_2", diagram: knot_5_2() },
        NamedDiagram { name: "6_2", diagram: knot_6_2() },
        NamedDiagram { name: "T(2,4)", diagram: torus_braid(2, 4) },
        NamedDiagram { name: "T(-2,4)", diagram: torus_braid(-2, 4) },
    ]
}

/// Looks up a corpus diagram by name.
pub fn by_name(name: &str) -> Option<LinkDiagram> {
    all().into_iter().find(|d| d.name == name).map(|d| d.diagram)
}
