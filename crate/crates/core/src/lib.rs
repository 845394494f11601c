//! Colored Jones polynomials of links and their degree slopes.

pub mod cabling;
pub mod corpus;
pub mod diagram;
pub mod dsu;
pub mod error;
pub mod io;
pub mod laurent;
pub mod skein;
pub mod slopes;
pub mod torus;

pub use cabling::{Cable, CableVector, ColorVector, ColoredEngine};
pub use diagram::{BraidWord, Crossing, CrossingStats, KinkKind, LinkDiagram, Sign};
pub use error::{Error, Result};
pub use io::{read_diagram, DiagramDocument, RunConfig};
pub use laurent::LaurentPoly;
pub use skein::SkeinConfig;
pub use slopes::{BoundarySlope, DegreeSamples, Slope, SlopeMatrix, VerifierReport};
pub use torus::TorusParams;
