use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree of the zero polynomial is undefined")]
    DegreeOfZero,

    #[error("malformed PD code: {0}")]
    MalformedPd(String),

    #[error("orientation of component {component} cannot be inferred; supply crossing signs")]
    AmbiguousOrientation { component: usize },

    #[error("invalid braid word: {0}")]
    InvalidBraid(String),

    #[error("diagram has {crossings} crossings, brute-force limit is {limit}")]
    BruteforceGuard { crossings: usize, limit: usize },

    #[error("sweep needs {width} open strands, contraction limit is {limit}")]
    WidthGuard { width: usize, limit: usize },

    #[error("expected {expected} entries (one per component), got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("colors must be positive integers")]
    InvalidColor,

    #[error("diagram is not minus-adequate")]
    NotAdequate,

    #[error("missing grid points for slope entry ({i}, {j})")]
    MissingGridPoints { i: usize, j: usize },

    #[error("degree not quadratic on this coset: entry ({i}, {j}) has estimates {estimates}")]
    NonQuadratic { i: usize, j: usize, estimates: String },

    #[error("invalid slope matrix: {0}")]
    InvalidMatrix(String),

    #[error("invalid torus parameters: {0}")]
    InvalidTorus(String),

    #[error("torus formula and skein value differ by a non-unit: {0}")]
    ConventionMismatch(String),

    #[error("invalid input document: {0}")]
    Document(#[from] serde_json::Error),
}
