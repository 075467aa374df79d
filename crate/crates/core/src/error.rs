use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("arc {0} does not exist")]
    UnknownArc(usize),

    #[error("surface with genus {genus} and {punctures} punctures has no triangulation with at least three arcs at every puncture")]
    NotTriangulable { genus: usize, punctures: usize },

    #[error("no base triangulation for a sphere with {0} punctures (expected 4, 5 or 6)")]
    SphereBase(usize),

    #[error("scalar assignment: {0}")]
    Scalars(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("path of degree {degree} exceeds truncation degree {truncation}")]
    DegreeOverflow { degree: usize, truncation: usize },

    #[error("hypotheses not met: {0}")]
    HypothesesNotMet(String),

    #[error("oracle mismatch: {0}")]
    OracleMismatch(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
