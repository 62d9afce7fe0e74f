use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A machine-word computation left the `i64` range. The whole run is
    /// restarted in arbitrary precision when this is seen.
    #[error("machine-word arithmetic overflow")]
    Overflow,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("zero vector has no primitive representative")]
    ZeroVector,
    #[error("cone is not pointed")]
    NotPointed,
    #[error("cone is zero")]
    ZeroCone,
    #[error("cone is not full dimensional")]
    NotFullDim,
    #[error("grading vanishes on the lattice")]
    ZeroGrading,
    #[error("subspace is not a hyperplane of its span with the point")]
    DegenerateSpan,
    #[error("simplex is degenerate")]
    DegenerateSimplex,
    #[error("grading is not positive on a generator")]
    NonPositiveDegree,
    #[error("face has no vertices")]
    EmptyFace,
    #[error("grading lies on a hyperplane spanned by a hollow facet")]
    DegenerateGrading,
    #[error("no generic element found after {0} rounds")]
    ExhaustedCandidates(usize),
    #[error("shared facet form vanishes on the opposite ray")]
    SharedFacetDegenerate,
    #[error("grading vanishes on a support vector of a signed cell")]
    GenericityViolated,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("inconsistent dimensions: {0}")]
    InconsistentDimensions(String),
    #[error("polytope is unbounded or empty")]
    UnboundedPolytope,
    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::InconsistentDimensions(_) => 2,
            Error::VerificationFailed(_) => 4,
            Error::ExhaustedCandidates(_) => 5,
            _ => 3,
        }
    }
}
