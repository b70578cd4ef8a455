use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("polynomial is not a knot polynomial: {0}")]
    NotKnotShaped(String),

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("no even continued fraction of odd length for {0}/{1}")]
    NoEvenExpansion(i64, i64),

    #[error("invalid fraction {0}/{1}")]
    InvalidFraction(i64, i64),

    #[error("tangle connectivity is {found}, expected {expected}")]
    BadTanglePattern { expected: String, found: String },

    #[error("diagram has {0} components, expected a knot")]
    NotAKnot(usize),

    #[error("alexander minor determinant vanished")]
    DegenerateMatrix,

    #[error("arc {0} carries no provenance")]
    MissingProvenance(usize),

    #[error("arc {arc} is assigned both x{first} and x{second}")]
    ProvenanceConflict { arc: usize, first: usize, second: usize },

    #[error("orientation of the partial knot disagrees with the assembled knot")]
    OrientationMismatch,

    #[error("parse error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },

    #[error("{0}")]
    Semantic(String),

    #[error("catalog entry {0:?} not found")]
    NotFound(String),

    #[error("catalog self-check failed for {name}: {reason}")]
    SelfCheckFailed { name: String, reason: String },

    #[error("malformed diagram: {0}")]
    Malformed(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Short machine-readable kind, used by JSON error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotKnotShaped(_) => "not_knot_shaped",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::NoEvenExpansion(..) => "no_even_expansion",
            Error::InvalidFraction(..) => "invalid_fraction",
            Error::BadTanglePattern { .. } => "bad_tangle_pattern",
            Error::NotAKnot(_) => "not_a_knot",
            Error::DegenerateMatrix => "degenerate_matrix",
            Error::MissingProvenance(_) => "missing_provenance",
            Error::ProvenanceConflict { .. } => "provenance_conflict",
            Error::OrientationMismatch => "orientation_mismatch",
            Error::Syntax { .. } => "syntax_error",
            Error::Semantic(_) => "semantic_error",
            Error::NotFound(_) => "not_found",
            Error::SelfCheckFailed { .. } => "self_check_failed",
            Error::Malformed(_) => "malformed",
            Error::Io(_) => "io",
        }
    }
}
