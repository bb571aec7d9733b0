use alloc::string::String;

/// Errors raised by the group, automaton, growth and polytope routines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("invalid generating set: {0}")]
    InvalidGenerators(String),

    #[error("element does not match the presentation: {0}")]
    ElementMismatch(String),

    #[error("letter index {index} out of range for an alphabet of {size} letters")]
    LetterOutOfRange { index: usize, size: usize },

    #[error("unknown letter `{0}`")]
    UnknownLetter(String),

    #[error("integer overflow in group arithmetic")]
    Overflow,

    #[error("resource cap exceeded: {what} would exceed {cap}")]
    ResourceCap { what: &'static str, cap: usize },

    #[error("inverse of letter `{letter}` not reached within length {cap}")]
    AbsentInverse { letter: String, cap: u32 },

    #[error("length {needed} is beyond the oracle radius {radius}")]
    BeyondOracle { needed: u32, radius: u32 },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("no linear recurrence reproduces the series: {0}")]
    RecurrenceNotFound(String),

    #[error("vector is not in the positive span of the generators")]
    NotInPositiveSpan,

    #[error("polytope is not full-dimensional or does not contain the origin in its interior")]
    NotFullDimensional,

    #[error("polytope is not invariant under the finite quotient action")]
    NotInvariant,

    #[error("ray {ray} has no geodesic representative at scale {scale}")]
    NoGeodesicRepresentative { ray: String, scale: u64 },

    #[error("surjectivity check failed: {0}")]
    SurjectivityFailed(String),

    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
