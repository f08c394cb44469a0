use thiserror::Error;

use crate::field::FieldKind;

/// Everything that can go wrong in this crate.
///
/// A failed separating check is not an error; see `CheckOutcome::Fail`.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("a ring needs at least one indeterminate")]
    EmptyRing,

    #[error("boolean mode requires the field F2")]
    BooleanRequiresF2,

    #[error("variable `{0}` is declared twice")]
    DuplicateVariable(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("index {index} out of range for {nvars} indeterminates")]
    IndexOutOfRange { index: usize, nvars: usize },

    #[error("indeterminate with index {0} repeated in tuple")]
    RepeatedIndex(usize),

    #[error("ring is over {ring} but coefficients are over {coefficients}")]
    FieldMismatch { ring: FieldKind, coefficients: FieldKind },

    #[error("expected {expected} indeterminates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("polynomial is not square-free in a boolean ring")]
    NotSquareFree,

    #[error("operation needs a boolean-mode system")]
    NonBoolean,

    #[error("invalid term ordering: {0}")]
    InvalidOrdering(String),

    #[error("interreduction hypothesis violated: {0}")]
    InterreductionHypothesis(String),

    #[error("no row of the reduced matrix has leading term {0}")]
    NoRowWithLeadingTerm(String),

    #[error("the optimized check failed, so there is nothing to extract")]
    OptimizedCheckFailed,

    #[error("the outcome passed in is not a success")]
    NotASuccess,

    #[error("separating tuple does not cover the indeterminate {0}")]
    MissingIndeterminate(String),

    #[error("oracle overloaded: {0}")]
    OracleOverloaded(String),

    #[error("invalid point set: {0}")]
    InvalidPoints(String),
}
