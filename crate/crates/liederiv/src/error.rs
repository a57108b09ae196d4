use thiserror::Error;

/// Errors surfaced by the library. Every variant maps to a stable
/// machine-readable code used by the command-line frontend.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{context}: expected dimension {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("ambient dimensions differ: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("vector is not idempotent")]
    NotIdempotent,
    #[error("idempotent must be nontrivial (neither zero nor the unit)")]
    TrivialIdempotent,
    #[error("map is not a Lie derivation of the algebra")]
    NotLieDerivation,
    #[error("algebra fails validation with {violations} violation(s)")]
    InvalidAlgebra { violations: usize },
    #[error("bimodule fails validation with {violations} violation(s)")]
    InvalidBimodule { violations: usize },
    #[error("module is not loyal")]
    NotLoyal,
    #[error("map cannot be lifted: {0}")]
    IncompatibleLift(String),
    #[error("unknown family descriptor: {0}")]
    UnknownFamily(String),
    #[error("bad input: {0}")]
    BadInput(String),
}

impl Error {
    /// Stable identifier for machine consumption (CLI error envelopes).
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "dimension-mismatch",
            Error::AmbientMismatch { .. } => "ambient-mismatch",
            Error::NotIdempotent => "not-idempotent",
            Error::TrivialIdempotent => "trivial-idempotent",
            Error::NotLieDerivation => "input-not-lie-derivation",
            Error::InvalidAlgebra { .. } => "invalid-algebra",
            Error::InvalidBimodule { .. } => "invalid-bimodule",
            Error::NotLoyal => "not-loyal",
            Error::IncompatibleLift(_) => "incompatible-lift",
            Error::UnknownFamily(_) => "unknown-family",
            Error::BadInput(_) => "bad-input",
        }
    }
}
