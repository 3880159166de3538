use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("polynomial support is empty")]
    EmptySupport,

    #[error("invalid weight {coords:?}: {reason}")]
    InvalidWeight { coords: Vec<i64>, reason: String },

    #[error("zero vector has no primitive representative")]
    ZeroVector,

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("cone is not pointed (lineality dimension {0})")]
    NotPointed(usize),

    #[error("linear form is not strictly positive on cone ray {0:?}")]
    NotStrictlyPositive(Vec<i64>),

    #[error("generators are linearly dependent")]
    DependentGenerators,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("work limit exceeded ({needed} cells requested, limit {limit}); raise CANWEIGHT_MAX_CELLS")]
    WorkLimit { needed: u128, limit: u64 },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn weight(coords: &[i64], reason: impl Into<String>) -> Self {
        Error::InvalidWeight {
            coords: coords.to_vec(),
            reason: reason.into(),
        }
    }

    /// True for errors caused by malformed user input rather than by a failed
    /// internal check.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Invariant(_) | Error::Overflow | Error::WorkLimit { .. })
    }
}
