use thiserror::Error;

use crate::parse::ParseDiagnostic;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not skew-symmetric at entry ({row}, {col})")]
    NotSkew { row: usize, col: usize },

    #[error("matrix is not symmetric at entry ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("matrix is not constant: entry ({row}, {col}) has positive degree")]
    NotConstant { row: usize, col: usize },

    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("x^T g is not identically zero: {0}")]
    NotInQ(String),

    #[error("x^T g does not vanish on the simplex hyperplane; remainder {remainder}")]
    NotVanishingOnH { remainder: String },

    #[error("hypothesis violated: x^T g does not vanish on the simplex hyperplane; remainder {remainder}")]
    HypothesisViolated { remainder: String },

    #[error("polynomial has a constant term")]
    HasConstantTerm,

    #[error("polynomial has a term of degree < 2: {0}")]
    LowOrderTerm(String),

    #[error("internal invariant breached: {0}")]
    Internal(String),

    #[error("invalid initial condition: {0}")]
    InvalidInitialCondition(String),

    #[error("step size must be positive and finite, got {0}")]
    StepSizeNonpositive(f64),

    #[error("horizon must be non-negative and finite, got {0}")]
    InvalidHorizon(f64),

    #[error("unsupported dimension {0} (phase portraits need n = 3)")]
    UnsupportedDimension(usize),

    #[error("variable x{index} out of range for n = {n}")]
    VariableOutOfRange { index: usize, n: usize, diagnostic: ParseDiagnostic },

    #[error("syntax error: {0}")]
    Syntax(ParseDiagnostic),

    #[error("invalid document: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors that signal a broken internal invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}
