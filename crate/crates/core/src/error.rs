use thiserror::Error;

/// Errors raised by the verification kernels.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("tensor slot {slot} out of range for arity {arity}")]
    SlotOutOfRange { slot: usize, arity: usize },
    #[error("index {index} out of range (bound {bound}) in {context}")]
    IndexOutOfRange {
        context: &'static str,
        index: usize,
        bound: usize,
    },
    #[error("matrix of dimension {dim} is not nilpotent")]
    NotNilpotent { dim: usize },
    #[error("singular operator: {0}")]
    Singular(String),
    #[error("point is not regular: {0}")]
    SingularPoint(String),
    #[error("unsupported root system type: {0}")]
    UnsupportedType(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("module is not small: weight {witness:?} equals twice a root")]
    NotSmall { witness: Vec<i64> },
    #[error("integrator step size underflow at t = {t}: {detail}")]
    StepUnderflow { t: f64, detail: String },
    /// Entries too large for an absolute residual to be resolved at the
    /// requested tolerance.
    #[error("ill-conditioned computation: {0}")]
    IllConditioned(String),
    #[error("invalid configuration: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
