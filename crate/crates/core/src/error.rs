use thiserror::Error;

/// Failures of the series algebra itself.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("variable count mismatch: {left} vs {right}")]
    VarCountMismatch { left: usize, right: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("argument {index} of a composition has a nonzero constant term")]
    NonzeroConstantTerm { index: usize },
    #[error("constant term of the matrix is singular")]
    SingularConstantTerm,
    #[error("derivative order {order} exceeds accuracy {accuracy}")]
    OrderExceedsAccuracy { order: u32, accuracy: u32 },
    #[error("parse error: {0}")]
    Parse(String),
}

/// Crate-level error.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("frame is degenerate at the origin")]
    DegenerateFrame,
    #[error("field {field} is not complex-tangent to the hypersurface at 0 (residue {residue})")]
    NotComplexTangent { field: String, residue: String },
    #[error("insufficient accuracy: need {needed}, have {have}")]
    InsufficientAccuracy { needed: u32, have: u32 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("vector field vanishes at the origin")]
    VanishingField,
    #[error("hypersurface gradient vanishes at the origin")]
    SingularHypersurface,
    #[error("disc centre must be the origin of the chart; got {0}")]
    OffCenter(String),
    #[error(
        "Picard iteration did not stabilise within {iterations} passes (residual norms {trace:?})"
    )]
    NonStabilization {
        iterations: usize,
        trace: Vec<String>,
    },
    #[error("norm precondition violated: {0}")]
    NormPrecondition(String),
    #[error("structure is not integrable: {0}")]
    NotIntegrable(String),
    #[error("linear system is singular: {0}")]
    SingularSystem(String),
    #[error("certification failed: {0}")]
    CertificationFailed(String),
    #[error("Lie algebra hypothesis violated: {0}")]
    ClosureViolated(String),
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
