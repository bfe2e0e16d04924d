use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian: |A - A^H|_F = {residual:.3e}")]
    NonHermitianInput { residual: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("too many arguments: {count} (limit {limit})")]
    TooManyArguments { count: usize, limit: usize },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("negative variance {0:.3e}")]
    NegativeVariance(f64),

    #[error("dimension {0} is even; coherent states need an odd dimension")]
    EvenDimension(usize),

    #[error("fiducial vector has norm {0}, expected 1")]
    NonUnitFiducial(f64),

    #[error("coherent state ({0}, {1}) is linearly dependent on the aggregate")]
    LinearlyDependentState(usize, usize),

    #[error("label ({0}, {1}) already present in the aggregate")]
    DuplicateLabel(usize, usize),

    #[error("shifted aggregate at displacement ({0}, {1}) is linearly dependent")]
    ShiftDependenceFailure(usize, usize),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("unknown check `{0}`")]
    UnknownCheck(String),

    #[error("parse error in {context}: {message}")]
    Parse { context: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(context: impl Into<String>, message: impl ToString) -> Self {
        Error::Parse {
            context: context.into(),
            message: message.to_string(),
        }
    }
}
