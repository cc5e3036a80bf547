use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EpwError {
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("ragged matrix rows")]
    Ragged,
    #[error("grade overflow: {0} exceeds 6")]
    GradeOverflow(usize),
    #[error("wrong grade: expected {expected}, found {found}")]
    WrongGrade { expected: usize, found: usize },
    #[error("zero input: {0}")]
    ZeroInput(&'static str),
    #[error("vector does not lie in the required subspace: {0}")]
    NotInSubspace(&'static str),
    #[error("not Lagrangian: dimension {dim}, nonzero Gram pairs {failed_pairs:?}")]
    NotLagrangian { dim: usize, failed_pairs: Vec<(usize, usize)> },
    #[error("subspace is not isotropic; nonzero Gram pairs {0:?}")]
    NotIsotropic(Vec<(usize, usize)>),
    #[error("A and B are not transversal")]
    NonTransversal,
    #[error("F_v meets B: the point lies outside the chart")]
    ChartMiss,
    #[error("the chart is degenerate: the trivectors of V0 meet A")]
    ChartDegenerate,
    #[error("Y_A is the whole projective space")]
    YIsWholeSpace,
    #[error("determinant has degree {0} > 6")]
    DegreeAnomaly(usize),
    #[error("prime {0} divides a denominator")]
    BadPrime(u64),
    #[error("{0} is not a supported prime")]
    NotPrime(u64),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("span dimension mismatch: expected {expected}, found {found}")]
    SpanMismatch { expected: usize, found: usize },
    #[error("type {0} has no rational parametrization")]
    NonRationalType(String),
    #[error("generators are degenerate")]
    DegenerateGenerators,
    #[error("splitting ladders for t and 1/t disagree")]
    BaseLocusArtifact,
    #[error("retries exhausted: {0}")]
    RetriesExhausted(String),
    #[error("identity failed: {0}")]
    IdentityFailure(String),
    #[error("invalid datum: {0}")]
    InvalidDatum(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, EpwError>;
