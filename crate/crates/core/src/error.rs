use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix must have positive dimensions, got {rows}x{cols}")]
    EmptyMatrix { rows: usize, cols: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
    #[error("unknown lattice {0:?} (expected H, E8, minusE8 or K3)")]
    UnknownLattice(String),
    #[error("lattice is not negative definite (signature {plus},{minus},{zero})")]
    NotNegativeDefinite { plus: usize, minus: usize, zero: usize },
    #[error("norm must be negative, got {0}")]
    NonNegativeNorm(i64),
    #[error("parameter {name} must be even, got {value}")]
    OddParameter { name: &'static str, value: i64 },
    #[error("parameter {name} out of range: {value}")]
    OutOfRange { name: &'static str, value: i64 },
    #[error("vectors are linearly dependent (rank {rank} < {count})")]
    LinearlyDependent { rank: usize, count: usize },
    #[error("vector is not integral")]
    NonIntegral,
    #[error("weight triples may not contain zero")]
    ZeroWeight,
    #[error("malformed profile: {0}")]
    MalformedProfile(String),
    #[error("invalid plan: {0}")]
    InvalidPlan(String),
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
}
