use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report. [`Error::code`] returns the
/// variant name, which the CLI echoes verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("invalid exponent k = {0}, must be at least 1")]
    InvalidExponent(u32),
    #[error("modulus {p}^{k} exceeds 2^31")]
    ModulusTooLarge { p: u64, k: u32 },
    #[error("{0} is not a unit")]
    NonUnit(u64),
    #[error("matrix is not invertible: no unit pivot in column {column}")]
    SingularMatrix { column: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operation requires a field, got Z/{0}")]
    NotAField(u64),
    #[error("matrix is not skew-symmetric at ({row}, {col})")]
    NotSkewSymmetric { row: usize, col: usize },
    #[error("dimension {0} is not even and positive")]
    DimensionOdd(usize),
    #[error("form is degenerate")]
    DegenerateForm,
    #[error("subspace is not isotropic: {0}")]
    NotIsotropic(String),
    #[error("vectors are linearly dependent")]
    LinearlyDependent,
    #[error("reduction of the supplied vector does not match the basis: {0}")]
    ReductionMismatch(String),
    #[error("enumeration of {needed} objects exceeds the budget of {budget}")]
    TooLarge { needed: u128, budget: u128 },
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("relator is empty")]
    EmptyRelator,
    #[error("relator is not a Demushkin candidate: {0}")]
    NotCandidate(String),
    #[error("constraint of dimension {dim} exceeds t = {t}")]
    ConstraintTooLarge { dim: usize, t: usize },
    #[error("q != 0 requires a distinguished functional in the constraint")]
    DistinguishedMissing,
    #[error("distinguished functional {supplied:?} differs from the one determined by the relator {expected:?}")]
    DistinguishedMismatch { supplied: Vec<u64>, expected: Vec<u64> },
    #[error("normalization failed its own verification: {0}")]
    VerificationFailed(String),
    #[error("retraction construction does not apply: {0}")]
    NoWitness(String),
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("inequality chain violated at step '{0}'")]
    ChainViolation(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "NotPrime",
            Error::InvalidExponent(_) => "InvalidExponent",
            Error::ModulusTooLarge { .. } => "ModulusTooLarge",
            Error::NonUnit(_) => "NonUnit",
            Error::SingularMatrix { .. } => "SingularMatrix",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::NotAField(_) => "NotAField",
            Error::NotSkewSymmetric { .. } => "NotSkewSymmetric",
            Error::DimensionOdd(_) => "DimensionOdd",
            Error::DegenerateForm => "DegenerateForm",
            Error::NotIsotropic(_) => "NotIsotropic",
            Error::LinearlyDependent => "LinearlyDependent",
            Error::ReductionMismatch(_) => "ReductionMismatch",
            Error::TooLarge { .. } => "TooLarge",
            Error::InvalidWord(_) => "InvalidWord",
            Error::EmptyRelator => "EmptyRelator",
            Error::NotCandidate(_) => "NotCandidate",
            Error::ConstraintTooLarge { .. } => "ConstraintTooLarge",
            Error::DistinguishedMissing => "DistinguishedMissing",
            Error::DistinguishedMismatch { .. } => "DistinguishedMismatch",
            Error::VerificationFailed(_) => "VerificationFailed",
            Error::NoWitness(_) => "NoWitness",
            Error::DomainError(_) => "DomainError",
            Error::ChainViolation(_) => "ChainViolation",
        }
    }
}
