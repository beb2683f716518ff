use thiserror::Error;

/// Errors raised by the algebra layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0} is not a prime below 2^32")]
    InvalidModulus(u64),
    #[error("operands live in different polynomial rings")]
    RingMismatch,
    #[error("monomial dimension mismatch: expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("S-polynomial of degree {degree} exceeds the degree guard {limit}")]
    DegreeGuard { degree: u32, limit: u32 },
    #[error(
        "quotient is not finite-dimensional (no pure power of `{variable}` among leading terms)"
    )]
    NotCofinite { variable: String },
    #[error("ideal containment fails: {witness} is not in the larger ideal")]
    NotContained { witness: String },
    #[error("polynomial {0} is not homogeneous")]
    NotHomogeneous(String),
    #[error("form {0} is not a nonzero element of degree one")]
    NotLinear(String),
    #[error("vector entries have mixed degrees")]
    MixedDegrees,
    #[error("vector has {found} entries but there are {expected} forms")]
    LengthMismatch { expected: usize, found: usize },
    #[error(
        "field of size {0} is too small for generic choices (an infinite residue field is assumed)"
    )]
    FieldTooSmall(u64),
    #[error("ideal is not a reduction within the search bound {bound}")]
    NotAReduction { bound: usize },
    #[error("degree {needed} lies outside the computed range (available up to {available})")]
    BeyondWindow { needed: usize, available: usize },
    #[error("degree bound {requested} exceeds the configured guard {guard}")]
    DegreeBoundExceeded { requested: usize, guard: usize },
    #[error("generator {0} is not a squarefree monomial")]
    NotSquarefree(String),
    #[error("generator {0} is not a monomial")]
    NotMonomial(String),
    #[error("semigroup generators {0:?} are not coprime")]
    NonCoprime(Vec<u64>),
    #[error("{0} is not an element of the semigroup")]
    NotInSemigroup(u64),
    #[error("ideal must be proper")]
    UnitIdeal,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
