use thiserror::Error;

/// Errors produced by the construction, search and verification routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),
    #[error("polynomial {0:?} is reducible over GF({1})")]
    ReduciblePolynomial(Vec<u32>, u32),
    #[error("polynomial {0:?} is irreducible but x is not primitive")]
    NonPrimitivePolynomial(Vec<u32>),
    #[error("field of order {0} exceeds the table cap of 2^24")]
    FieldTooLarge(u64),
    #[error("element does not belong to this field")]
    ForeignElement,
    #[error("{0} does not divide {1}")]
    NotADivisor(u32, u32),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("unsupported model: {0}")]
    UnsupportedModel(String),
    #[error("points must be distinct")]
    DegeneratePoints,
    #[error("unknown point {0}")]
    UnknownPoint(u32),
    #[error("unknown line {0}")]
    UnknownLine(u32),
    #[error("point set is not a linear subspace")]
    NotAFlat,
    #[error("basis images are linearly dependent")]
    DependentBasis,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("arithmetic overflow")]
    Overflow,
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("unsupported dataset q = {0}")]
    UnsupportedDataset(u32),
    #[error("malformed dataset: {0}")]
    MalformedDataset(String),
    #[error("line {0} is not colored")]
    UncoloredLine(u32),
    #[error("missing input: {0}")]
    MissingInput(String),
    #[error("certificate error: {0}")]
    Certificate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
