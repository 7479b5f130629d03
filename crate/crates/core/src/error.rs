use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// A syntax error in the polynomial input language.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input where the problem was detected.
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at position {}: {}", self.position, self.message)
    }
}

impl core::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("parse error {0}")]
    Parse(#[from] ParseError),
    #[error("unknown variable `{name}` at position {position}")]
    UnknownVariable { name: String, position: usize },
    #[error("exponent overflow at position {position}")]
    ExponentOverflow { position: usize },
    #[error("invalid place `{0}` (expected a prime, `generic` or `arch`)")]
    InvalidPlace(String),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("prime factor does not fit in 64 bits")]
    PrimeTooLarge,
    #[error("zero is not allowed here")]
    ZeroValue,
    #[error("the archimedean place has no valuation")]
    ArchimedeanPlace,
    #[error("operation needs a non-zero polynomial")]
    ZeroPolynomial,
    #[error("operation needs a polynomial with at least two terms")]
    Monomial,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operation needs a univariate polynomial, got dimension {0}")]
    NotUnivariate(usize),
    #[error("exponent vector is not a vertex of the Newton polytope")]
    NotAVertex,
    #[error("direction vector must be non-zero")]
    ZeroDirection,
    #[error("ideal presentation needs at least one generator")]
    NoGenerators,
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("invalid variable name `{0}`")]
    InvalidVariable(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
