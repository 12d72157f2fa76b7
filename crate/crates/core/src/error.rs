use thiserror::Error;

/// Errors raised by field, polynomial and collision operations.
///
/// Mathematically valid "no answer" outcomes (an undefined quotient, a
/// polynomial without the requested shape) are reported as `Ok(None)` by the
/// individual operations, never through this type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u64),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("no irreducible modulus of degree {d} found over F_{p}")]
    NoModulusFound { p: u64, d: u32 },
    #[error("field F_{p}^{d} is too large for this implementation")]
    FieldTooLarge { p: u64, d: u32 },
    #[error("element encoding {value} out of range for a field of size {q}")]
    ElementOutOfRange { value: u64, q: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields")]
    MixedFields,
    #[error("quadratic has zero leading coefficient")]
    DegenerateLeadingCoefficient,
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("base of a Taylor expansion must have positive degree")]
    ConstantBase,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial is not original (nonzero constant term or degree 0)")]
    NotOriginal,
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("h equals x^r; the Frobenius pair degenerates to a single decomposition")]
    HEqualsXr,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("no admissible m exists for r = {0} (need r >= 5)")]
    NoValidM(u64),
    #[error("{value} is not a power of {base}")]
    NotAPower { value: u64, base: u64 },
    #[error("closed form does not divide exactly: {0}")]
    NonIntegerResult(String),
    #[error("census too large: {0}")]
    TooLarge(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
