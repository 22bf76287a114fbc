use thiserror::Error;

/// Errors produced by field construction, spectrum computation and the
/// verification harness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeP(u64),
    #[error("modulus is reducible over GF({p})")]
    ReducibleModulus { p: u64 },
    #[error("modulus has degree {found}, expected {expected}")]
    DegreeMismatch { expected: u32, found: usize },
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("field order {p}^{n} exceeds the supported range")]
    FieldTooLarge { p: u64, n: u32 },
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("operation requires odd characteristic")]
    CharTwo,
    #[error("operation is undefined at zero")]
    ZeroArgument,
    #[error("quadrant is undefined at 0 and -1")]
    ExcludedPoint,
    #[error("element index {index} out of range for field of order {q}")]
    IndexOutOfRange { index: u64, q: u64 },
    #[error("exponent must be at least 1")]
    InvalidExponent,
    #[error("exponent {given} does not match the rule's exponent {derived}")]
    ExponentMismatch { given: u64, derived: u64 },
    #[error("invalid lookup table: {0}")]
    InvalidTable(String),
    #[error("q = {q} exceeds the budget of {limit}")]
    BudgetExceeded { q: u64, limit: u64 },
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("n = {0} must be odd")]
    EvenN(u32),
    #[error("condition atom `{atom}` is not defined in characteristic {p}")]
    CharMismatch { atom: String, p: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
