use thiserror::Error;

/// Errors raised by field, orbit, transform and code operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("field of size {p}^{m} exceeds the size cap 2^{cap_bits}")]
    SizeCapExceeded { p: u64, m: u32, cap_bits: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("gcd(q = {q}, {modulus}) != 1; only the semisimple case is supported")]
    SemisimplicityViolation { q: u64, modulus: u64 },
    #[error("no element of order {order} in a field of size {size}")]
    OrderUnavailable { order: u64, size: u64 },
    #[error("{a} and {b} are not coprime")]
    NotCoprime { a: u64, b: u64 },
    #[error("{value} is not a unit modulo {modulus}")]
    NotAUnit { value: u64, modulus: u64 },
    #[error("set is not closed under multiplication by q")]
    NotOrbitClosed,
    #[error("every hyperplane along axis {0} is zero")]
    AllZeroAxis(u8),
    #[error("search budget exceeded: {needed} exceeds cap {cap}")]
    BudgetExceeded { needed: u64, cap: u64 },
    #[error("the code is zero (its defining set is all of I)")]
    ZeroCode,
    #[error("designed distance {delta} outside 2..={max}")]
    DesignedDistanceOutOfRange { delta: usize, max: usize },
    #[error("strong apparent distance is 1; the construction needs sd* > 1")]
    TrivialDistance,
    #[error("expected length {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("polynomial is not a codeword")]
    NotACodeword,
    #[error("operation requires a cyclic code (r1 = 1)")]
    NotCyclic,
    #[error("invalid BCH parameters: {0}")]
    InvalidBchSpec(String),
    #[error("index ({a},{b}) out of range for moduli ({r1},{r2})")]
    IndexOutOfRange { a: usize, b: usize, r1: usize, r2: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("inconsistent results: {0}")]
    Inconsistent(String),
}

impl Error {
    /// Stable variant name, used on the CLI diagnostic stream.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NonPrimeCharacteristic(_) => "NonPrimeCharacteristic",
            Error::SizeCapExceeded { .. } => "SizeCapExceeded",
            Error::DivisionByZero => "DivisionByZero",
            Error::FieldMismatch => "FieldMismatch",
            Error::SemisimplicityViolation { .. } => "SemisimplicityViolation",
            Error::OrderUnavailable { .. } => "OrderUnavailable",
            Error::NotCoprime { .. } => "NotCoprime",
            Error::NotAUnit { .. } => "NotAUnit",
            Error::NotOrbitClosed => "NotOrbitClosed",
            Error::AllZeroAxis(_) => "AllZeroAxis",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::ZeroCode => "ZeroCode",
            Error::DesignedDistanceOutOfRange { .. } => "DesignedDistanceOutOfRange",
            Error::TrivialDistance => "TrivialDistance",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::NotACodeword => "NotACodeword",
            Error::NotCyclic => "NotCyclic",
            Error::InvalidBchSpec(_) => "InvalidBchSpec",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::Parse(_) => "ParseError",
            Error::Inconsistent(_) => "Inconsistent",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
