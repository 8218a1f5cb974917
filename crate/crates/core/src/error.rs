use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("unsupported field size {p}^{m}: must satisfy m >= 1 and p^m <= 2^64")]
    FieldTooLarge { p: u64, m: u32 },
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("element index {index} out of range for a field of order {order}")]
    ElementOutOfRange { index: u128, order: u128 },
    #[error("genus {0} out of range")]
    GenusOutOfRange(usize),
    #[error("invalid Ekedahl-Oort sequence {0:?}")]
    InvalidEoSequence(Vec<u32>),
    #[error("invalid Dieudonne module: {0}")]
    InvalidModule(String),
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("Cartier image of x^{exponent} dx leaves the span of the basis")]
    CartierClosure { exponent: i64 },
    #[error("invalid census specification: {0}")]
    InvalidSpec(String),
    #[error("infeasible target (f={f}, a={a}) for genus {g}")]
    InfeasibleTarget { g: usize, f: usize, a: usize },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
