use thiserror::Error;

/// Errors raised by the library. Verdicts that are legitimate outcomes of a
/// computation (inseparable input, wild ramification, skipped specializations)
/// are reported as data, not through this type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("characteristic {0} is outside the supported range (p < 65536)")]
    UnsupportedCharacteristic(u64),

    #[error("field of order {p}^{k} does not fit in 63 bits")]
    FieldTooLarge { p: u64, k: usize },

    #[error("modulus {modulus} has degree {found}, expected {expected}")]
    ModulusDegree { modulus: String, expected: usize, found: usize },

    #[error("modulus {modulus} is not monic")]
    ModulusNotMonic { modulus: String },

    #[error("modulus {modulus} is reducible: it has the factor {factor}")]
    ReducibleModulus { modulus: String, factor: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("elements belong to different fields ({left} vs {right})")]
    FieldMismatch { left: String, right: String },

    #[error("no field embedding from {from} into {to}")]
    NoEmbedding { from: String, to: String },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("inexact division: nonzero remainder")]
    InexactDivision,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("coefficient degree {degree} exceeds the budget of {budget}")]
    Budget { degree: usize, budget: usize },

    #[error("enumeration of {count} items exceeds the budget of {budget}")]
    EnumerationBudget { count: u128, budget: u128 },

    #[error("leading x-coefficient is not invertible")]
    NonInvertibleLeading,

    #[error("not liftable: {0}")]
    NotLiftable(String),

    #[error("insufficient precision: need {needed}, have {available}")]
    InsufficientPrecision { needed: i64, available: i64 },

    #[error("empty precision window")]
    EmptyPrecision,

    #[error("not rational at this degree bound: coefficient of x^{xdeg} has a term t^{tdeg}")]
    NotRational { xdeg: usize, tdeg: usize },

    #[error("malformed permutation: {0}")]
    Permutation(String),

    #[error("group closure exceeded the bound of {0} elements")]
    GroupOverflow(usize),

    #[error("catalog error: {0}")]
    Catalog(String),

    #[error("catalog insufficient or evidence inconsistent: {0}")]
    NoSurvivors(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
