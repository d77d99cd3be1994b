use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("set must be non-empty")]
    EmptySet,

    #[error("residue {value} is outside Z_{modulus}")]
    ResidueOutOfRange { value: u64, modulus: u64 },

    #[error("modulus mismatch: expected {expected}, found {found}")]
    ModulusMismatch { expected: u64, found: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("no primitive polynomial of degree {k} over F_{p}")]
    NoPrimitivePolynomial { p: u64, k: u32 },

    #[error("infeasible parameters: {0}")]
    Infeasible(String),

    #[error("arithmetic overflow computing {0}")]
    Overflow(&'static str),

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("decomposition of {z} failed: {reason}")]
    Counterexample { z: u64, reason: String },

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
