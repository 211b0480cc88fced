use thiserror::Error;

use crate::netmodel::Violation;
use crate::rings::Ring;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed ring spec `{spec}`: {reason}")]
    RingSpec { spec: String, reason: String },

    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(u64),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("matrix ring size must be at least 1")]
    ZeroMatrixSize,

    #[error("Jacobson algebra base must be a field (GF<p> or Q), got {0}")]
    JacobsonBase(Ring),

    #[error("ring mismatch: expected {expected}, found {found}")]
    RingMismatch { expected: Ring, found: Ring },

    #[error("rational arithmetic overflow")]
    Overflow,

    #[error("division by zero")]
    DivisionByZero,

    #[error("infinite ring {0}")]
    InfiniteRing(Ring),

    #[error("ring {ring} has {required} elements, over the cap of {cap}")]
    CapExceeded {
        ring: Ring,
        required: u128,
        cap: u128,
    },

    #[error("{0} is not a field")]
    NotAField(Ring),

    #[error("element has no inverse")]
    NotInvertible,

    #[error("invalid literal for {ring}: {reason}")]
    Literal { ring: Ring, reason: String },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid network: {}", join_violations(.0))]
    InvalidNetwork(Vec<Violation>),

    #[error("assignment does not fit the network: {0}")]
    Assignment(String),

    #[error("file format error: {0}")]
    Format(String),

    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogEntry(String),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
