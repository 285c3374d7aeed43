use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("algebra is not commutative (basis elements {0} and {1})")]
    NotCommutative(usize, usize),
    #[error("splitting needs a larger field than Q(zeta_{conductor}): found {found} of {needed} eigenvalues")]
    FieldExtensionNeeded {
        conductor: u32,
        found: usize,
        needed: usize,
    },
    #[error("{what} of size {size} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("invalid group specification: {0}")]
    InvalidGroup(String),
    #[error("irreducible representations are not available for {0}")]
    IrreduciblesUnavailable(String),
    #[error("Molien series does not factor as a product of 1/(1-q^d): not a reflection representation")]
    NotFactorizable,
    #[error("zero polynomial has no b-invariant")]
    ZeroPolynomial,
    #[error("stabilizer of order {stabilizer} is not generated by its {generated}-element reflection subgroup")]
    NotSteinberg { stabilizer: usize, generated: usize },
    #[error("factor of degree {degree} exceeds the degree cap {cap}")]
    DegreeCapExceeded { degree: u32, cap: u32 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("central idempotent acts neither as 0 nor 1 on the baby Verma of {0}")]
    AssignmentAmbiguous(String),
    #[error("head of the baby Verma of {0} is not simple")]
    NotSimpleHead(String),
    #[error("several representations share the minimal b-invariant: {0:?}")]
    TieDetected(Vec<String>),
    #[error("character has a negative exponent {0}")]
    NegativeExponentPresent(i64),
    #[error("no e_i factorization available")]
    MissingEis,
    #[error("exterior elements live on different sides")]
    SideMismatch,
    #[error("sequence is not regular: H_{degree} has dimension {dim}")]
    NotRegularDetected { degree: usize, dim: usize },
    #[error("unknown representation {0}")]
    UnknownRep(String),
}

pub type Result<T> = std::result::Result<T, Error>;
