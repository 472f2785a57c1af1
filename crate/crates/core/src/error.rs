use thiserror::Error;

use crate::hull::InnerProduct;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong while building or certifying a code.
///
/// The variants fall into three families that callers (the CLI in
/// particular) treat differently: bad input ([`Error::is_precondition`]),
/// a certificate that does not hold ([`Error::is_certification`]) and an
/// oracle that would need more work than it was allowed.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("field order {p}^{m} exceeds the supported maximum of {max} elements")]
    FieldTooLarge { p: u64, m: u32, max: u64 },

    #[error("modulus {modulus:?} is not a primitive polynomial of degree {m} over GF({p})")]
    NotPrimitive { p: u32, m: u32, modulus: Vec<u32> },

    #[error("element index {index} is out of range for a field of order {order}")]
    ElementOutOfRange { index: u32, order: u32 },

    #[error("inversion of zero")]
    ZeroInverse,

    #[error("GF({p}^{m}) is not a quadratic extension (odd extension degree)")]
    NotQuadratic { p: u32, m: u32 },

    #[error("element {0} does not lie in the required subfield")]
    NotInSubfield(u32),

    #[error("evaluation point {0} is repeated")]
    RepeatedPoint(u32),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error(
        "{kind} hull methods disagree: gram (generator) = {gram}, gram (parity check) = {gram_parity}, \
         intersection = {intersection}"
    )]
    HullMethodsDisagree { kind: InnerProduct, gram: usize, gram_parity: usize, intersection: usize },

    #[error("{kind} hull dimension is {actual}, expected {expected}")]
    HullMismatch { kind: InnerProduct, expected: usize, actual: usize },

    #[error("certificate does not match the code: {0}")]
    CertificateMismatch(String),

    #[error("{what} needs {needed} steps, budget is {budget}")]
    BudgetExceeded { what: &'static str, needed: u128, budget: u128 },

    #[error("invariant breach: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// Input that never described a valid object.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::NotPrime(_)
                | Error::NotPrimePower(_)
                | Error::FieldTooLarge { .. }
                | Error::NotPrimitive { .. }
                | Error::ElementOutOfRange { .. }
                | Error::ZeroInverse
                | Error::NotQuadratic { .. }
                | Error::NotInSubfield(_)
                | Error::RepeatedPoint(_)
                | Error::Shape(_)
                | Error::Precondition(_)
        )
    }

    /// A hull or parameter claim that failed to verify.
    pub fn is_certification(&self) -> bool {
        matches!(
            self,
            Error::HullMethodsDisagree { .. }
                | Error::HullMismatch { .. }
                | Error::CertificateMismatch(_)
                | Error::Invariant(_)
        )
    }
}
