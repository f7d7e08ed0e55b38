use alloc::string::String;
use core::fmt;

/// Failures surfaced by the algebra kernels.
///
/// `Input` covers malformed or out-of-range arguments; the remaining variants
/// name the mathematical precondition that failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    Input(String),
    NotFormalIsomorphism,
    PetriNotInjective,
    LinearPartMismatch,
    InvalidComplex(String),
    /// A containment or consistency check that should hold did not.
    Certificate(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    /// Whether the failure is attributable to caller input rather than to a
    /// failed mathematical check.
    pub fn is_input(&self) -> bool {
        !matches!(self, Error::Certificate(_))
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Input(m) => write!(f, "input error: {m}"),
            Error::NotFormalIsomorphism => f.write_str("not a formal isomorphism"),
            Error::PetriNotInjective => f.write_str("Petri map not injective"),
            Error::LinearPartMismatch => f.write_str("linear part mismatch"),
            Error::InvalidComplex(m) => write!(f, "invalid complex: {m}"),
            Error::Certificate(m) => write!(f, "certificate failed: {m}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T, E = Error> = core::result::Result<T, E>;
