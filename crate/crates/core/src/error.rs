//! Crate-wide error type.

use std::fmt;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Extension degree outside the supported 2..=16 range.
    DegreeOutOfRange { m: u32 },
    /// Candidate field polynomial does not have degree m.
    WrongPolyDegree { m: u32, poly: u64 },
    /// Candidate field polynomial has a nontrivial factor.
    ReduciblePoly { poly: u64, factor: u64 },
    /// Polynomial is irreducible but its root is not a generator.
    NonPrimitivePoly {
        poly: u64,
        order: u64,
        expected: u64,
    },
    /// Multiplicative inverse of zero requested.
    ZeroInverse,
    /// Cyclotomic cosets require an odd modulus.
    EvenModulus { n: u64 },
    /// e outside 1..=floor(m/2).
    ExponentOutOfRange { m: u32, e: u32 },
    /// Polynomial division by the zero polynomial.
    ZeroPolyDivisor,
    /// Vector length does not match the code length.
    LengthMismatch { expected: usize, got: usize },
    /// Affine map scale a = 0 is not a permutation.
    ZeroScale,
    /// Enumeration refused: dimension exceeds the configured guard.
    GuardExceeded { dim: usize, guard: usize },
    /// A weight distribution failed a consistency check (bad sum, negative
    /// count, or inexact division in the transform).
    BadDistribution(String),
    /// b·C(k,t) / C(v,t) is not an integer: not a design parameter set.
    NonIntegerLambda { b: String, v: u64, k: u64, t: u64 },
    /// A mathematical precondition of the requested operation fails.
    HypothesisNotMet(String),
    /// Two routes that must agree exactly did not; carries both values.
    CountMismatch {
        what: String,
        expected: String,
        got: String,
    },
    /// A file or descriptor could not be parsed.
    Parse(String),
    /// An internal invariant failed; indicates a bug, not bad input.
    Inconsistency(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DegreeOutOfRange { m } => {
                write!(f, "extension degree m={m} not in 2..=16")
            }
            Error::WrongPolyDegree { m, poly } => {
                write!(f, "polynomial {poly:#x} does not have degree {m}")
            }
            Error::ReduciblePoly { poly, factor } => {
                write!(f, "polynomial {poly:#x} is reducible (factor {factor:#x})")
            }
            Error::NonPrimitivePoly {
                poly,
                order,
                expected,
            } => write!(
                f,
                "polynomial {poly:#x} is irreducible but not primitive: root has order {order} != {expected}"
            ),
            Error::ZeroInverse => write!(f, "inverse of zero field element"),
            Error::EvenModulus { n } => {
                write!(f, "cyclotomic cosets need an odd modulus, got n={n}")
            }
            Error::ExponentOutOfRange { m, e } => {
                write!(f, "e={e} out of range 1..=floor(m/2) for m={m}")
            }
            Error::ZeroPolyDivisor => write!(f, "polynomial division by zero"),
            Error::LengthMismatch { expected, got } => {
                write!(f, "vector length {got} does not match code length {expected}")
            }
            Error::ZeroScale => write!(f, "affine map requires a != 0"),
            Error::GuardExceeded { dim, guard } => write!(
                f,
                "enumeration of 2^{dim} codewords exceeds guard {guard}; raise the guard or use the MacWilliams/closed-form route"
            ),
            Error::BadDistribution(msg) => write!(f, "inconsistent weight distribution: {msg}"),
            Error::NonIntegerLambda { b, v, k, t } => write!(
                f,
                "b={b}, v={v}, k={k}, t={t} is not a design parameter set (lambda not integral)"
            ),
            Error::HypothesisNotMet(msg) => write!(f, "hypothesis not met: {msg}"),
            Error::CountMismatch {
                what,
                expected,
                got,
            } => write!(f, "{what}: expected {expected}, got {got}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::Inconsistency(msg) => write!(f, "internal inconsistency: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

impl Error {
    /// True for errors that indicate an internal bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::Inconsistency(_) | Error::CountMismatch { .. } | Error::BadDistribution(_)
        )
    }
}
