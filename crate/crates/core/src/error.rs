//! Crate-wide error type.

use crate::exactalg::Poly;
use std::fmt;

/// Errors shared across the exact-algebra and operator layers.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// A quotient-ring inversion met a zero divisor. The payload is a
    /// proper monic factor of the current modulus; the caller restarts
    /// the computation on the factor and its cofactor.
    SplitRequired { factor: Poly },
    /// A pole of order greater than 2 was met where Fuchsian data was
    /// expected.
    PoleTooHigh { order: i64 },
    /// The numeric root finder did not reach the requested tolerance
    /// within its iteration budget.
    NonConvergence,
    /// An exact polynomial division left a remainder where the theory
    /// promises exactness (an implementation bug, not a data condition).
    InexactDivision,
    DivisionByZero,
    /// The Wronskian equation Wr(y, ỹ) = W has no polynomial solution:
    /// the pair is infertile in the requested direction.
    Infertile { direction: usize },
    /// A pair failed the genericity test required by an operation.
    NotGeneric { certificate: String },
    /// A super-fertile reduction failed: a required reproduction has no
    /// solution, so the input pair was not super-fertile.
    NotSuperFertile { detail: String },
    /// A T-candidate failed a divisibility requirement.
    NotPolynomial { detail: String },
    /// a₋₂ at a pole class is not m(m+1) for a half-integer m > 0.
    NotTriangularNumber { class_modulus: Poly },
    /// Darboux verification: the supplied function is not annihilated by
    /// the operator.
    NotInKernel,
    /// The p-recursion for Δ met a zero denominator (malformed exponent).
    DivisionByZeroInRecursion,
    /// An exponent landed in the forbidden set −½+(k/2+1)ℤ₊ during
    /// reduction: the input operator is not λ-monodromy free.
    ObstructionViolated { detail: String },
    /// Operator→pair recovery failed; the payload explains which stage
    /// gave up (usually: no polynomial kernel within the degree bound).
    RecoveryFailed { detail: String },
    NotXk,
    NotLambdaMF { detail: String },
    /// A bounded search (degree bound, iteration budget) was exhausted.
    InternalLimit { detail: String },
    /// Malformed textual input.
    Syntax { position: usize, detail: String },
    /// A parsed expression is not a polynomial (negative exponent or a
    /// non-constant denominator in a polynomial context).
    NonPolynomial { detail: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::SplitRequired { factor } => {
                write!(f, "quotient-ring zero divisor; split modulus at factor {factor}")
            }
            Error::PoleTooHigh { order } => write!(f, "pole of order {order} exceeds 2"),
            Error::NonConvergence => write!(f, "root iteration did not converge"),
            Error::InexactDivision => write!(f, "polynomial division was not exact"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::Infertile { direction } => {
                write!(f, "pair is infertile in direction {direction}")
            }
            Error::NotGeneric { certificate } => write!(f, "pair not generic: {certificate}"),
            Error::NotSuperFertile { detail } => write!(f, "not super-fertile: {detail}"),
            Error::NotPolynomial { detail } => write!(f, "not a polynomial: {detail}"),
            Error::NotTriangularNumber { class_modulus } => {
                write!(f, "a_-2 is not m(m+1) for half-integer m at class {class_modulus}")
            }
            Error::NotInKernel => write!(f, "function is not in the operator kernel"),
            Error::DivisionByZeroInRecursion => {
                write!(f, "zero denominator in the Δ recursion")
            }
            Error::ObstructionViolated { detail } => {
                write!(f, "exponent obstruction violated: {detail}")
            }
            Error::RecoveryFailed { detail } => write!(f, "recovery failed: {detail}"),
            Error::NotXk => write!(f, "P is not of the form x^k"),
            Error::NotLambdaMF { detail } => {
                write!(f, "operator is not λ-monodromy free: {detail}")
            }
            Error::InternalLimit { detail } => write!(f, "internal limit reached: {detail}"),
            Error::Syntax { position, detail } => {
                write!(f, "syntax error at position {position}: {detail}")
            }
            Error::NonPolynomial { detail } => write!(f, "non-polynomial input: {detail}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
