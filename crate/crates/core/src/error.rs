//! Error type shared by the arithmetic and verification layers.

use core::fmt;

use crate::poly::VarId;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An evaluation point does not assign a variable occurring in the
    /// expression.
    MissingAssignment(VarId),
    /// A variable with negative (Laurent) exponents was evaluated at, or
    /// substituted by, zero.
    ZeroBaseNegativeExponent(VarId),
    /// A substitution or evaluation made a denominator vanish.
    DenominatorVanished,
    /// Binary series operation on series of different truncation orders.
    OrderMismatch { left: usize, right: usize },
    /// Binary series operation on series in different formal variables.
    FormalVarMismatch,
    /// Logarithmic derivative of a series whose constant term is not 1.
    NonUnitConstantTerm,
    /// Formal differentiation with respect to a non-formal variable.
    NotFormalVariable(VarId),
    /// Cayley-Hamilton partition index outside 0..=m (or 0..=n).
    IndexOutOfRange { index: i64, bound: i64 },
    /// Random-evaluation mode exhausted its resample budget without
    /// finding a point where every denominator is nonzero.
    ResampleCapExceeded,
    /// Requested identity degree exceeds the configured series order.
    OrderExceeded { kmax: usize, order: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::MissingAssignment(v) => write!(f, "no assignment for variable {v}"),
            Error::ZeroBaseNegativeExponent(v) => {
                write!(f, "variable {v} has negative exponents but was set to 0")
            }
            Error::DenominatorVanished => write!(f, "denominator vanished"),
            Error::OrderMismatch { left, right } => {
                write!(f, "series order mismatch: {left} vs {right}")
            }
            Error::FormalVarMismatch => write!(f, "series formal variable mismatch"),
            Error::NonUnitConstantTerm => {
                write!(f, "series constant term is not 1")
            }
            Error::NotFormalVariable(v) => write!(f, "{v} is not a formal variable"),
            Error::IndexOutOfRange { index, bound } => {
                write!(f, "index {index} out of range 0..={bound}")
            }
            Error::ResampleCapExceeded => {
                write!(f, "resample cap exceeded while avoiding denominator zeros")
            }
            Error::OrderExceeded { kmax, order } => {
                write!(f, "kmax {kmax} exceeds configured series order {order}")
            }
        }
    }
}

impl core::error::Error for Error {}
