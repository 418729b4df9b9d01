use std::fmt;

use crate::linalg::Field;
use crate::report::Violation;

/// Error taxonomy for the whole library. Every fallible public operation
/// returns one of these; the CLI maps each class onto a distinct exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Structurally bad input: wrong matrix shapes, ragged rows, indices out
    /// of range. Distinct from an axiom failure on well-shaped data.
    Malformed(String),
    /// Two operands live over different fields.
    FieldMismatch { left: Field, right: Field },
    /// Well-shaped structure constants that violate a named identity.
    Axiom {
        object: String,
        violation: Violation,
    },
    /// A declared precondition does not hold (uncertified morphism, mismatched
    /// domains, zero iteration count, and so on).
    Precondition(String),
    /// The input is outside the computable fragment this library supports
    /// (non-cocommutative product factors, non-conilpotent lift domains,
    /// dimension guards, missing roots of unity).
    Unsupported(String),
    /// Two independent computations of the same value disagreed, or a
    /// theorem-guaranteed closure property failed. Always an implementation
    /// bug, never a property of the input.
    Inconsistency(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Malformed(msg) => write!(f, "malformed input: {msg}"),
            Error::FieldMismatch { left, right } => {
                write!(f, "field mismatch: {left} vs {right}")
            }
            Error::Axiom { object, violation } => {
                write!(f, "axiom violation in {object}: {violation}")
            }
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
            Error::Unsupported(msg) => write!(f, "unsupported fragment: {msg}"),
            Error::Inconsistency(msg) => write!(f, "internal consistency failure: {msg}"),
        }
    }
}

impl std::error::Error for Error {}
