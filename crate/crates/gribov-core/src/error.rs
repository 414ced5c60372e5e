//! Error type shared by all modules.

use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::block::SpecViolation;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Truncation size 0 was requested.
    InvalidTruncation,
    /// A scalar argument is outside its admissible range.
    InvalidParameter(&'static str),
    /// An entry index is out of range or lies on the block diagonal.
    InvalidIndex { i: usize, j: usize },
    /// Two operands do not have compatible dimensions.
    DimensionMismatch(&'static str),
    /// An input collection that must be nonempty was empty.
    EmptyInput(&'static str),
    /// A block spec failed validation; the violations say what and why.
    InvalidSpec(Vec<SpecViolation>),
    /// The requested analysis is not defined for this configuration
    /// (e.g. mixed-sign diagonal couplings in the enclosure geometry).
    UnsupportedConfiguration(&'static str),
    /// The QR iteration hit its sweep limit. `deflated` carries the
    /// eigenvalues isolated before the limit was reached.
    IterationLimit { sweeps: usize, deflated: Vec<Complex64> },
    /// Invariant subspaces of distinct eigenvalue clusters overlap at
    /// working precision, so no cluster-wise basis can be extracted.
    IllSeparatedClusters,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidTruncation => write!(f, "truncation size must be at least 1"),
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
            Error::InvalidIndex { i, j } => {
                write!(f, "invalid off-diagonal index ({i}, {j})")
            }
            Error::DimensionMismatch(what) => write!(f, "dimension mismatch: {what}"),
            Error::EmptyInput(what) => write!(f, "empty input: {what}"),
            Error::InvalidSpec(violations) => {
                write!(f, "invalid block spec ({} violation(s))", violations.len())?;
                for v in violations {
                    write!(f, "; {}: {}", v.field, v.reason)?;
                }
                Ok(())
            }
            Error::UnsupportedConfiguration(what) => {
                write!(f, "unsupported configuration: {what}")
            }
            Error::IterationLimit { sweeps, deflated } => write!(
                f,
                "eigenvalue iteration hit the sweep limit ({sweeps} sweeps, {} deflated)",
                deflated.len()
            ),
            Error::IllSeparatedClusters => {
                write!(f, "eigenvalue clusters are not numerically separable")
            }
        }
    }
}

impl core::error::Error for Error {}
