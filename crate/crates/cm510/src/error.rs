//! Error type shared across the crate.
//!
//! Arithmetic operators on series and matrices panic on precision or shape
//! mismatch (those are programming errors); everything reachable from user
//! input returns `Error`.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Inversion was requested for a series whose constant term is zero.
    #[error("series is not a unit: constant term is zero")]
    NotAUnit,

    /// Exact division by t was requested for a series with nonzero constant term.
    #[error("series is not divisible by t: constant term is {0}")]
    NotDivisibleByT(String),

    /// A rim (k-subset of Z/n) failed validation.
    #[error("invalid rim: {0}")]
    InvalidRim(String),

    /// Two objects that must live over the same quiver/precision do not.
    #[error("incompatible operands: {0}")]
    Incompatible(String),

    /// A coefficient tuple failed validation (length, precision, zero-sum).
    #[error("invalid coefficient tuple: {0}")]
    InvalidTuple(String),

    /// An isomorphism question was asked about a decomposable module.
    #[error("module is decomposable; isomorphism criteria apply to indecomposable modules only")]
    Decomposable,

    /// A witness was requested for a pair the criterion rejects.
    #[error("modules are not isomorphic ({0}); no witness exists")]
    NotIsomorphic(String),

    /// A family parameter hit one of the excluded values.
    #[error("family parameter excluded: {0}")]
    ParameterExcluded(String),

    /// A claimed isomorphism witness failed verification.
    #[error("witness verification failed: {0}")]
    WitnessInvalid(String),

    /// Input text (scalar, series, tuple file, rim literal) failed to parse.
    #[error("parse error: {0}")]
    Parse(String),

    /// I/O failure while reading or writing a file.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    /// An internal consistency check failed; indicates a bug, not bad input.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
