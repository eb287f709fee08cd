//! Error type shared by the whole crate.
//!
//! Structural misuse (mixing generator families, combining series of
//! different orders, comparing partitions of different ground sets) panics,
//! since it is a programming error. Data-dependent failures (non-invertible
//! constant terms, moment orders that are too small, asymmetric inputs)
//! surface as [`Error`] values.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rational literal `{0}`")]
    InvalidRational(String),

    #[error("coefficient index {index} exceeds series order {order}")]
    CoeffOutOfRange { index: usize, order: usize },

    #[error("constant term is not an invertible scalar")]
    NonUnitConstant,

    #[error("linear coefficient is not an invertible scalar")]
    NonUnitLinear,

    #[error("composition requires an inner series with zero constant term")]
    NonzeroConstantTerm,

    #[error("moment of order {needed} requested but umbra has order {order}")]
    MomentOrderExceeded { needed: usize, order: usize },

    #[error("moment order {order} too small, need at least {needed}")]
    OrderTooSmall { needed: usize, order: usize },

    #[error("{vars} variables cannot faithfully carry a degree-{degree} symmetric function")]
    TooFewVariables { vars: usize, degree: usize },

    #[error("polynomial is not symmetric in its variables")]
    NotSymmetric,

    #[error("identification against the h-basis produced an inconsistent system")]
    InconsistentIdentification,

    #[error("parking sequence must be nonempty")]
    EmptySequence,

    #[error("set partitions live on different ground sets")]
    GroundMismatch,
}

pub type Result<T> = std::result::Result<T, Error>;
