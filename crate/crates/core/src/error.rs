use alloc::string::String;

use crate::weight::Weight;

/// Every failure the core can report.
#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),
    #[error("Z2-grading violated: {alpha} + {beta} = {sum}")]
    GradingInconsistent { alpha: Weight, beta: Weight, sum: Weight },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("weight {0} is not dominant for the requested chamber")]
    NotDominant(Weight),
    #[error("weight {0} is not integral for the requested subsystem")]
    NotIntegral(Weight),
    #[error("exact division left a nonzero remainder")]
    NotDivisible,
    #[error("character is not Weyl invariant: {0} is a top weight but not dominant")]
    NotInvariant(Weight),
    #[error("parameter {0} is singular (orthogonal to a root)")]
    Singular(Weight),
    #[error("parameter {0} is not positive on the compact positive roots")]
    NotCompatible(Weight),
    #[error("character identity violated: {0}")]
    IdentityViolation(String),
    #[error("numerically ambiguous rank: singular value {sigma:e} inside the ambiguity band")]
    IllConditioned { sigma: f64 },
    #[error("unknown model or root system {0:?}")]
    UnknownModel(String),
    #[error("model invariant violated: {0}")]
    InvariantViolation(String),
    #[error("xi is not fixed by K (residual {0:e})")]
    NotKFixed(f64),
    #[error("xi must be nonzero")]
    ZeroXi,
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
