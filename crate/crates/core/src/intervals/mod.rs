//! Interval families between hit points, their good/not-good split, and the
//! exact checkers built on them.

mod family;
mod good;
mod lemma4;
mod lemma7;

use thiserror::Error;

use crate::primes::PrimeError;

pub use family::{removal_count, Interval, IntervalFamily};
pub use good::{check_cor6, classify_good, Classification, ClassifiedInterval, Cor6Report, GoodnessParams, GUARD};
pub use lemma4::{
    lemma4_configurations, lemma4_exact_check, sample_configurations, BoundVerdict, DivClause, Lemma4Input,
    Lemma4Report,
};
pub use lemma7::{
    lemma7_instances, lemma7_margin, KSelection, Lemma7Checks, Lemma7Input, Lemma7Trace, DEFAULT_T_MIN, LEMMA7_NOTE,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IntervalError {
    #[error("duplicate point {0}")]
    DuplicatePoints(u64),
    #[error("need at least two points, got {0}")]
    TooFewPoints(usize),
    #[error("points must be positive")]
    NonPositivePoint,
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error("assumption violated: {0}")]
    AssumptionViolated(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error(transparent)]
    Prime(#[from] PrimeError),
}
