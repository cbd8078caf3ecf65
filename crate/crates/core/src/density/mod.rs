//! Certified lower bounds L(n), densities of the set {n : L(n) > lambda n},
//! the closed-form constants and the window-sum audit.

mod audit;
mod constants;
mod table;

use thiserror::Error;

use crate::primes::PrimeError;

pub use audit::{audit_log_z, ln_big, stirling_check, AuditConfig, AuditReport, StirlingReport};
pub use constants::{closed_form_constants, lambda_bound, lambda_for, ClosedFormConstants};
pub use table::{build_bound_table, density_above, BoundTable, DensityReport};

/// Default eps0, the midpoint of (0, 0.01).
pub const DEFAULT_EPS0: f64 = 0.005;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DensityError {
    #[error("lambda = {0} must exceed 1")]
    BadLambda(f64),
    #[error("invalid range [{lo}, {hi}]")]
    BadRange { lo: u64, hi: u64 },
    #[error("invalid audit configuration: {0}")]
    BadAudit(String),
    #[error("n! + f(n) is not positive at n = {n}")]
    NotPositive { n: u64 },
    #[error(transparent)]
    Prime(#[from] PrimeError),
}
