//! Wilson-type sieve: for each prime p, the set N_p of n < p with
//! p | n! + f(n), with exact orders where affordable.

mod ratio;
mod run;
mod scan;
mod store;
mod symmetry;

use thiserror::Error;

use crate::arith::ArithError;
use crate::primes::PrimeError;

pub use ratio::{np_ratio_report, NpRatioReport, NpRatioRow};
pub use run::{run_sieve, OrdMode, SieveConfig, AUTO_ORD_LIMIT};
pub use scan::{is_hit, lift_hits, scan_plain, scan_prime, Window};
pub use store::{HitRecord, HitSink, HitStore, ScanStats};
pub use symmetry::{check_companion, companion, CompanionCheck};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SieveError {
    #[error("duplicate hit p={p} n={n}")]
    DuplicateHit { p: u64, n: u64 },
    #[error("csv: {0}")]
    Csv(String),
    #[error("io: {0}")]
    Io(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("interval [{lo}, {hi}) is empty")]
    IntervalTooShort { lo: u64, hi: u64 },
    #[error("arithmetic failure at p={p}: {source}")]
    Arith { p: u64, source: ArithError },
    #[error(transparent)]
    Value(#[from] ArithError),
    #[error(transparent)]
    Prime(#[from] PrimeError),
}

impl From<csv::Error> for SieveError {
    fn from(e: csv::Error) -> Self {
        SieveError::Csv(e.to_string())
    }
}

impl From<std::io::Error> for SieveError {
    fn from(e: std::io::Error) -> Self {
        SieveError::Io(e.to_string())
    }
}
