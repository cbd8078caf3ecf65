//! Prime generation, primality certification and prime-gap statistics.

mod gaps;
mod primality;
mod sieve;

use thiserror::Error;

pub use gaps::{heath_brown_sum, pi, sum_primes, GapSquareSum, GapTable, PrimeSum, GAP_SQUARE_EXPONENT};
pub use primality::{is_prime, next_prime, primality_big, Certainty};
pub use sieve::{primes_in, primes_up_to, PrimeRange, SegmentedSieve, DEFAULT_MAX_SEGMENTS, DEFAULT_SEGMENT_LEN};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PrimeError {
    #[error("invalid prime range [{lo}, {hi}]; need 2 <= lo <= hi")]
    BadRange { lo: u64, hi: u64 },
    #[error("range span {span} exceeds the segment budget {budget}")]
    RangeTooLarge { span: u64, budget: u64 },
    #[error("prime table covers [{lo}, {hi}] but [{want_lo}, {want_hi}] was requested")]
    OracleGap {
        lo: u64,
        hi: u64,
        want_lo: u64,
        want_hi: u64,
    },
}

/// A sorted prime table answering counting queries over the range it covers.
#[derive(Clone, Debug)]
pub struct PrimeTable {
    lo: u64,
    hi: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    /// Table of all primes in [lo, hi] (lo may be 0 or 1).
    pub fn new(lo: u64, hi: u64) -> Result<Self, PrimeError> {
        let primes = if hi < 2 {
            Vec::new()
        } else {
            primes_in(lo.max(2), hi)?.primes
        };
        Ok(PrimeTable { lo, hi, primes })
    }

    pub fn up_to(hi: u64) -> Self {
        Self::new(0, hi).expect("range within default budget")
    }

    pub fn range(&self) -> (u64, u64) {
        (self.lo, self.hi)
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn covers(&self, a: u64, b: u64) -> bool {
        self.lo <= a && b <= self.hi
    }

    /// Number of primes in the closed range [a, b].
    pub fn count_in(&self, a: u64, b: u64) -> Result<u64, PrimeError> {
        if a > b {
            return Ok(0);
        }
        if !self.covers(a, b) {
            return Err(PrimeError::OracleGap {
                lo: self.lo,
                hi: self.hi,
                want_lo: a,
                want_hi: b,
            });
        }
        let start = self.primes.partition_point(|&p| p < a);
        let end = self.primes.partition_point(|&p| p <= b);
        Ok((end - start) as u64)
    }

    pub fn contains(&self, n: u64) -> bool {
        self.primes.binary_search(&n).is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_counts() {
        let t = PrimeTable::up_to(100);
        assert_eq!(t.count_in(0, 100), Ok(25));
        assert_eq!(t.count_in(90, 97), Ok(1));
        assert_eq!(t.count_in(25, 28), Ok(0));
        assert_eq!(t.count_in(5, 4), Ok(0));
        assert!(matches!(t.count_in(50, 101), Err(PrimeError::OracleGap { .. })));
        let u = PrimeTable::new(50, 60).unwrap();
        assert_eq!(u.primes(), &[53, 59]);
        assert!(u.count_in(40, 55).is_err());
    }
}
