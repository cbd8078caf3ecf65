//! Segmented sieve of Eratosthenes.
//!
//! Segments are sieved independently (in parallel) and concatenated in
//! ascending order, so the output does not depend on scheduling.

use num_integer::Roots;
use rayon::prelude::*;
use serde::Serialize;

use super::primality::simple_sieve;
use super::PrimeError;

pub const DEFAULT_SEGMENT_LEN: u64 = 1 << 20;
pub const DEFAULT_MAX_SEGMENTS: u64 = 1 << 16;

/// Ascending primes in the closed range [lo, hi].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeRange {
    pub lo: u64,
    pub hi: u64,
    pub primes: Vec<u64>,
}

#[derive(Clone, Copy, Debug)]
pub struct SegmentedSieve {
    segment_len: u64,
    max_segments: u64,
}

impl Default for SegmentedSieve {
    fn default() -> Self {
        SegmentedSieve {
            segment_len: DEFAULT_SEGMENT_LEN,
            max_segments: DEFAULT_MAX_SEGMENTS,
        }
    }
}

impl SegmentedSieve {
    pub fn new(segment_len: u64, max_segments: u64) -> Self {
        assert!(segment_len > 0 && max_segments > 0);
        SegmentedSieve {
            segment_len,
            max_segments,
        }
    }

    pub fn primes_in(&self, lo: u64, hi: u64) -> Result<PrimeRange, PrimeError> {
        if lo < 2 || lo > hi {
            return Err(PrimeError::BadRange { lo, hi });
        }
        let span = hi - lo;
        let budget = self.segment_len.saturating_mul(self.max_segments);
        if span >= budget {
            return Err(PrimeError::RangeTooLarge { span, budget });
        }
        let root = hi.sqrt();
        let base = if root < 1 << 24 {
            simple_sieve(root)
        } else {
            self.primes_in(2, root)?.primes
        };
        let n_segments = span / self.segment_len + 1;
        let segments: Vec<Vec<u64>> = (0..n_segments)
            .into_par_iter()
            .map(|i| {
                let s_lo = lo + i * self.segment_len;
                let s_hi = s_lo.saturating_add(self.segment_len - 1).min(hi);
                sieve_segment(s_lo, s_hi, &base)
            })
            .collect();
        Ok(PrimeRange {
            lo,
            hi,
            primes: segments.concat(),
        })
    }
}

/// Primes in [lo, hi] given every prime up to sqrt(hi).
fn sieve_segment(lo: u64, hi: u64, base: &[u64]) -> Vec<u64> {
    let len = (hi - lo + 1) as usize;
    let mut composite = vec![false; len];
    for &q in base {
        let sq = q * q;
        if sq > hi {
            break;
        }
        let start = if sq >= lo {
            sq
        } else {
            match lo.div_ceil(q).checked_mul(q) {
                Some(s) => s,
                None => continue,
            }
        };
        let mut j = (start - lo) as usize;
        while j < len {
            composite[j] = true;
            j += q as usize;
        }
    }
    composite
        .iter()
        .enumerate()
        .filter(|&(_, &c)| !c)
        .map(|(i, _)| lo + i as u64)
        .collect()
}

/// Primes in [lo, hi] with the default segment configuration.
pub fn primes_in(lo: u64, hi: u64) -> Result<PrimeRange, PrimeError> {
    SegmentedSieve::default().primes_in(lo, hi)
}

/// Primes in [2, y]; empty for y < 2.
pub fn primes_up_to(y: u64) -> Vec<u64> {
    if y < 2 {
        return Vec::new();
    }
    primes_in(2, y).expect("range within default budget").primes
}
