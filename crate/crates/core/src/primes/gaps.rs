//! Prime gaps, the sum of squared gaps, and exact prime counts and sums.

use num_bigint::BigUint;
use serde::Serialize;

use super::primality::next_prime;
use super::sieve::primes_up_to;

/// Exponent used for the inspection ratio of the squared-gap sum.
pub const GAP_SQUARE_EXPONENT: f64 = 23.0 / 18.0 + 0.001;

/// Pairs (p_k, p_{k+1} - p_k) for every prime p_k <= y.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapTable {
    pub y: u64,
    pub entries: Vec<(u64, u64)>,
}

impl GapTable {
    pub fn new(y: u64) -> Self {
        let primes = primes_up_to(y);
        let mut entries = Vec::with_capacity(primes.len());
        for (i, &p) in primes.iter().enumerate() {
            let next = primes.get(i + 1).copied().unwrap_or_else(|| next_prime(p));
            entries.push((p, next - p));
        }
        GapTable { y, entries }
    }

    /// p_{pi(y)+1}, the first prime beyond y (2 when the table is empty).
    pub fn next_prime_after(&self) -> u64 {
        self.entries.last().map_or(2, |&(p, g)| p + g)
    }

    pub fn prime_count(&self) -> u64 {
        self.entries.len() as u64
    }

    pub fn gap_sum(&self) -> u64 {
        self.entries.iter().map(|&(_, g)| g).sum()
    }

    pub fn square_sum(&self) -> BigUint {
        let s: u128 = self.entries.iter().map(|&(_, g)| (g as u128) * (g as u128)).sum();
        BigUint::from(s)
    }
}

/// Sum over primes p_k <= y of (p_{k+1} - p_k)^2.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GapSquareSum {
    pub y: u64,
    #[serde(with = "crate::arith::decimal")]
    pub sum: BigUint,
    pub prime_count: u64,
    pub next_prime: u64,
    /// sum / y^(23/18 + 0.001); for inspection only.
    pub ratio: f64,
}

impl GapSquareSum {
    /// sum >= (p_{pi(y)+1} - 2)^2 / pi(y), checked in integers.
    pub fn cauchy_schwarz_floor_holds(&self) -> bool {
        let span = BigUint::from(self.next_prime - 2);
        &self.sum * BigUint::from(self.prime_count) >= &span * &span
    }
}

pub fn heath_brown_sum(y: u64) -> GapSquareSum {
    assert!(y >= 2, "y must be at least 2");
    let table = GapTable::new(y);
    let sum = table.square_sum();
    let ratio = big_to_f64(&sum) / (y as f64).powf(GAP_SQUARE_EXPONENT);
    GapSquareSum {
        y,
        prime_count: table.prime_count(),
        next_prime: table.next_prime_after(),
        sum,
        ratio,
    }
}

/// pi(y), the number of primes <= y.
pub fn pi(y: u64) -> u64 {
    primes_up_to(y).len() as u64
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PrimeSum {
    pub y: u64,
    #[serde(with = "crate::arith::decimal")]
    pub sum: BigUint,
    /// sum / (y^2 / (2 log y))
    pub ratio: f64,
}

/// Exact sum of the primes <= y.
pub fn sum_primes(y: u64) -> PrimeSum {
    assert!(y >= 2, "y must be at least 2");
    let s: u128 = primes_up_to(y).iter().map(|&p| p as u128).sum();
    let sum = BigUint::from(s);
    let yf = y as f64;
    let ratio = big_to_f64(&sum) / (yf * yf / (2.0 * yf.ln()));
    PrimeSum { y, sum, ratio }
}

pub(crate) fn big_to_f64(v: &BigUint) -> f64 {
    use num_traits::ToPrimitive;
    v.to_f64().unwrap_or(f64::INFINITY)
}
