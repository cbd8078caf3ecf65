//! Growth exponent and the small-n threshold for a fixed polynomial f.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;

use super::modular::{add_mod, mul_mod};
use super::valuation::cmp_nfact_plus_f;
use super::{ArithError, Poly};

/// A non-negative integer c1 with |f(n)| <= n^c1 for every n >= 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GrowthExponent(pub u32);

impl GrowthExponent {
    /// c1 = deg f + ceil(log2(sum |a_i|)).
    ///
    /// For n >= 2: |f(n)| <= (sum |a_i|) n^deg <= 2^ceil(log2 sum) n^deg <= n^c1.
    pub fn for_poly(f: &Poly) -> Self {
        let sum = f.abs_coeff_sum();
        GrowthExponent(f.degree() as u32 + ceil_log2(&sum))
    }

    pub fn value(self) -> u32 {
        self.0
    }

    /// Checks |f(n)| <= n^c1 exactly for 2 <= n <= bound; returns the first
    /// counterexample.
    pub fn first_violation(self, f: &Poly, bound: u64) -> Option<u64> {
        (2..=bound).find(|&n| !self.holds_at(f, n))
    }

    /// |f(n)| <= n^c1 at a single point.
    pub fn holds_at(self, f: &Poly, n: u64) -> bool {
        f.eval_u64(n).magnitude() <= &BigUint::from(n).pow(self.0)
    }
}

fn ceil_log2(v: &BigUint) -> u32 {
    assert!(!v.is_zero());
    let bits = v.bits() as u32;
    if (v - BigUint::one()).is_zero() {
        0
    } else if v.count_ones() == 1 {
        bits - 1
    } else {
        bits
    }
}

/// The threshold n0 past which f(n) * prod_{i=1..k}(n+i) = f(n+k) has no
/// solution, n! + f(n) > 1 and f(n) != 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmallNThreshold {
    pub n0: u64,
    /// `true` when n0 is proved (f = +-1); otherwise it is only searched up
    /// to the stated bounds.
    pub proved: bool,
    pub checked_n: u64,
    pub checked_k: u64,
}

pub const DEFAULT_N_CHECK: u64 = 10_000;
pub const DEFAULT_K_CHECK: u64 = 1_000;

impl SmallNThreshold {
    /// Known thresholds: 2 for f = 1 and 3 for f = -1 (2! - 1 = 1).
    pub fn known(f: &Poly) -> Option<Self> {
        let n0 = match f.as_constant()? {
            1 => 2,
            -1 => 3,
            _ => return None,
        };
        Some(SmallNThreshold {
            n0,
            proved: true,
            checked_n: 0,
            checked_k: 0,
        })
    }

    /// The known threshold, or `candidate` after an exhaustive search with the
    /// default bounds.
    pub fn resolve(f: &Poly, candidate: Option<u64>) -> Result<Self, ArithError> {
        match (Self::known(f), candidate) {
            (Some(known), None) => Ok(known),
            (Some(known), Some(c)) if c >= known.n0 => Ok(SmallNThreshold { n0: c, ..known }),
            (_, Some(c)) => Self::validate(f, c, DEFAULT_N_CHECK, DEFAULT_K_CHECK),
            (None, None) => Err(ArithError::MissingThreshold),
        }
    }

    /// Exhaustively checks the threshold conditions for n0 <= n <= n_check and
    /// 1 <= k <= k_check.
    ///
    /// The equation is screened modulo two word-sized moduli; only candidates that
    /// vanish under both are confirmed with exact arithmetic.
    pub fn validate(f: &Poly, n0: u64, n_check: u64, k_check: u64) -> Result<Self, ArithError> {
        if n0 < 2 {
            return Err(ArithError::ThresholdRefuted { n: n0, k: None });
        }
        const Q: [u64; 2] = [(1 << 61) - 1, (1 << 62) - 57];
        let coeffs: Vec<Vec<u64>> = Q.iter().map(|&q| f.coeffs_mod(q)).collect();
        let eval = |i: usize, n: u64| -> u64 {
            let q = Q[i];
            coeffs[i]
                .iter()
                .rev()
                .fold(0, |acc, &c| add_mod(mul_mod(acc, n % q, q), c, q))
        };
        for n in n0..=n_check {
            if f.eval_u64(n).is_zero() {
                return Err(ArithError::ThresholdRefuted { n, k: None });
            }
            if cmp_nfact_plus_f(n, f, &BigInt::one()) != Ordering::Greater {
                return Err(ArithError::ThresholdRefuted { n, k: None });
            }
            let fn_mod = [eval(0, n), eval(1, n)];
            let mut prod = [1u64, 1u64];
            for k in 1..=k_check {
                let mut vanishes = true;
                for i in 0..2 {
                    prod[i] = mul_mod(prod[i], (n + k) % Q[i], Q[i]);
                    if mul_mod(fn_mod[i], prod[i], Q[i]) != eval(i, n + k) {
                        vanishes = false;
                    }
                }
                if vanishes && equation_vanishes(f, n, k) {
                    return Err(ArithError::ThresholdRefuted { n, k: Some(k) });
                }
            }
        }
        Ok(SmallNThreshold {
            n0,
            proved: false,
            checked_n: n_check,
            checked_k: k_check,
        })
    }
}

/// Exact test of f(n) * prod_{i=1..k}(n+i) - f(n+k) == 0.
pub fn equation_vanishes(f: &Poly, n: u64, k: u64) -> bool {
    let mut prod = f.eval_u64(n);
    for i in 1..=k {
        prod *= n + i;
    }
    prod == f.eval_u64(n + k)
}
