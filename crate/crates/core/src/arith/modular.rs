//! Word-sized modular arithmetic.
//!
//! Plain reduction goes through a `u128` product and remainder. The sieve's
//! hot loop uses [`Montgomery`] instead, which replaces the division by two
//! multiplications and works for every odd modulus below 2^64.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use super::ArithError;
use crate::primes::is_prime;

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    let (s, overflow) = a.overflowing_add(b);
    if overflow || s >= m {
        s.wrapping_sub(m)
    } else {
        s
    }
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Montgomery representation modulo an odd `m < 2^64`, with `R = 2^64`.
#[derive(Clone, Copy, Debug)]
pub struct Montgomery {
    m: u64,
    /// m^{-1} mod 2^64
    m_inv: u64,
    /// R mod m, i.e. the Montgomery form of 1
    r1: u64,
    /// R^2 mod m
    r2: u64,
}

impl Montgomery {
    pub fn new(m: u64) -> Self {
        assert!(m % 2 == 1 && m > 1, "Montgomery modulus must be odd and > 1");
        // Newton iteration doubles the number of correct low bits each step.
        let mut inv = m;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(m.wrapping_mul(inv)));
        }
        debug_assert_eq!(m.wrapping_mul(inv), 1);
        let r1 = ((1u128 << 64) % m as u128) as u64;
        let r2 = ((r1 as u128 * r1 as u128) % m as u128) as u64;
        Montgomery { m, m_inv: inv, r1, r2 }
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.m
    }

    /// Montgomery form of 1.
    #[inline]
    pub fn one(&self) -> u64 {
        self.r1
    }

    /// REDC(t) = t * R^{-1} mod m, for t < m * 2^64.
    #[inline]
    fn reduce(&self, t: u128) -> u64 {
        let lo = t as u64;
        let hi = (t >> 64) as u64;
        let q = lo.wrapping_mul(self.m_inv);
        let qm_hi = ((q as u128 * self.m as u128) >> 64) as u64;
        // t - q*m has zero low word, so only the high words matter.
        let (r, borrow) = hi.overflowing_sub(qm_hi);
        if borrow {
            r.wrapping_add(self.m)
        } else {
            r
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a as u128 * b as u128)
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        add_mod(a, b, self.m)
    }

    #[inline]
    pub fn to_mont(&self, a: u64) -> u64 {
        self.mul(a % self.m, self.r2)
    }

    #[inline]
    pub fn from_mont(&self, a: u64) -> u64 {
        self.reduce(a as u128)
    }
}

/// n! mod m by incremental products. `m = 1` gives 0.
pub fn factorial_mod(n: u64, m: u64) -> u64 {
    assert!(m >= 1, "modulus must be positive");
    FactorialMod::new(m)
        .take_while(|&(k, _)| k <= n)
        .last()
        .map_or(1 % m, |(_, r)| r)
}

/// Streams `(k, k! mod m)` for `k = 1, 2, ...`.
///
/// The stream stops by itself once the residue becomes zero, since every
/// later factorial is then zero too; callers that need the tail should treat
/// a finished stream as "0 from here on".
#[derive(Clone, Debug)]
pub struct FactorialMod {
    m: u64,
    k: u64,
    acc: u64,
    done: bool,
}

impl FactorialMod {
    pub fn new(m: u64) -> Self {
        assert!(m >= 1, "modulus must be positive");
        FactorialMod {
            m,
            k: 0,
            acc: 1 % m,
            done: false,
        }
    }
}

impl Iterator for FactorialMod {
    type Item = (u64, u64);

    fn next(&mut self) -> Option<(u64, u64)> {
        if self.done {
            return None;
        }
        self.k += 1;
        self.acc = mul_mod(self.acc, self.k % self.m, self.m);
        if self.acc == 0 {
            self.done = true;
        }
        Some((self.k, self.acc))
    }
}

/// n! mod m for an arbitrary-precision modulus.
pub fn factorial_mod_big(n: u64, m: &BigUint) -> BigUint {
    let mut acc = BigUint::one() % m;
    for k in 2..=n {
        if acc.is_zero() {
            break;
        }
        acc = (acc * BigUint::from(k)) % m;
    }
    acc
}

/// The modulus p^e, kept in a machine word when it fits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModulusValue {
    Word(u64),
    Big(BigUint),
}

/// A prime power p^e with certified prime p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimePowerModulus {
    p: u64,
    e: u32,
    m: ModulusValue,
}

impl PrimePowerModulus {
    pub fn new(p: u64, e: u32) -> Result<Self, ArithError> {
        if !is_prime(p) {
            return Err(ArithError::NotPrime(p));
        }
        if e == 0 {
            return Err(ArithError::ZeroExponent);
        }
        let big = BigUint::from(p).pow(e);
        let m = match big.to_u64() {
            Some(w) => ModulusValue::Word(w),
            None => ModulusValue::Big(big),
        };
        Ok(PrimePowerModulus { p, e, m })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn exponent(&self) -> u32 {
        self.e
    }

    pub fn value(&self) -> &ModulusValue {
        &self.m
    }

    pub fn to_biguint(&self) -> BigUint {
        match &self.m {
            ModulusValue::Word(w) => BigUint::from(*w),
            ModulusValue::Big(b) => b.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_examples() {
        assert_eq!(factorial_mod(0, 7), 1);
        assert_eq!(factorial_mod(4, 7), 3);
        assert_eq!(factorial_mod(6, 7), 6);
        assert_eq!(factorial_mod(10, 7), 0);
        assert_eq!(factorial_mod(5, 1), 0);
    }

    #[test]
    fn factorial_stream_stops_at_zero() {
        let v: Vec<_> = FactorialMod::new(6).collect();
        assert_eq!(v, vec![(1, 1), (2, 2), (3, 0)]);
    }

    #[test]
    fn montgomery_agrees_with_plain() {
        for &m in &[3u64, 7, 101, 1_000_003, (1u64 << 61) - 1, u64::MAX - 58] {
            let mg = Montgomery::new(m);
            let samples = [0u64, 1, 2, m / 3, m / 2, m - 1];
            for &a in &samples {
                for &b in &samples {
                    let got = mg.from_mont(mg.mul(mg.to_mont(a), mg.to_mont(b)));
                    assert_eq!(got, mul_mod(a, b, m), "m={m} a={a} b={b}");
                }
            }
            assert_eq!(mg.from_mont(mg.one()), 1);
        }
    }

    #[test]
    fn pow_mod_fermat() {
        assert_eq!(pow_mod(3, 1_000_002, 1_000_003), 1);
        assert_eq!(pow_mod(5, 0, 1), 0);
    }

    #[test]
    fn prime_power_modulus() {
        let m = PrimePowerModulus::new(71, 2).unwrap();
        assert_eq!(m.value(), &ModulusValue::Word(5041));
        let big = PrimePowerModulus::new(1_000_003, 4).unwrap();
        assert!(matches!(big.value(), ModulusValue::Big(_)));
        assert_eq!(PrimePowerModulus::new(91, 1), Err(ArithError::NotPrime(91)));
        assert_eq!(PrimePowerModulus::new(7, 0), Err(ArithError::ZeroExponent));
    }
}
