//! p-adic orders of n! and of n! + f(n).

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::modular::{factorial_mod, factorial_mod_big, ModulusValue, PrimePowerModulus};
use super::{ArithError, Poly};

/// Default ceiling on the exponent used when lifting a valuation.
pub const DEFAULT_LIFT_CAP: u32 = 64;

/// Result of a capped valuation computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Valuation {
    Exact(u32),
    /// Divisible by p^k; the exact order was not determined.
    AtLeast(u32),
}

impl Valuation {
    pub fn exact(self) -> Option<u32> {
        match self {
            Valuation::Exact(v) => Some(v),
            Valuation::AtLeast(_) => None,
        }
    }

    /// The certified lower bound on the order.
    pub fn lower_bound(self) -> u32 {
        match self {
            Valuation::Exact(v) | Valuation::AtLeast(v) => v,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Exact(v) => write!(f, "{v}"),
            Valuation::AtLeast(v) => write!(f, ">={v}"),
        }
    }
}

impl std::str::FromStr for Valuation {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ArithError::BadValuation(s.to_string());
        match s.strip_prefix(">=") {
            Some(rest) => rest.parse().map(Valuation::AtLeast).map_err(|_| bad()),
            None => s.parse().map(Valuation::Exact).map_err(|_| bad()),
        }
    }
}

/// Legendre's formula: ord_p(n!) = sum of floor(n / p^i).
pub fn ord_p_factorial(n: u64, p: u64) -> u64 {
    assert!(p >= 2, "p must be at least 2");
    let mut total = 0;
    let mut q = n;
    while q >= p {
        q /= p;
        total += q;
    }
    total
}

/// ord_p(v) for nonzero v.
pub fn ord_p_big(v: &BigInt, p: u64) -> u32 {
    assert!(!v.is_zero(), "valuation of zero is infinite");
    let p = BigUint::from(p);
    let mut m = v.magnitude().clone();
    let mut k = 0;
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return k;
        }
        m = q;
        k += 1;
    }
}

/// Compares n! + f(n) with `threshold` without materializing n! when it is
/// obviously larger.
pub fn cmp_nfact_plus_f(n: u64, f: &Poly, threshold: &BigInt) -> Ordering {
    let fv = f.eval_u64(n);
    // n! + f(n) vs threshold  <=>  n! vs threshold - f(n)
    let target = threshold - &fv;
    if target < BigInt::one() {
        // n! >= 1 > target
        return Ordering::Greater;
    }
    let mut fact = BigInt::one();
    for k in 2..=n {
        fact *= k;
        if fact > target {
            return Ordering::Greater;
        }
    }
    fact.cmp(&target)
}

/// Exact value n! + f(n). Only sensible for modest n.
pub fn nfact_plus_f(n: u64, f: &Poly) -> BigInt {
    let mut fact = BigInt::one();
    for k in 2..=n {
        fact *= k;
    }
    fact + f.eval_u64(n)
}

fn residue_mod(n: u64, f: &Poly, modulus: &PrimePowerModulus) -> BigUint {
    match modulus.value() {
        ModulusValue::Word(m) => {
            let m = *m;
            let fact = factorial_mod(n, m) as u128;
            let fv = f.eval_mod(n, m) as u128;
            BigUint::from(((fact + fv) % m as u128) as u64)
        }
        ModulusValue::Big(m) => {
            let fact = factorial_mod_big(n, m);
            let fv = f.eval_mod_big(&BigUint::from(n), m);
            (fact + fv) % m
        }
    }
}

/// Lifts ord_p(n! + f(n)) by testing residues mod p^e for e = 1, 2, 4, ...
/// up to `cap`.
fn lift(n: u64, p: u64, f: &Poly, cap: u32) -> Result<Valuation, ArithError> {
    let mut e = 1u32;
    loop {
        let modulus = PrimePowerModulus::new(p, e)?;
        let r = residue_mod(n, f, &modulus);
        if !r.is_zero() {
            let v = ord_p_big(&BigInt::from(r), p);
            debug_assert!(v < e);
            return Ok(Valuation::Exact(v));
        }
        if e >= cap {
            return Ok(Valuation::AtLeast(e));
        }
        e = (e * 2).min(cap);
    }
}

/// ord_p(n! + f(n)), exact when it is below `cap`.
///
/// For n >= p the order of n! comes from Legendre's formula and is compared
/// with ord_p(f(n)); lifting is only needed when the two coincide.
pub fn ord_nfact_plus_f(n: u64, p: u64, f: &Poly, cap: u32) -> Result<Valuation, ArithError> {
    if cap == 0 {
        return Err(ArithError::ZeroExponent);
    }
    if n == 0 {
        return Err(ArithError::NonPositive);
    }
    if !crate::primes::is_prime(p) {
        return Err(ArithError::NotPrime(p));
    }
    if cmp_nfact_plus_f(n, f, &BigInt::zero()) == Ordering::Equal {
        return Err(ArithError::ValueIsZero { n });
    }
    if n >= p {
        let fact_ord = ord_p_factorial(n, p);
        let fv = f.eval_u64(n);
        if fv.is_zero() {
            return Ok(capped(fact_ord, cap));
        }
        let f_ord = ord_p_big(&fv, p) as u64;
        match f_ord.cmp(&fact_ord) {
            Ordering::Less => return Ok(capped(f_ord, cap)),
            Ordering::Greater => return Ok(capped(fact_ord, cap)),
            Ordering::Equal => {}
        }
    }
    lift(n, p, f, cap)
}

fn capped(v: u64, cap: u32) -> Valuation {
    match v.to_u32() {
        Some(v) if v < cap => Valuation::Exact(v),
        _ => Valuation::AtLeast(cap),
    }
}

/// Convenience: true when p | n! + f(n), decided mod p.
pub fn divides_nfact_plus_f(n: u64, p: u64, f: &Poly) -> bool {
    let fact = factorial_mod(n, p) as u128;
    (fact + f.eval_mod(n, p) as u128).is_multiple_of(p as u128)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one() -> Poly {
        Poly::constant(1).unwrap()
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(ord_p_factorial(4, 2), 3);
        assert_eq!(ord_p_factorial(3, 5), 0);
        assert_eq!(ord_p_factorial(25, 5), 6);
        assert_eq!(ord_p_factorial(0, 3), 0);
    }

    #[test]
    fn ord_examples() {
        assert_eq!(ord_nfact_plus_f(7, 71, &one(), 64), Ok(Valuation::Exact(2)));
        assert_eq!(ord_nfact_plus_f(10, 7, &one(), 64), Ok(Valuation::Exact(0)));
        assert_eq!(ord_nfact_plus_f(3, 7, &one(), 64), Ok(Valuation::Exact(1)));
        assert_eq!(ord_nfact_plus_f(4, 5, &one(), 64), Ok(Valuation::Exact(2)));
    }

    #[test]
    fn cap_reports_lower_bound() {
        // 7! + 1 = 71^2, so a cap of 2 cannot certify exactness.
        assert_eq!(ord_nfact_plus_f(7, 71, &one(), 2), Ok(Valuation::AtLeast(2)));
        assert_eq!(ord_nfact_plus_f(7, 71, &one(), 3), Ok(Valuation::Exact(2)));
    }

    #[test]
    fn zero_value_rejected() {
        let minus_one = Poly::constant(-1).unwrap();
        assert_eq!(
            ord_nfact_plus_f(1, 5, &minus_one, 64),
            Err(ArithError::ValueIsZero { n: 1 })
        );
        // 3! - 6 = 0
        let f = Poly::constant(-6).unwrap();
        assert_eq!(ord_nfact_plus_f(3, 2, &f, 64), Err(ArithError::ValueIsZero { n: 3 }));
    }

    #[test]
    fn n_at_least_p_uses_legendre() {
        // 10! + 10 = 3628810 = 2 * 5 * 362881, ord_5 = 1 while ord_5(10!) = 2
        let f = Poly::from_i64s(&[0, 1]).unwrap();
        assert_eq!(ord_nfact_plus_f(10, 5, &f, 64), Ok(Valuation::Exact(1)));
        // 10! + 100: ord_5(100) = 2 = ord_5(10!), needs lifting: 3628900 = 2^2 * 5^2 * 36289
        let g = Poly::constant(100).unwrap();
        assert_eq!(ord_nfact_plus_f(10, 5, &g, 64), Ok(Valuation::Exact(2)));
    }

    #[test]
    fn valuation_text_round_trip() {
        for v in [Valuation::Exact(3), Valuation::AtLeast(1)] {
            assert_eq!(v.to_string().parse::<Valuation>().unwrap(), v);
        }
        assert!("x".parse::<Valuation>().is_err());
    }
}
