//! Per-prime scan: every n in a window below p with p | n! + f(n).
//!
//! The factorial is carried in Montgomery form, so each step of the scan is
//! one Montgomery multiplication (plus Horner steps for non-constant f) with
//! no division.

use serde::{Deserialize, Serialize};

use crate::arith::{divides_nfact_plus_f, mul_mod, ord_nfact_plus_f, ArithError, Montgomery, Poly, Valuation};

/// Half-open window [lo, hi) of n values, or every n below p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Window {
    All,
    Range { lo: u64, hi: u64 },
}

impl Window {
    /// The window intersected with [1, p), as a half-open range.
    pub fn clamp_to(self, p: u64) -> (u64, u64) {
        match self {
            Window::All => (1, p),
            Window::Range { lo, hi } => (lo.max(1), hi.min(p)),
        }
    }

    pub fn is_empty_for(self, p: u64) -> bool {
        let (lo, hi) = self.clamp_to(p);
        lo >= hi
    }
}

/// All n in `window` (clamped to [1, p)) with n! + f(n) = 0 mod p.
pub fn scan_prime(p: u64, window: Window, f: &Poly) -> Vec<u64> {
    let (lo, hi) = window.clamp_to(p);
    if lo >= hi {
        return Vec::new();
    }
    if p.is_multiple_of(2) {
        return scan_plain(p, lo, hi, f);
    }
    let mg = Montgomery::new(p);
    let coeffs: Vec<u64> = f.coeffs_mod(p).into_iter().map(|c| mg.to_mont(c)).collect();
    match f.as_constant() {
        Some(_) => scan_constant(&mg, coeffs[0], lo, hi),
        None => scan_general(&mg, &coeffs, lo, hi),
    }
}

fn scan_constant(mg: &Montgomery, c: u64, lo: u64, hi: u64) -> Vec<u64> {
    let p = mg.modulus();
    // n! = -c  (mod p), in Montgomery form
    let target = if c == 0 { 0 } else { p - c };
    let one = mg.one();
    let mut fact = one;
    let mut n_m = one;
    for _ in 1..lo {
        fact = mg.mul(fact, n_m);
        n_m = mg.add(n_m, one);
    }
    let mut hits = Vec::new();
    for n in lo..hi {
        fact = mg.mul(fact, n_m);
        n_m = mg.add(n_m, one);
        if fact == target {
            hits.push(n);
        }
    }
    hits
}

fn scan_general(mg: &Montgomery, coeffs: &[u64], lo: u64, hi: u64) -> Vec<u64> {
    let one = mg.one();
    let mut fact = one;
    let mut n_m = one;
    for _ in 1..lo {
        fact = mg.mul(fact, n_m);
        n_m = mg.add(n_m, one);
    }
    let (lead, rest) = coeffs.split_last().expect("nonzero polynomial");
    let mut hits = Vec::new();
    for n in lo..hi {
        fact = mg.mul(fact, n_m);
        let fv = rest.iter().rev().fold(*lead, |acc, &c| mg.add(mg.mul(acc, n_m), c));
        n_m = mg.add(n_m, one);
        let s = mg.add(fact, fv);
        if s == 0 {
            hits.push(n);
        }
    }
    hits
}

/// Reference scan with plain `u128` remainders; used for p = 2 and in tests.
pub fn scan_plain(p: u64, lo: u64, hi: u64, f: &Poly) -> Vec<u64> {
    let mut fact = 1 % p;
    let mut hits = Vec::new();
    for n in 1..hi {
        fact = mul_mod(fact, n % p, p);
        if n >= lo && (fact as u128 + f.eval_mod(n, p) as u128).is_multiple_of(p as u128) {
            hits.push(n);
        }
    }
    hits
}

fn lift_one(n: u64, p: u64, f: &Poly, cap: u32) -> Result<Valuation, ArithError> {
    match ord_nfact_plus_f(n, p, f, cap) {
        Err(ArithError::ValueIsZero { .. }) => Ok(Valuation::AtLeast(cap)),
        other => other,
    }
}

/// Exact orders for hits of prime `p`, in the order given.
///
/// One pass computes n! mod p^2 up to the largest hit; a hit whose residue
/// mod p^2 is nonzero has order exactly 1. The rare remainder go through
/// [`ord_nfact_plus_f`]. A hit where n! + f(n) = 0 is recorded as ">=cap".
pub fn lift_hits(p: u64, hits: &[u64], f: &Poly, cap: u32) -> Result<Vec<Valuation>, ArithError> {
    let Some(&max_n) = hits.iter().max() else {
        return Ok(Vec::new());
    };
    if cap <= 1 {
        return Ok(vec![Valuation::AtLeast(1); hits.len()]);
    }
    if p.is_multiple_of(2) || p > u32::MAX as u64 {
        return hits.iter().map(|&n| lift_one(n, p, f, cap)).collect();
    }
    let m = p * p;
    let mg = Montgomery::new(m);
    let mut sorted: Vec<(u64, usize)> = hits.iter().copied().zip(0..).collect();
    sorted.sort_unstable();
    let mut out = vec![Valuation::Exact(0); hits.len()];
    let mut next = 0;
    let one = mg.one();
    let mut fact = one;
    let mut n_m = one;
    for n in 1..=max_n {
        fact = mg.mul(fact, n_m);
        n_m = mg.add(n_m, one);
        while next < sorted.len() && sorted[next].0 == n {
            let idx = sorted[next].1;
            let r = (mg.from_mont(fact) as u128 + f.eval_mod(n, m) as u128) % m as u128;
            out[idx] = if r == 0 {
                lift_one(n, p, f, cap)?
            } else {
                debug_assert_eq!(r % p as u128, 0, "not a hit: p={p} n={n}");
                Valuation::Exact(1)
            };
            next += 1;
        }
    }
    Ok(out)
}

/// True if (p, n) is a hit, decided directly.
pub fn is_hit(p: u64, n: u64, f: &Poly) -> bool {
    divides_nfact_plus_f(n, p, f)
}
