//! Ground-truth factorizations of n! + f(n) for small n, and their
//! comparison against sieve-derived bounds.

mod rho;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arith::{nfact_plus_f, Poly};
use crate::density::BoundTable;
use crate::primes::{primality_big, primes_up_to, Certainty};
use crate::wilson::{check_companion, CompanionCheck};

pub use rho::{brent, Effort};

pub const TRIAL_LIMIT: u64 = 1_000_000;
pub const DEFAULT_EFFORT: u64 = 5_000_000;
pub const DEFAULT_N_MAX: u64 = 25;
/// Miller-Rabin rounds for factors above 2^64.
pub const PROBABLE_ROUNDS: u32 = 64;
const RHO_CONSTANTS: u64 = 16;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FactorError {
    #[error("n! + f(n) = {value} is not above 1 at n = {n}")]
    ValueNotAboveOne { n: u64, value: String },
    #[error("mismatch at n = {n}: {detail}")]
    MismatchFound { n: u64, detail: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeFactor {
    #[serde(with = "crate::arith::decimal")]
    pub prime: BigUint,
    pub exponent: u32,
    pub certainty: Certainty,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum FactorStatus {
    Complete,
    Partial {
        #[serde(with = "crate::arith::decimal")]
        cofactor: BigUint,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub n: u64,
    #[serde(with = "crate::arith::decimal")]
    pub value: BigUint,
    /// Ascending primes.
    pub factors: Vec<PrimeFactor>,
    pub status: FactorStatus,
}

impl Factorization {
    pub fn is_complete(&self) -> bool {
        self.status == FactorStatus::Complete
    }

    /// Some factor relies on a probabilistic test.
    pub fn has_probable(&self) -> bool {
        self.factors.iter().any(|f| f.certainty == Certainty::Probable)
    }

    pub fn largest_found(&self) -> Option<&BigUint> {
        self.factors.last().map(|f| &f.prime)
    }

    /// Product of prime powers times the cofactor.
    pub fn reconstruct(&self) -> BigUint {
        let base = self
            .factors
            .iter()
            .fold(BigUint::one(), |acc, f| acc * f.prime.pow(f.exponent));
        match &self.status {
            FactorStatus::Complete => base,
            FactorStatus::Partial { cofactor } => base * cofactor,
        }
    }

    /// "p1^e1*p2*..." with exponent 1 omitted.
    pub fn factor_string(&self) -> String {
        self.factors
            .iter()
            .map(|f| {
                if f.exponent == 1 {
                    f.prime.to_string()
                } else {
                    format!("{}^{}", f.prime, f.exponent)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

fn trial_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| primes_up_to(TRIAL_LIMIT))
}

fn certainty(p: &BigUint) -> Option<Certainty> {
    primality_big(p, PROBABLE_ROUNDS)
}

fn split(n: BigUint, effort: &mut Effort, primes: &mut Vec<BigUint>, leftover: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    if certainty(&n).is_some() {
        primes.push(n);
        return;
    }
    for c in 1..=RHO_CONSTANTS {
        if let Some(d) = brent(&n, c, effort) {
            let other = &n / &d;
            split(d, effort, primes, leftover);
            split(other, effort, primes, leftover);
            return;
        }
        if effort.exhausted() {
            break;
        }
    }
    leftover.push(n);
}

/// Factors a positive integer: trial division below 10^6, then Brent's rho
/// within `effort` iterations.
pub fn factor_biguint(n: u64, value: &BigUint, effort: u64) -> Factorization {
    let mut rest = value.clone();
    let mut found: Vec<BigUint> = Vec::new();
    for &p in trial_primes() {
        if rest.is_one() || BigUint::from(p) * p > rest {
            break;
        }
        while (&rest % p).is_zero() {
            rest /= p;
            found.push(BigUint::from(p));
        }
    }
    let mut leftover = Vec::new();
    if !rest.is_one() {
        let mut budget = Effort::new(effort);
        split(rest, &mut budget, &mut found, &mut leftover);
    }
    let mut counts: BTreeMap<BigUint, u32> = BTreeMap::new();
    for p in found {
        *counts.entry(p).or_insert(0) += 1;
    }
    let factors = counts
        .into_iter()
        .map(|(prime, exponent)| {
            let certainty = certainty(&prime).expect("split only keeps primes");
            PrimeFactor {
                prime,
                exponent,
                certainty,
            }
        })
        .collect();
    let status = if leftover.is_empty() {
        FactorStatus::Complete
    } else {
        FactorStatus::Partial {
            cofactor: leftover.into_iter().product(),
        }
    };
    Factorization {
        n,
        value: value.clone(),
        factors,
        status,
    }
}

/// Factorization of n! + f(n).
pub fn factor_small(n: u64, f: &Poly, effort: u64) -> Result<Factorization, FactorError> {
    let v = nfact_plus_f(n, f);
    match v.to_biguint() {
        Some(value) if n >= 1 && value > BigUint::one() => Ok(factor_biguint(n, &value, effort)),
        _ => Err(FactorError::ValueNotAboveOne {
            n,
            value: v.to_string(),
        }),
    }
}

/// P(n! + f(n)), or the largest prime found when the factorization is partial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum LargestPrime {
    #[serde(with = "crate::arith::decimal")]
    Exact(BigUint),
    Unknown(#[serde(serialize_with = "ser_opt_big")] Option<BigUint>),
}

fn ser_opt_big<S: serde::Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(b) => s.collect_str(b),
        None => s.serialize_none(),
    }
}

impl fmt::Display for LargestPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LargestPrime::Exact(p) => write!(f, "{p}"),
            LargestPrime::Unknown(Some(p)) => write!(f, "unknown>={p}"),
            LargestPrime::Unknown(None) => write!(f, "unknown"),
        }
    }
}

pub fn largest_prime(fac: &Factorization) -> LargestPrime {
    match (&fac.status, fac.largest_found()) {
        (FactorStatus::Complete, Some(p)) => LargestPrime::Exact(p.clone()),
        (_, found) => LargestPrime::Unknown(found.cloned()),
    }
}

pub fn p_exact(n: u64, f: &Poly, effort: u64) -> Result<LargestPrime, FactorError> {
    factor_small(n, f, effort).map(|fac| largest_prime(&fac))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheckRow {
    pub n: u64,
    pub bound: Option<u64>,
    pub largest: LargestPrime,
    /// L(n) = P(n! + f(n)) was required (P <= P_max and P > n).
    pub equality_checked: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheckReport {
    pub n_max: u64,
    pub p_max: Option<u64>,
    pub rows: Vec<CrossCheckRow>,
    /// n with n! + f(n) <= 1, skipped.
    pub skipped: Vec<u64>,
    /// Companion checks for hits of f = +-1.
    pub companions: Vec<CompanionCheck>,
}

/// Compares L(n) with exact factorizations for n <= n_max. Any disagreement
/// aborts with the first counterexample.
pub fn cross_check(table: &BoundTable, f: &Poly, n_max: u64, effort: u64) -> Result<CrossCheckReport, FactorError> {
    let mismatch = |n, detail: String| Err(FactorError::MismatchFound { n, detail });
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    let mut companions = Vec::new();
    for n in 1..=n_max {
        let fac = match factor_small(n, f, effort) {
            Ok(fac) => fac,
            Err(FactorError::ValueNotAboveOne { .. }) => {
                skipped.push(n);
                continue;
            }
            Err(e) => return Err(e),
        };
        if fac.reconstruct() != fac.value {
            return mismatch(n, "factorization does not reproduce the value".into());
        }
        let bound = table.get(n);
        if let Some(l) = bound {
            if !(&fac.value % l).is_zero() {
                return mismatch(n, format!("L(n) = {l} does not divide {}", fac.value));
            }
        }
        let largest = largest_prime(&fac);
        let mut equality_checked = false;
        if let LargestPrime::Exact(p) = &largest {
            if let Some(l) = bound {
                if BigUint::from(l) > *p {
                    return mismatch(n, format!("L(n) = {l} exceeds P = {p}"));
                }
            }
            let p_small = p.to_u64();
            if let (Some(pm), Some(ps)) = (table.p_max, p_small) {
                if ps <= pm && ps > n {
                    equality_checked = true;
                    if bound != Some(ps) {
                        return mismatch(n, format!("L(n) = {bound:?} but P = {ps} <= P_max = {pm}"));
                    }
                }
            }
        }
        if let (Some(c), Some(l)) = (f.as_constant(), bound) {
            if let Some(chk) = check_companion(l, n, c) {
                if !chk.holds {
                    return mismatch(n, format!("companion {} of p = {l} is not a hit", chk.companion));
                }
                companions.push(chk);
            }
        }
        rows.push(CrossCheckRow {
            n,
            bound,
            largest,
            equality_checked,
        });
    }
    Ok(CrossCheckReport {
        n_max,
        p_max: table.p_max,
        rows,
        skipped,
        companions,
    })
}
