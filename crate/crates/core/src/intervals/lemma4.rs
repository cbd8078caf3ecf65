//! Exact checks of the divisibility chain for two disjoint intervals whose
//! four endpoints are hits of the same prime p.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::family::Interval;
use super::IntervalError;
use crate::arith::{factorial_mod_big, GrowthExponent, Poly, Valuation};
use crate::wilson::HitStore;

/// Terms of the series for e used in the rational brackets.
const E_TERMS: u32 = 30;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma4Input {
    pub p: u64,
    /// I1 = (n_i1, n_j1]
    pub i1: Interval,
    /// I2 = (n_i2, n_j2], |I2| >= |I1|
    pub i2: Interval,
    /// Orders at n_i1, n_j1, n_i2, n_j2.
    pub ords: [Valuation; 4],
    pub x: u64,
    pub c1: GrowthExponent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundVerdict {
    Holds,
    Fails,
    /// The rational brackets on e were too loose to decide.
    Undecided,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DivClause {
    pub divides: bool,
    pub nonzero: bool,
}

impl DivClause {
    fn ok(self) -> bool {
        self.divides && self.nonzero
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma4Report {
    pub p: u64,
    pub i1: Interval,
    pub i2: Interval,
    /// D = p^d_exponent
    pub d_exponent: u32,
    /// D divides n! + f(n) at all four endpoints.
    pub endpoints_divisible: bool,
    /// D | f(n_i1) prod(n_i1 + k) - f(n_j1), nonzero.
    pub a_i1: DivClause,
    /// Same for I2.
    pub a_i2: DivClause,
    /// D | f(n_i1) f(n_j2) P1 - f(n_i2) f(n_j1) P2, nonzero.
    pub b: DivClause,
    /// |I1|! divides the cross combination.
    pub c_factorial_divides: bool,
    /// D divides the cross combination over |I1|!.
    pub c_quotient_divisible: bool,
    /// D <= 2 x^(c1 + |I1|)
    pub d_first: BoundVerdict,
    /// D <= 2 x^(|I2| - |I1| + 2 c1) (e x / |I1|)^|I1|
    pub d_second: BoundVerdict,
    pub holds: bool,
}

fn rising(lo: u64, hi: u64) -> BigInt {
    // product of lo+1 .. hi, split in halves to keep operands balanced
    fn go(a: u64, b: u64) -> BigUint {
        if b - a <= 16 {
            return (a + 1..=b).fold(BigUint::one(), |acc, k| acc * k);
        }
        let mid = a + (b - a) / 2;
        go(a, mid) * go(mid, b)
    }
    BigInt::from(go(lo, hi))
}

/// Rational brackets lo <= e <= hi as (num, den) pairs.
fn e_brackets() -> ((BigUint, BigUint), (BigUint, BigUint)) {
    // sum_{k<=K} 1/k! = num / K!
    let mut den = BigUint::one();
    for k in 1..=E_TERMS {
        den *= k;
    }
    let mut num = BigUint::zero();
    let mut term = den.clone();
    num += &term;
    for k in 1..=E_TERMS {
        term /= k;
        num += &term;
    }
    // tail sum_{k>K} 1/k! < 2/(K+1)!
    let hi_den = &den * (E_TERMS + 1);
    let hi_num = &num * (E_TERMS + 1) + 2u32;
    ((num, den), (hi_num, hi_den))
}

fn check_preconditions(f: &Poly, input: &Lemma4Input) -> Result<(), IntervalError> {
    let violated = |s: String| Err(IntervalError::AssumptionViolated(s));
    let Lemma4Input { p, i1, i2, x, c1, .. } = *input;
    if !crate::primes::is_prime(p) {
        return violated(format!("{p} is not prime"));
    }
    if i1.is_empty() || i2.is_empty() {
        return violated("intervals must have positive length".into());
    }
    if i1 == i2 {
        return violated("intervals must be distinct".into());
    }
    if !i1.is_disjoint(i2) {
        return violated(format!("{i1} and {i2} overlap"));
    }
    if i2.len() < i1.len() {
        return violated(format!("|I2| = {} < |I1| = {}", i2.len(), i1.len()));
    }
    let ends = [i1.lo, i1.hi, i2.lo, i2.hi];
    for (a, &u) in ends.iter().enumerate() {
        if ends[..a].contains(&u) {
            return violated(format!("endpoint {u} repeated"));
        }
        if u == 0 || u >= p || u >= x {
            return violated(format!("endpoint {u} outside [1, min(p, x)) = [1, {})", p.min(x)));
        }
        if f.eval_u64(u).magnitude() > &BigUint::from(x).pow(c1.value()) {
            return violated(format!("|f({u})| exceeds x^{}", c1.value()));
        }
    }
    Ok(())
}

/// Runs all clauses with exact integers. Fails with `AssumptionViolated`
/// naming the broken hypothesis; a clause that does not hold is reported,
/// never dropped.
pub fn lemma4_exact_check(f: &Poly, input: &Lemma4Input) -> Result<Lemma4Report, IntervalError> {
    check_preconditions(f, input)?;
    let Lemma4Input { p, i1, i2, ords, x, c1 } = *input;
    let v = ords.iter().map(|o| o.lower_bound()).min().expect("four orders");
    let d = BigInt::from(BigUint::from(p).pow(v));
    let divides = |q: &BigInt| q.is_multiple_of(&d);

    let ends = [i1.lo, i1.hi, i2.lo, i2.hi];
    let d_mag = d.magnitude();
    let endpoints_divisible = v == 0
        || ends.iter().all(|&n| {
            let r = (factorial_mod_big(n, d_mag) + f.eval_mod_big(&BigUint::from(n), d_mag)) % d_mag;
            r.is_zero()
        });

    let [fi1, fj1, fi2, fj2] = ends.map(|n| f.eval_u64(n));
    let p1 = rising(i1.lo, i1.hi);
    let p2 = rising(i2.lo, i2.hi);

    let a1 = &fi1 * &p1 - &fj1;
    let a2 = &fi2 * &p2 - &fj2;
    let a_i1 = DivClause {
        divides: divides(&a1),
        nonzero: !a1.is_zero(),
    };
    let a_i2 = DivClause {
        divides: divides(&a2),
        nonzero: !a2.is_zero(),
    };

    let cross = &fi1 * &fj2 * &p1 - &fi2 * &fj1 * &p2;
    let b = DivClause {
        divides: divides(&cross),
        nonzero: !cross.is_zero(),
    };

    let m = i1.len();
    let m_fact = rising(0, m);
    let (quot, rem) = cross.div_rem(&m_fact);
    let c_factorial_divides = rem.is_zero();
    let c_quotient_divisible = c_factorial_divides && divides(&quot);

    let xb = BigInt::from(x);
    let two = BigInt::from(2);
    let c1v = c1.value();
    let d_first = if d <= &two * xb.pow(c1v + m as u32) {
        BoundVerdict::Holds
    } else {
        BoundVerdict::Fails
    };

    // D m^m den^m <= 2 x^(|I2| + 2 c1) num^m
    let ((lo_num, lo_den), (hi_num, hi_den)) = e_brackets();
    let mu = m as u32;
    let mm = BigInt::from(m).pow(mu);
    let rhs_x = &two * xb.pow(i2.len() as u32 + 2 * c1v);
    let side = |num: &BigUint, den: &BigUint| {
        let lhs = &d * &mm * BigInt::from(den.pow(mu));
        let rhs = &rhs_x * BigInt::from(num.pow(mu));
        lhs <= rhs
    };
    let d_second = if side(&lo_num, &lo_den) {
        BoundVerdict::Holds
    } else if !side(&hi_num, &hi_den) {
        BoundVerdict::Fails
    } else {
        BoundVerdict::Undecided
    };

    let holds = endpoints_divisible
        && a_i1.ok()
        && a_i2.ok()
        && b.ok()
        && c_factorial_divides
        && c_quotient_divisible
        && d_first == BoundVerdict::Holds
        && d_second == BoundVerdict::Holds;
    Ok(Lemma4Report {
        p,
        i1,
        i2,
        d_exponent: v,
        endpoints_divisible,
        a_i1,
        a_i2,
        b,
        c_factorial_divides,
        c_quotient_divisible,
        d_first,
        d_second,
        holds,
    })
}

/// Every configuration a < b < c < d of four hits of one prime, all at least
/// `n0`, with b - a <= `max_len` and d - c <= `max_len`. I1 is the shorter of
/// (a, b] and (c, d]; x is taken to be p.
pub fn lemma4_configurations(store: &HitStore, n0: u64, max_len: u64, c1: GrowthExponent) -> Vec<Lemma4Input> {
    let mut out = Vec::new();
    for p in store.primes_with_hits() {
        let hits: Vec<(u64, Valuation)> = store
            .hits_for(p)
            .iter()
            .filter(|r| r.n >= n0)
            .map(|r| (r.n, r.ord))
            .collect();
        let h = hits.len();
        // (a, b] pairs within the length limit, ascending
        let mut pairs = Vec::new();
        for a in 0..h {
            for b in a + 1..h {
                if hits[b].0 - hits[a].0 > max_len {
                    break;
                }
                pairs.push((a, b));
            }
        }
        for &(a, b) in &pairs {
            for &(c, d) in pairs.iter().filter(|&&(c, _)| c > b) {
                let first = Interval::new(hits[a].0, hits[b].0);
                let second = Interval::new(hits[c].0, hits[d].0);
                let (i1, i2, ords) = if second.len() >= first.len() {
                    (first, second, [hits[a].1, hits[b].1, hits[c].1, hits[d].1])
                } else {
                    (second, first, [hits[c].1, hits[d].1, hits[a].1, hits[b].1])
                };
                out.push(Lemma4Input {
                    p,
                    i1,
                    i2,
                    ords,
                    x: p,
                    c1,
                });
            }
        }
    }
    out
}

/// Seeded sample of at most `count` items, in a reproducible order.
pub fn sample_configurations<T>(mut configs: Vec<T>, count: usize, seed: u64) -> Vec<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    configs.shuffle(&mut rng);
    configs.truncate(count);
    configs
}
