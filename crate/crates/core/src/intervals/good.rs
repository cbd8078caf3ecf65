use serde::Serialize;

use super::family::{Interval, IntervalFamily};
use super::IntervalError;
use crate::primes::{PrimeError, PrimeTable};

/// Relative guard band for real-valued comparisons.
pub const GUARD: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GoodnessParams {
    pub x: f64,
    pub t: u64,
    pub c1: u32,
}

impl GoodnessParams {
    pub fn new(x: f64, t: u64, c1: u32) -> Result<Self, IntervalError> {
        if !(x >= 1.0 && x.is_finite()) {
            return Err(IntervalError::BadParams(format!("x = {x} must be at least 1")));
        }
        if t < 2 {
            return Err(IntervalError::BadParams(format!("t = {t} must be at least 2")));
        }
        Ok(GoodnessParams { x, t, c1 })
    }

    /// x^0.99 / t
    pub fn short_threshold(&self) -> f64 {
        self.x.powf(0.99) / self.t as f64
    }

    /// 2 c1 + 1
    pub fn primes_needed(&self) -> u64 {
        2 * self.c1 as u64 + 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClassifiedInterval {
    pub interval: Interval,
    pub short: bool,
    /// Primes in the interval; `None` when not needed (short intervals).
    pub primes: Option<u64>,
    pub good: bool,
}

/// Exhaustive, exclusive split of a family into good and not-good intervals.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Classification {
    pub params: GoodnessParams,
    pub entries: Vec<ClassifiedInterval>,
}

impl Classification {
    pub fn good(&self) -> impl Iterator<Item = Interval> + '_ {
        self.entries.iter().filter(|e| e.good).map(|e| e.interval)
    }

    pub fn not_good(&self) -> impl Iterator<Item = Interval> + '_ {
        self.entries.iter().filter(|e| !e.good).map(|e| e.interval)
    }

    pub fn good_count(&self) -> usize {
        self.entries.iter().filter(|e| e.good).count()
    }

    pub fn not_good_count(&self) -> usize {
        self.entries.len() - self.good_count()
    }

    pub fn is_good(&self, iv: Interval) -> bool {
        self.entries.iter().any(|e| e.good && e.interval == iv)
    }
}

/// Splits `fam` into good intervals (short, or holding at least 2 c1 + 1
/// primes) and the rest. Lengths within the guard band of the threshold
/// count as short.
pub fn classify_good(
    fam: &IntervalFamily,
    params: GoodnessParams,
    primes: &PrimeTable,
) -> Result<Classification, IntervalError> {
    let (lo, hi) = (fam.min(), fam.max());
    if !primes.covers(lo, hi) {
        let (olo, ohi) = primes.range();
        return Err(PrimeError::OracleGap {
            lo: olo,
            hi: ohi,
            want_lo: lo,
            want_hi: hi,
        }
        .into());
    }
    let threshold = params.short_threshold() * (1.0 + GUARD);
    let entries = fam
        .intervals()
        .iter()
        .map(|&iv| {
            let short = iv.len() as f64 <= threshold;
            if short {
                return Ok(ClassifiedInterval {
                    interval: iv,
                    short,
                    primes: None,
                    good: true,
                });
            }
            let count = primes.count_in(iv.lo + 1, iv.hi)?;
            Ok(ClassifiedInterval {
                interval: iv,
                short,
                primes: Some(count),
                good: count >= params.primes_needed(),
            })
        })
        .collect::<Result<Vec<_>, IntervalError>>()?;
    Ok(Classification { params, entries })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Cor6Report {
    pub t: u64,
    pub intervals: u64,
    /// Number of intervals that are not good.
    pub m: u64,
    /// t - 2 t^0.99
    pub bound: f64,
    pub binding: bool,
    pub holds: bool,
    /// t^2 / x^(13/18 - 0.03)
    pub interior_bound: f64,
    pub interior_holds: bool,
    /// t <= coeff * x^(2/3)
    pub t_in_range: bool,
}

/// Counts the not-good intervals of a classified family and compares
/// t - 1 - m with t - 2 t^0.99.
pub fn check_cor6(class: &Classification, range_coeff: f64) -> Cor6Report {
    let GoodnessParams { x, t, .. } = class.params;
    let tf = t as f64;
    let m = class.not_good_count() as u64;
    let good = class.good_count() as f64;
    let bound = tf - 2.0 * tf.powf(0.99);
    let interior_bound = tf * tf / x.powf(13.0 / 18.0 - 0.03);
    Cor6Report {
        t,
        intervals: class.entries.len() as u64,
        m,
        bound,
        binding: bound > 0.0,
        holds: good >= bound - GUARD * bound.abs(),
        interior_bound,
        interior_holds: m as f64 <= interior_bound * (1.0 + GUARD),
        t_in_range: tf <= range_coeff * x.powf(2.0 / 3.0) * (1.0 + GUARD),
    }
}
