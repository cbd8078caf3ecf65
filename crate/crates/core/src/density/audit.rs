use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::constants::lambda_for;
use super::DensityError;
use crate::arith::{nfact_plus_f, Poly};
use crate::primes::{PrimeError, PrimeTable};

/// Rationals in the audit have denominators that are powers of this.
const SCALE: i128 = 1_000_000_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AuditConfig {
    pub x: u64,
    pub eps0: f64,
    pub lambda: f64,
}

impl AuditConfig {
    pub fn new(x: u64, eps0: f64) -> Result<Self, DensityError> {
        Self::with_lambda(x, eps0, lambda_for(eps0))
    }

    /// Rejects any lambda further than one ulp from 1 + 9 log 2 - 100 eps0.
    pub fn with_lambda(x: u64, eps0: f64, lambda: f64) -> Result<Self, DensityError> {
        if !(eps0 > 0.0 && eps0 < 0.01) {
            return Err(DensityError::BadAudit(format!("eps0 = {eps0} outside (0, 0.01)")));
        }
        if x < 1000 {
            return Err(DensityError::BadAudit(format!("x = {x} below 1000")));
        }
        let want = lambda_for(eps0);
        let ulp = f64::EPSILON * want.abs();
        if (lambda - want).abs() > ulp {
            return Err(DensityError::BadAudit(format!(
                "lambda = {lambda} does not equal 1 + 9 log 2 - 100 eps0 = {want}"
            )));
        }
        Ok(AuditConfig { x, eps0, lambda })
    }

    /// eps0 x > n0
    pub fn clears_threshold(&self, n0: u64) -> bool {
        self.eps0 * self.x as f64 > n0 as f64
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditReport {
    pub config: AuditConfig,
    /// lambda rounded up to a multiple of 1e-15, as that integer multiple.
    pub lambda_scaled: u64,
    pub primes_summed: u64,
    pub nonempty_windows: u64,
    /// sum over p <= lambda x of |J_p|
    pub sum_j: f64,
    /// sum |J_p| log^2 x / (9 log(2/(1+eps0))), over x^2 log x
    pub upper_coeff: f64,
    /// 1/2 - 2 eps0
    pub lower_coeff: f64,
    /// ((lambda - 1)/2) / (9 log(2/(1+eps0)))
    pub predicted_coeff: f64,
    /// upper_coeff / predicted_coeff
    pub ratio: f64,
    /// |ratio - 1|
    pub deviation: f64,
    /// sum_{p<=x} (1 - 1/lambda) p + sum_{x<p<=lambda x} (x - p/lambda)
    pub split_sum: f64,
    /// sum_j / split_sum
    pub split_ratio: f64,
}

/// Sums the window lengths |J_p| = |[max(p/lambda, eps0 x), min(p, x))| over
/// primes p <= lambda x with exact rationals. lambda is rounded up and eps0
/// down to multiples of 1e-15, so each window is rounded outward.
pub fn audit_log_z(cfg: &AuditConfig, primes: &PrimeTable) -> Result<AuditReport, DensityError> {
    let x = cfg.x as i128;
    let lam = (cfg.lambda * SCALE as f64).ceil() as i128;
    let eps = (cfg.eps0 * SCALE as f64).floor() as i128;
    // every quantity below is a numerator over q = lam * SCALE
    let q = lam * SCALE;
    let y = (x * lam / SCALE) as u64;
    if !primes.covers(2, y) {
        let (lo, hi) = primes.range();
        return Err(PrimeError::OracleGap {
            lo,
            hi,
            want_lo: 2,
            want_hi: y,
        }
        .into());
    }
    let eps_x = eps * x * lam;
    let mut sum = BigInt::zero();
    let mut nonempty = 0u64;
    let mut split_sum = 0.0;
    let lf = cfg.lambda;
    let xf = cfg.x as f64;
    let in_range = &primes.primes()[..primes.primes().partition_point(|&p| p <= y)];
    for &p in in_range {
        let pi = p as i128;
        let lo = (pi * SCALE * SCALE).max(eps_x);
        let hi = pi.min(x) * q;
        if hi > lo {
            sum += hi - lo;
            nonempty += 1;
        }
        let pf = p as f64;
        split_sum += if p <= cfg.x {
            (1.0 - 1.0 / lf) * pf
        } else {
            xf - pf / lf
        };
    }
    let sum_j = sum.to_f64().unwrap_or(f64::INFINITY) / q as f64;
    let lx = xf.ln();
    let k = 9.0 * (2.0 / (1.0 + cfg.eps0)).ln();
    let upper_coeff = sum_j * lx * lx / k / (xf * xf * lx);
    let predicted_coeff = (lf - 1.0) / 2.0 / k;
    let ratio = upper_coeff / predicted_coeff;
    Ok(AuditReport {
        config: *cfg,
        lambda_scaled: lam as u64,
        primes_summed: in_range.len() as u64,
        nonempty_windows: nonempty,
        sum_j,
        upper_coeff,
        lower_coeff: 0.5 - 2.0 * cfg.eps0,
        predicted_coeff,
        ratio,
        deviation: (ratio - 1.0).abs(),
        split_sum,
        split_ratio: sum_j / split_sum,
    })
}

/// Natural log of a positive big integer from its leading 64 bits.
pub fn ln_big(v: &BigUint) -> f64 {
    assert!(!v.is_zero(), "log of zero");
    let bits = v.bits();
    if bits <= 64 {
        return v.to_f64().expect("fits").ln();
    }
    let shift = bits - 64;
    let top = (v >> shift).to_f64().expect("fits");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StirlingReport {
    pub n: u64,
    /// log(n! + f(n))
    pub log_value: f64,
    pub n_log_n: f64,
    /// (log(n! + f(n)) - n log n) / n
    pub normalized: f64,
    /// normalized in [-2, 1]; only asserted for n >= 10.
    pub in_bracket: bool,
}

pub fn stirling_check(n: u64, f: &Poly) -> Result<StirlingReport, DensityError> {
    if n == 0 {
        return Err(DensityError::NotPositive { n });
    }
    let v = nfact_plus_f(n, f);
    let Some(mag) = v.to_biguint().filter(|m| !m.is_zero()) else {
        return Err(DensityError::NotPositive { n });
    };
    let log_value = ln_big(&mag);
    let nf = n as f64;
    let n_log_n = nf * nf.ln();
    let normalized = (log_value - n_log_n) / nf;
    Ok(StirlingReport {
        n,
        log_value,
        n_log_n,
        normalized,
        in_bracket: (-2.0..=1.0).contains(&normalized),
    })
}
