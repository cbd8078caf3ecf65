use rayon::prelude::*;
use serde::Serialize;

use super::scan::{lift_hits, scan_prime, Window};
use super::store::{HitRecord, HitSink, HitStore};
use super::SieveError;
use crate::arith::{Poly, Valuation, DEFAULT_LIFT_CAP};
use crate::primes::primes_in;

/// Above this prime, `OrdMode::Auto` records orders as ">=1".
pub const AUTO_ORD_LIMIT: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrdMode {
    On,
    Off,
    Auto,
}

impl OrdMode {
    fn lifts(self, p: u64) -> bool {
        match self {
            OrdMode::On => true,
            OrdMode::Off => false,
            OrdMode::Auto => p <= AUTO_ORD_LIMIT,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SieveConfig {
    pub f: Poly,
    pub f_id: String,
    pub prime_lo: u64,
    pub prime_hi: u64,
    pub window: Window,
    pub ord: OrdMode,
    pub threads: usize,
    pub lift_cap: u32,
}

impl SieveConfig {
    pub fn new(f: Poly, prime_lo: u64, prime_hi: u64) -> Self {
        SieveConfig {
            f,
            f_id: "f0".to_string(),
            prime_lo,
            prime_hi,
            window: Window::All,
            ord: OrdMode::Auto,
            threads: 1,
            lift_cap: DEFAULT_LIFT_CAP,
        }
    }

    pub fn validate(&self) -> Result<(), SieveError> {
        if self.prime_lo < 2 || self.prime_lo > self.prime_hi {
            return Err(SieveError::Config(format!(
                "prime range [{}, {}] needs 2 <= pmin <= pmax",
                self.prime_lo, self.prime_hi
            )));
        }
        if self.threads == 0 {
            return Err(SieveError::Config("threads must be positive".into()));
        }
        if let Window::Range { lo, hi } = self.window {
            if lo > hi {
                return Err(SieveError::Config(format!("window {lo}:{hi} is inverted")));
            }
        }
        if self.lift_cap == 0 {
            return Err(SieveError::Config("lift cap must be positive".into()));
        }
        Ok(())
    }
}

/// Splits ascending primes into contiguous chunks of roughly equal scan cost.
fn partition_by_cost(primes: &[u64], window: Window, n_chunks: usize) -> Vec<&[u64]> {
    let cost = |p: u64| window.clamp_to(p).1.max(1);
    let total: u64 = primes.iter().map(|&p| cost(p)).sum();
    let target = (total / n_chunks.max(1) as u64).max(1);
    let mut chunks = Vec::new();
    let mut start = 0;
    let mut acc = 0;
    for (i, &p) in primes.iter().enumerate() {
        acc += cost(p);
        if acc >= target {
            chunks.push(&primes[start..=i]);
            start = i + 1;
            acc = 0;
        }
    }
    if start < primes.len() {
        chunks.push(&primes[start..]);
    }
    chunks
}

fn scan_chunk(cfg: &SieveConfig, chunk: &[u64]) -> Result<(Vec<HitRecord>, u64), SieveError> {
    let mut out = Vec::new();
    let mut steps = 0;
    for &p in chunk {
        let (_, hi) = cfg.window.clamp_to(p);
        let hits = scan_prime(p, cfg.window, &cfg.f);
        steps += hi.saturating_sub(1);
        let ords = if cfg.ord.lifts(p) {
            steps += hits.iter().max().copied().unwrap_or(0);
            lift_hits(p, &hits, &cfg.f, cfg.lift_cap).map_err(|source| SieveError::Arith { p, source })?
        } else {
            vec![Valuation::AtLeast(1); hits.len()]
        };
        out.extend(hits.into_iter().zip(ords).map(|(n, ord)| HitRecord {
            p,
            n,
            ord,
            f_id: cfg.f_id.clone(),
        }));
    }
    Ok((out, steps))
}

/// Scans every prime in the configured range. The result is identical for
/// any thread count; on error nothing is returned.
pub fn run_sieve(cfg: &SieveConfig) -> Result<HitStore, SieveError> {
    cfg.validate()?;
    let primes = primes_in(cfg.prime_lo, cfg.prime_hi)?.primes;
    let chunks = partition_by_cost(&primes, cfg.window, cfg.threads * 16);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| SieveError::Config(e.to_string()))?;
    let sink = HitSink::new();
    pool.install(|| {
        chunks.par_iter().try_for_each(|chunk| {
            let (records, steps) = scan_chunk(cfg, chunk)?;
            sink.append(records, chunk, steps);
            Ok::<(), SieveError>(())
        })
    })?;
    sink.finalize(Some((cfg.prime_lo, cfg.prime_hi)))
}
