use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::float::FloatCore;
use serde::Serialize;

use super::DensityError;
use crate::wilson::HitStore;

/// Certified lower bounds L(n) <= P(n! + f(n)) for 1 <= n <= n_max.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundTable {
    pub n_max: u64,
    /// Upper end of the prime range the hits came from.
    pub p_max: Option<u64>,
    /// `bounds[n - 1]` is L(n), `None` when no hit involves n.
    bounds: Vec<Option<u64>>,
}

impl BoundTable {
    pub fn get(&self, n: u64) -> Option<u64> {
        if n == 0 || n > self.n_max {
            return None;
        }
        self.bounds[(n - 1) as usize]
    }

    /// (n, L(n)) for every n with a bound.
    pub fn entries(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.bounds
            .iter()
            .enumerate()
            .filter_map(|(i, b)| b.map(|p| (i as u64 + 1, p)))
    }

    pub fn from_entries(n_max: u64, entries: &[(u64, u64)]) -> Self {
        let mut bounds = vec![None; n_max as usize];
        for &(n, p) in entries {
            if (1..=n_max).contains(&n) {
                let slot = &mut bounds[(n - 1) as usize];
                *slot = (*slot).max(Some(p));
            }
        }
        BoundTable {
            n_max,
            p_max: None,
            bounds,
        }
    }
}

/// L(n) = largest p with a hit (p, n), for n <= n_max.
pub fn build_bound_table(store: &HitStore, n_max: u64) -> BoundTable {
    let entries: Vec<(u64, u64)> = store.records().iter().map(|r| (r.n, r.p)).collect();
    let mut table = BoundTable::from_entries(n_max, &entries);
    table.p_max = store.prime_bound();
    table
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityReport {
    pub lambda: f64,
    pub eps0: Option<f64>,
    pub n_lo: u64,
    pub n_hi: u64,
    pub count_above: u64,
    /// count_above / (n_hi - n_lo + 1)
    pub density: f64,
    /// Always true: the sieve certifies membership, never non-membership.
    pub lower_bound_only: bool,
}

/// Exact test p > lambda * n.
fn exceeds(p: u64, lambda: f64, n: u64) -> bool {
    let (mant, exp, _) = lambda.integer_decode();
    // lambda = mant * 2^exp
    let lhs = BigUint::from(p);
    let rhs = BigUint::from(mant) * n;
    let ord = if exp >= 0 {
        lhs.cmp(&(rhs << exp as usize))
    } else {
        (lhs << (-exp) as usize).cmp(&rhs)
    };
    ord == Ordering::Greater
}

/// Counts n in [n_lo, n_hi] with L(n) > lambda n.
pub fn density_above(
    table: &BoundTable,
    lambda: f64,
    n_lo: u64,
    n_hi: u64,
    eps0: Option<f64>,
) -> Result<DensityReport, DensityError> {
    if !(lambda > 1.0 && lambda.is_finite()) {
        return Err(DensityError::BadLambda(lambda));
    }
    if n_lo == 0 || n_lo > n_hi {
        return Err(DensityError::BadRange { lo: n_lo, hi: n_hi });
    }
    let count_above = (n_lo..=n_hi)
        .filter(|&n| table.get(n).is_some_and(|p| exceeds(p, lambda, n)))
        .count() as u64;
    Ok(DensityReport {
        lambda,
        eps0,
        n_lo,
        n_hi,
        count_above,
        density: count_above as f64 / (n_hi - n_lo + 1) as f64,
        lower_bound_only: true,
    })
}
