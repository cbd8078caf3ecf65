use serde::Serialize;

use super::store::HitStore;
use super::SieveError;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NpRatioRow {
    pub p: u64,
    pub count: u64,
    /// |J|^(2/3)
    pub scale: f64,
    pub ratio: f64,
    /// Whether J lies inside [1, p).
    pub j_below_p: bool,
}

/// Empirical #(N_p ∩ J) / |J|^(2/3) per prime. Report only: the constant it
/// would be compared against is not known.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NpRatioReport {
    pub j_lo: u64,
    pub j_hi: u64,
    pub rows: Vec<NpRatioRow>,
    pub max_ratio: f64,
}

/// Rows for every prime of the store, counting hits with n in [j_lo, j_hi).
pub fn np_ratio_report(store: &HitStore, j_lo: u64, j_hi: u64) -> Result<NpRatioReport, SieveError> {
    if j_hi <= j_lo {
        return Err(SieveError::IntervalTooShort { lo: j_lo, hi: j_hi });
    }
    let len = (j_hi - j_lo) as f64;
    let scale = len.powf(2.0 / 3.0);
    let rows: Vec<NpRatioRow> = store
        .primes()
        .into_iter()
        .map(|p| {
            let count = store.hits_for(p).iter().filter(|r| (j_lo..j_hi).contains(&r.n)).count() as u64;
            NpRatioRow {
                p,
                count,
                scale,
                ratio: count as f64 / scale,
                j_below_p: j_lo >= 1 && j_hi <= p,
            }
        })
        .collect();
    let max_ratio = rows.iter().map(|r| r.ratio).fold(0.0, f64::max);
    Ok(NpRatioReport {
        j_lo,
        j_hi,
        rows,
        max_ratio,
    })
}
