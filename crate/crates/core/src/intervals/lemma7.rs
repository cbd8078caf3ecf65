//! Bookkeeping behind the main inequality for one prime: good-interval
//! lengths, the per-k shortest-interval selections and the margin.

use std::collections::HashSet;

use serde::Serialize;

use super::family::{Interval, IntervalFamily};
use super::good::{classify_good, GoodnessParams, GUARD};
use super::IntervalError;
use crate::arith::{GrowthExponent, Valuation};
use crate::primes::PrimeTable;
use crate::wilson::HitStore;

pub const DEFAULT_T_MIN: u64 = 16;

pub const LEMMA7_NOTE: &str = "report-only, hypothesis scaled down";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Lemma7Input {
    pub p: u64,
    /// (n, ord) pairs; order is irrelevant.
    pub hits: Vec<(u64, Valuation)>,
    /// J = [j_lo, j_hi)
    pub j_lo: u64,
    pub j_hi: u64,
    pub x: u64,
    pub eps0: f64,
    pub c1: GrowthExponent,
    pub t_min: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KSelection {
    pub k: u64,
    /// Whether k lies in 0..=t3.
    pub in_stated_range: bool,
    /// #(I(n_1..n_{t-k}) ∩ I_good)
    pub available: u64,
    /// t1 - 2k
    pub required: i64,
    /// Up to ceil(t^0.99) + 1 shortest intervals, ties by left endpoint.
    pub selected: Vec<Interval>,
    /// |I_i^(k)| <= gamma_{2k+i} for every i with 2k + i <= t1.
    pub within_gamma: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Lemma7Checks {
    pub gamma_ascending: bool,
    pub gamma_sum_within_j: bool,
    pub t1_at_most_t_minus_1: bool,
    /// gamma_{t2} <= |J| / t^0.99; `None` when t2 is not an index of gamma.
    pub gamma_t2: Option<bool>,
    /// Selections for k in 0..=t3; `None` when t3 < 0.
    pub selections_stated_range: Option<bool>,
    /// Counts and selections for every k with t - k >= 2.
    pub selections_all_k: bool,
    /// (t1 - j + 1) gamma_j <= |J| for every j.
    pub gamma_tail: bool,
    pub all_hold: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Lemma7Trace {
    pub p: u64,
    pub t: u64,
    pub j_len: u64,
    pub x: u64,
    pub eps0: f64,
    /// Points n_1..n_t, orders descending (ties by n).
    pub points: Vec<u64>,
    pub ords: Vec<Valuation>,
    pub t1: u64,
    pub gamma: Vec<u64>,
    pub t2: i64,
    pub t3: i64,
    pub selections: Vec<KSelection>,
    pub checks: Lemma7Checks,
    pub lhs: f64,
    /// True when some order is only a lower bound, making lhs a lower bound.
    pub lhs_is_lower_bound: bool,
    pub rhs_main: f64,
    pub margin: f64,
    pub note: &'static str,
}

fn check_preconditions(input: &Lemma7Input) -> Result<(), IntervalError> {
    let bad = |s: String| Err(IntervalError::PreconditionViolated(s));
    let Lemma7Input {
        p,
        j_lo,
        j_hi,
        x,
        eps0,
        t_min,
        ..
    } = *input;
    let t = input.hits.len() as u64;
    if !(eps0 > 0.0 && eps0 < 0.01) {
        return bad(format!("eps0 = {eps0} outside (0, 0.01)"));
    }
    if t < t_min.max(2) {
        return bad(format!("t = {t} below t_min = {}", t_min.max(2)));
    }
    if !crate::primes::is_prime(p) {
        return bad(format!("{p} is not prime"));
    }
    if j_hi <= j_lo {
        return bad(format!("J = [{j_lo}, {j_hi}) is empty"));
    }
    if (j_lo as f64) < eps0 * x as f64 * (1.0 - GUARD) {
        return bad(format!("J starts at {j_lo} < eps0 * x"));
    }
    if j_hi > x.min(p) {
        return bad(format!("J ends at {j_hi} > min(x, p) = {}", x.min(p)));
    }
    let mut ns: Vec<u64> = input.hits.iter().map(|h| h.0).collect();
    ns.sort_unstable();
    if ns.windows(2).any(|w| w[0] == w[1]) {
        return bad("points are not distinct".into());
    }
    if let Some(&n) = ns.iter().find(|&&n| n < j_lo || n >= j_hi) {
        return bad(format!("point {n} outside J"));
    }
    Ok(())
}

fn select_shortest(mut ivs: Vec<Interval>, count: usize) -> Vec<Interval> {
    ivs.sort_by(Interval::cmp_by_len);
    ivs.truncate(count);
    ivs
}

/// Builds the trace. The inequality itself is only reported as a margin;
/// the structural checks are exact.
pub fn lemma7_margin(input: &Lemma7Input, primes: &PrimeTable) -> Result<Lemma7Trace, IntervalError> {
    check_preconditions(input)?;
    let Lemma7Input {
        p,
        j_lo,
        j_hi,
        x,
        eps0,
        c1,
        ..
    } = *input;
    let t = input.hits.len() as u64;
    let tf = t as f64;
    let j_len = j_hi - j_lo;

    let mut hits = input.hits.clone();
    hits.sort_by(|a, b| b.1.lower_bound().cmp(&a.1.lower_bound()).then(a.0.cmp(&b.0)));
    let points: Vec<u64> = hits.iter().map(|h| h.0).collect();
    let ords: Vec<Valuation> = hits.iter().map(|h| h.1).collect();

    let params = GoodnessParams::new(x as f64, t, c1.value())?;
    let class = classify_good(&IntervalFamily::build(&points)?, params, primes)?;
    let good: HashSet<Interval> = class.good().collect();
    let t1 = good.len() as u64;
    let gamma: Vec<u64> = select_shortest(good.iter().copied().collect(), good.len())
        .iter()
        .map(|iv| iv.len())
        .collect();

    let t099 = tf.powf(0.99);
    let t2 = (tf - 3.0 * t099).floor() as i64;
    let t3 = ((tf - 5.0 * t099) / 2.0).floor() as i64;
    let take = t099.ceil() as usize + 1;

    let mut selections = Vec::new();
    for k in 0..=t - 2 {
        let fam = IntervalFamily::build(&points[..(t - k) as usize])?;
        let avail: Vec<Interval> = fam.intervals().iter().copied().filter(|iv| good.contains(iv)).collect();
        let available = avail.len() as u64;
        let selected = select_shortest(avail, take);
        let within_gamma = selected
            .iter()
            .enumerate()
            .filter_map(|(i, iv)| gamma.get(2 * k as usize + i).map(|g| iv.len() <= *g))
            .all(|ok| ok);
        selections.push(KSelection {
            k,
            in_stated_range: (k as i64) <= t3,
            available,
            required: t1 as i64 - 2 * k as i64,
            selected,
            within_gamma,
        });
    }

    let gamma_sum: u64 = gamma.iter().sum();
    let gamma_t2 =
        (t2 >= 1 && t2 as u64 <= t1).then(|| gamma[t2 as usize - 1] as f64 <= j_len as f64 / t099 * (1.0 + GUARD));
    let sel_ok = |s: &KSelection| s.within_gamma && s.available as i64 >= s.required;
    let selections_stated_range = (t3 >= 0).then(|| selections.iter().filter(|s| s.in_stated_range).all(sel_ok));
    let gamma_tail = gamma.iter().enumerate().all(|(j, g)| (t1 - j as u64) * g <= j_len);
    let mut checks = Lemma7Checks {
        gamma_ascending: gamma.windows(2).all(|w| w[0] <= w[1]),
        gamma_sum_within_j: gamma_sum <= j_len,
        t1_at_most_t_minus_1: t1 < t,
        gamma_t2,
        selections_stated_range,
        selections_all_k: selections.iter().all(sel_ok),
        gamma_tail,
        all_hold: false,
    };
    checks.all_hold = checks.gamma_ascending
        && checks.gamma_sum_within_j
        && checks.t1_at_most_t_minus_1
        && checks.gamma_t2 != Some(false)
        && checks.selections_stated_range != Some(false)
        && checks.selections_all_k
        && checks.gamma_tail;

    let start = ((1.0 + eps0) / 2.0 * tf).ceil().max(1.0) as usize;
    let ord_sum: u64 = ords[start - 1..].iter().map(|o| o.lower_bound() as u64).sum();
    let lhs = (p as f64).ln() * ord_sum as f64;
    let xf = x as f64;
    let rhs_main = j_len as f64 / 2.0 * tf.ln() + xf * xf.ln() / tf.powf(0.98);
    Ok(Lemma7Trace {
        p,
        t,
        j_len,
        x,
        eps0,
        points,
        lhs_is_lower_bound: ords.iter().any(|o| o.exact().is_none()),
        ords,
        t1,
        gamma,
        t2,
        t3,
        selections,
        checks,
        lhs,
        rhs_main,
        margin: lhs - rhs_main,
        note: LEMMA7_NOTE,
    })
}

/// One instance per prime with at least `t_min` hits in J = [ceil(eps0 p), p),
/// taking x = p.
pub fn lemma7_instances(store: &HitStore, eps0: f64, t_min: u64, c1: GrowthExponent) -> Vec<Lemma7Input> {
    store
        .primes_with_hits()
        .into_iter()
        .filter_map(|p| {
            let j_lo = ((eps0 * p as f64).ceil() as u64).max(1);
            let hits: Vec<(u64, Valuation)> = store
                .hits_for(p)
                .iter()
                .filter(|r| r.n >= j_lo && r.n < p)
                .map(|r| (r.n, r.ord))
                .collect();
            (hits.len() as u64 >= t_min.max(2)).then_some(Lemma7Input {
                p,
                hits,
                j_lo,
                j_hi: p,
                x: p,
                eps0,
                c1,
                t_min,
            })
        })
        .collect()
}
