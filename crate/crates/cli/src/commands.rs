use std::io::Write;
use std::path::Path;

use anyhow::{anyhow, Context};
use serde::Serialize;
use serde_json::{json, Map, Value};

use nfact_core::arith::SmallNThreshold;
use nfact_core::density::{
    audit_log_z, build_bound_table, closed_form_constants, density_above, lambda_bound, lambda_for, AuditConfig,
};
use nfact_core::factor::{cross_check, factor_small, largest_prime, FactorError};
use nfact_core::intervals::{
    check_cor6, classify_good, lemma4_configurations, lemma4_exact_check, lemma7_instances, lemma7_margin,
    sample_configurations, GoodnessParams, IntervalFamily,
};
use nfact_core::primes::{heath_brown_sum, PrimeTable};
use nfact_core::wilson::{check_companion, np_ratio_report, run_sieve, HitStore, SieveConfig, Window};
use nfact_core::{GrowthExponent, Poly};

use crate::args::{ConstantsArgs, DensityArgs, ExactArgs, GapsArgs, SieveArgs, VerifyArgs, VerifyMode};
use crate::output::{emit_json, json_string, read_hits, write_atomic};
use crate::{CmdResult, Failure};

fn default_threads() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

pub fn sieve(a: SieveArgs) -> CmdResult {
    let mut cfg = SieveConfig::new(a.f, a.pmin, a.pmax);
    cfg.f_id = a.f_id;
    cfg.ord = a.ord.into();
    cfg.lift_cap = a.lift_cap;
    cfg.threads = a.threads.unwrap_or_else(default_threads);
    if let Some((lo, hi)) = a.window {
        cfg.window = Window::Range { lo, hi };
    }
    cfg.validate().map_err(|e| anyhow!(e))?;
    if let Some((lo, hi)) = a.ratio_window {
        if lo >= hi {
            return Err(anyhow!("--ratio-window {lo}:{hi} is empty").into());
        }
    }
    let store = run_sieve(&cfg).map_err(|e| anyhow!(e))?;
    write_atomic(&a.out, |w| Ok(store.write_csv(w)?))?;
    eprintln!(
        "{} hits over {} primes -> {}",
        store.len(),
        store.stats().scanned_primes.len(),
        a.out.display()
    );
    if let Some((lo, hi)) = a.ratio_window {
        let report = np_ratio_report(&store, lo, hi).map_err(|e| anyhow!(e))?;
        emit_json(&report, a.ratio_out.as_deref())?;
    }
    Ok(())
}

pub fn exact(a: ExactArgs) -> CmdResult {
    if a.nmax == 0 {
        return Err(anyhow!("--nmax must be positive").into());
    }
    let mut csv = String::from("n,value_digits,factors,status,P\n");
    for n in 1..=a.nmax {
        let fac = match factor_small(n, &a.f, a.effort) {
            Ok(fac) => fac,
            Err(FactorError::ValueNotAboveOne { .. }) => continue,
            Err(e) => return Err(anyhow!(e).into()),
        };
        let status = match (fac.is_complete(), fac.has_probable()) {
            (true, false) => "complete",
            (true, true) => "complete_probable",
            (false, _) => "partial",
        };
        let digits = fac.value.to_string().len();
        csv.push_str(&format!(
            "{n},{digits},{},{status},{}\n",
            fac.factor_string(),
            largest_prime(&fac)
        ));
    }
    write_atomic(&a.out, |w| Ok(w.write_all(csv.as_bytes())?))?;
    if let Some(path) = &a.hits {
        let store = read_hits(path)?;
        let table = build_bound_table(&store, a.nmax);
        let report = match cross_check(&table, &a.f, a.nmax, a.effort) {
            Ok(r) => r,
            Err(e @ FactorError::MismatchFound { .. }) => return Err(Failure::Invariant(e.to_string())),
            Err(e) => return Err(anyhow!(e).into()),
        };
        emit_json(&report, a.check_out.as_deref())?;
        if let Some(bad) = report.companions.iter().find(|c| !c.holds) {
            return Err(Failure::Invariant(format!("companion check {}", compact(bad))));
        }
    }
    Ok(())
}

pub fn density(a: DensityArgs) -> CmdResult {
    let (lo, hi) = a.range;
    let store = read_hits(&a.hits)?;
    let table = build_bound_table(&store, hi);
    let (lambda, eps0) = match a.lambda {
        Some(l) => (l, None),
        None => (lambda_for(a.eps0), Some(a.eps0)),
    };
    let report = density_above(&table, lambda, lo, hi, eps0).map_err(|e| anyhow!(e))?;
    let mut audits = Vec::new();
    for &x in &a.audit_x {
        let cfg = AuditConfig::new(x, a.eps0).map_err(|e| anyhow!(e))?;
        let primes = PrimeTable::up_to((cfg.lambda * x as f64).floor() as u64 + 1);
        audits.push(audit_log_z(&cfg, &primes).map_err(|e| anyhow!(e))?);
    }
    emit_json(&json!({ "density": report, "audits": audits }), a.out.as_deref())?;
    Ok(())
}

#[derive(Serialize)]
struct Verdict {
    mode: &'static str,
    instance: usize,
    holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    margin: Option<f64>,
    details: Value,
}

#[derive(Serialize)]
struct VerifyReport {
    mode: &'static str,
    seed: u64,
    f: String,
    instances: usize,
    failures: usize,
    verdicts: Vec<Verdict>,
}

fn compact<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).unwrap_or_else(|e| format!("<unserializable: {e}>"))
}

fn to_value<T: Serialize>(v: &T) -> anyhow::Result<Value> {
    Ok(serde_json::to_value(v)?)
}

fn prime_table_for(store: &HitStore) -> PrimeTable {
    PrimeTable::up_to(store.prime_bound().unwrap_or(2).max(2))
}

fn sample<T>(items: Vec<T>, count: Option<usize>, seed: u64) -> Vec<T> {
    match count {
        Some(c) => sample_configurations(items, c, seed),
        None => items,
    }
}

fn resolve_n0(f: &Poly, n0: Option<u64>) -> anyhow::Result<u64> {
    let t = SmallNThreshold::resolve(f, n0).context("pass --n0 for this polynomial")?;
    Ok(t.n0)
}

pub fn verify(a: VerifyArgs) -> CmdResult {
    let store = read_hits(&a.hits)?;
    let c1 = GrowthExponent::for_poly(&a.f);
    let mode = a.mode.name();
    eprintln!("verify {mode}: seed={}", a.seed);
    let mut verdicts = Vec::new();
    let mut push = |holds: bool, margin: Option<f64>, details: Value| {
        let instance = verdicts.len();
        verdicts.push(Verdict {
            mode,
            instance,
            holds,
            margin,
            details,
        });
    };
    match a.mode {
        VerifyMode::Lemma4 => {
            let n0 = resolve_n0(&a.f, a.n0)?;
            let configs = sample(lemma4_configurations(&store, n0, a.max_len, c1), a.count, a.seed);
            for input in &configs {
                match lemma4_exact_check(&a.f, input) {
                    Ok(r) => push(r.holds, None, to_value(&r)?),
                    Err(e) => push(false, None, json!({ "input": input, "error": e.to_string() })),
                }
            }
        }
        VerifyMode::Cor6 => {
            let n0 = resolve_n0(&a.f, a.n0)?;
            let primes = prime_table_for(&store);
            let mut families = Vec::new();
            for p in store.primes_with_hits() {
                let points: Vec<u64> = store.hits_for(p).iter().map(|r| r.n).filter(|&n| n >= n0).collect();
                if points.len() >= 2 {
                    families.push((p, points));
                }
            }
            for (p, points) in sample(families, a.count, a.seed) {
                let fam = IntervalFamily::build(&points).map_err(|e| anyhow!(e))?;
                let params = GoodnessParams::new(p as f64, points.len() as u64, c1.value()).map_err(|e| anyhow!(e))?;
                let class = classify_good(&fam, params, &primes).map_err(|e| anyhow!(e))?;
                let r = check_cor6(&class, a.range_coeff);
                push(r.holds, None, json!({ "p": p, "report": r }));
            }
        }
        VerifyMode::Lemma7 => {
            let primes = prime_table_for(&store);
            let inputs = sample(lemma7_instances(&store, a.eps0, a.t_min, c1), a.count, a.seed);
            for input in &inputs {
                match lemma7_margin(input, &primes) {
                    Ok(t) => push(t.checks.all_hold, Some(t.margin), to_value(&t)?),
                    Err(e) => push(false, None, json!({ "p": input.p, "error": e.to_string() })),
                }
            }
        }
        VerifyMode::Symmetry => {
            let c = match a.f.as_constant() {
                Some(c @ (1 | -1)) => c,
                _ => return Err(anyhow!("symmetry mode needs --f 1 or --f -1").into()),
            };
            let pairs: Vec<(u64, u64)> = store.records().iter().map(|r| (r.p, r.n)).collect();
            for (p, n) in sample(pairs, a.count, a.seed) {
                if let Some(chk) = check_companion(p, n, c) {
                    push(chk.holds, None, to_value(&chk)?);
                }
            }
        }
    }
    let failures = verdicts.iter().filter(|v| !v.holds).count();
    let report = VerifyReport {
        mode,
        seed: a.seed,
        f: a.f.to_string(),
        instances: verdicts.len(),
        failures,
        verdicts,
    };
    emit_json(&report, a.out.as_deref())?;
    if let Some(bad) = report.verdicts.iter().find(|v| !v.holds) {
        return Err(Failure::Invariant(format!(
            "{failures} of {} instances; first: {}",
            report.instances,
            compact(bad)
        )));
    }
    Ok(())
}

pub fn gaps(a: GapsArgs) -> CmdResult {
    if a.y.iter().any(|&y| y < 2) {
        return Err(anyhow!("--y values must be at least 2").into());
    }
    let mut csv = String::from("y,sum,prime_count,ratio\n");
    let mut first_bad = None;
    for &y in &a.y {
        let s = heath_brown_sum(y);
        csv.push_str(&format!("{},{},{},{}\n", s.y, s.sum, s.prime_count, s.ratio));
        if first_bad.is_none() && !s.cauchy_schwarz_floor_holds() {
            first_bad = Some(y);
        }
    }
    write_text(&csv, a.out.as_deref())?;
    if let Some(y) = first_bad {
        return Err(Failure::Invariant(format!(
            "gap square sum at y = {y} is below the Cauchy-Schwarz floor"
        )));
    }
    Ok(())
}

pub fn constants(a: ConstantsArgs) -> CmdResult {
    let mut map = Map::new();
    for (key, value) in closed_form_constants().named() {
        map.insert(key.to_string(), json!(value));
    }
    map.insert("eps0".into(), json!(a.eps0));
    map.insert("lambda".into(), json!(lambda_for(a.eps0)));
    map.insert("lambda_bound".into(), json!(lambda_bound(a.eps0)));
    write_text(&json_string(&Value::Object(map))?, a.out.as_deref())?;
    Ok(())
}

fn write_text(text: &str, path: Option<&Path>) -> anyhow::Result<()> {
    match path {
        Some(p) => write_atomic(p, |w| Ok(w.write_all(text.as_bytes())?)),
        None => Ok(std::io::stdout().write_all(text.as_bytes())?),
    }
}
