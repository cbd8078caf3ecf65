//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nfact_core::arith::{factorial_mod, SmallNThreshold};
use nfact_core::density::{audit_log_z, build_bound_table, closed_form_constants, AuditConfig, DEFAULT_EPS0};
use nfact_core::factor::{p_exact, LargestPrime, DEFAULT_EFFORT};
use nfact_core::intervals::{
    classify_good, lemma4_configurations, lemma4_exact_check, lemma7_instances, lemma7_margin, removal_count,
    sample_configurations, GoodnessParams, IntervalFamily,
};
use nfact_core::primes::{heath_brown_sum, primes_up_to, GapTable, PrimeTable};
use nfact_core::wilson::{run_sieve, scan_prime, HitStore, OrdMode, SieveConfig, Window};
use nfact_core::{GrowthExponent, Poly};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const SEED: u64 = 20_240_601;

fn threads() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

fn sieve(f: &Poly, hi: u64, ord: OrdMode, threads: usize) -> HitStore {
    let mut cfg = SieveConfig::new(f.clone(), 2, hi);
    cfg.ord = ord;
    cfg.threads = threads;
    run_sieve(&cfg).expect("sieve")
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    if elapsed <= limit {
        Ok(())
    } else {
        Err(format!("{what} took {elapsed:.1?}, limit {limit:?}"))
    }
}

fn c1_constants() -> Outcome {
    let start = Instant::now();
    let printed = [7.238, 1.380, 1.293, 1.263, 1.320];
    let named = closed_form_constants().named();
    let mut parts = Vec::new();
    for ((key, value), want) in named.iter().zip(printed) {
        if (value - want).abs() > 5e-4 {
            return Err(format!("{key} = {value}, printed {want}"));
        }
        parts.push(format!("{key}={value:.6}"));
    }
    if named[0].1 <= 7.238 {
        return Err(format!("1+9log2 = {} is not above 7.238", named[0].1));
    }
    within(start.elapsed(), Duration::from_secs(1), "constants")?;
    Ok(parts.join(" "))
}

fn c2_wilson_identity() -> Outcome {
    let start = Instant::now();
    let primes = primes_up_to(100_000);
    let bad: Vec<u64> = primes
        .iter()
        .copied()
        .filter(|&p| factorial_mod(p - 1, p) != p - 1)
        .collect();
    if let Some(p) = bad.first() {
        return Err(format!("{} failures, first p = {p}", bad.len()));
    }
    within(start.elapsed(), Duration::from_secs(60), "identity suite")?;
    Ok(format!("{} primes, {:.2?}", primes.len(), start.elapsed()))
}

fn c3_completeness() -> Outcome {
    let limit = 1000u64;
    let mut facts = vec![BigInt::one()];
    for n in 1..limit {
        let next = &facts[n as usize - 1] * n;
        facts.push(next);
    }
    let primes = primes_up_to(limit);
    let mut total = 0;
    for coeffs in ["1", "-1", "1,0,1"] {
        let f: Poly = coeffs.parse().unwrap();
        for &p in &primes {
            let pb = BigInt::from(p);
            let want: Vec<u64> = (1..p)
                .filter(|&n| ((&facts[n as usize] + f.eval_u64(n)) % &pb).is_zero())
                .collect();
            let got = scan_prime(p, Window::All, &f);
            if got != want {
                return Err(format!("f={coeffs} p={p}: scan {got:?}, brute force {want:?}"));
            }
            total += want.len();
        }
    }
    Ok(format!("{} primes x 3 polynomials, {total} hits agree", primes.len()))
}

fn c4_symmetry() -> Outcome {
    let plus = sieve(&Poly::constant(1).unwrap(), 10_000, OrdMode::Off, threads());
    let minus = sieve(&Poly::constant(-1).unwrap(), 10_000, OrdMode::Off, threads());
    let key = |s: &HitStore| s.records().iter().map(|r| (r.p, r.n)).collect::<BTreeSet<_>>();
    let (plus_set, minus_set) = (key(&plus), key(&minus));
    let (mut odd, mut even) = (0, 0);
    for &(p, n) in &plus_set {
        if p < 5 || n > p - 2 {
            continue;
        }
        let m = p - 1 - n;
        if n % 2 == 1 && n >= 3 {
            if !plus_set.contains(&(p, m)) {
                return Err(format!("f=1 hit (p={p}, n={n}) lacks f=1 companion {m}"));
            }
            odd += 1;
        } else if n % 2 == 0 {
            if !minus_set.contains(&(p, m)) {
                return Err(format!("f=1 hit (p={p}, n={n}) lacks f=-1 companion {m}"));
            }
            even += 1;
        }
    }
    Ok(format!("{odd} odd and {even} even hits paired"))
}

fn c5_cross_check() -> Outcome {
    let f = Poly::constant(1).unwrap();
    // trial-division oracle for P(n! + 1), n = 1..12
    let oracle: [u64; 12] = [2, 3, 7, 5, 11, 103, 71, 661, 269, 329_891, 39_916_801, 2_834_329];
    for (i, &want) in oracle.iter().enumerate() {
        let n = i as u64 + 1;
        let got = p_exact(n, &f, DEFAULT_EFFORT).map_err(|e| e.to_string())?;
        if got != LargestPrime::Exact(BigUint::from(want)) {
            return Err(format!("P({n}! + 1) = {got}, oracle {want}"));
        }
    }
    let p_max = 100_000;
    let store = sieve(&f, p_max, OrdMode::Off, threads());
    let table = build_bound_table(&store, 12);
    let mut compared = 0;
    for (i, &want) in oracle.iter().enumerate() {
        let n = i as u64 + 1;
        if want <= p_max {
            if table.get(n) != Some(want) {
                return Err(format!("L({n}) = {:?}, P = {want}", table.get(n)));
            }
            compared += 1;
        }
    }
    Ok(format!("12 exact values; L(n) = P(n) at {compared} n with P <= 1e5"))
}

fn c6_lemma4() -> Outcome {
    let start = Instant::now();
    let mut configs = Vec::new();
    for coeffs in ["1", "-1", "1,0,1"] {
        let f: Poly = coeffs.parse().unwrap();
        let candidate = SmallNThreshold::known(&f).is_none().then_some(2);
        let n0 = SmallNThreshold::resolve(&f, candidate)
            .map_err(|e| format!("f={coeffs}: {e}"))?
            .n0;
        let store = sieve(&f, 10_000, OrdMode::On, threads());
        let c1 = GrowthExponent::for_poly(&f);
        for input in lemma4_configurations(&store, n0, 2000, c1) {
            configs.push((f.clone(), input));
        }
    }
    let total = configs.len();
    let configs = sample_configurations(configs, total, SEED);
    for (f, input) in &configs {
        let r = lemma4_exact_check(f, input).map_err(|e| format!("f={f}: {e}"))?;
        if !r.holds {
            return Err(format!("f={f}: {r:?}"));
        }
    }
    if total < 1000 {
        return Err(format!("only {total} configurations"));
    }
    within(start.elapsed(), Duration::from_secs(600), "configurations")?;
    Ok(format!(
        "{total} configurations (seed {SEED}), all clauses hold, {:.1?}",
        start.elapsed()
    ))
}

fn c7_interval_families() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let x = 100_000u64;
    let primes = PrimeTable::up_to(x);
    for trial in 0..10_000 {
        let t = rng.gen_range(3..=50);
        let mut set = BTreeSet::new();
        while set.len() < t {
            set.insert(rng.gen_range(1..x));
        }
        let sorted: Vec<u64> = set.into_iter().collect();
        let fam = IntervalFamily::build(&sorted).map_err(|e| e.to_string())?;
        let ivs = fam.intervals();
        if ivs.len() != t - 1 || ivs.windows(2).any(|w| !w[0].is_disjoint(w[1]) || w[0].hi != w[1].lo) {
            return Err(format!("trial {trial}: bad family for {sorted:?}"));
        }
        let mut order = sorted.clone();
        for i in (1..order.len()).rev() {
            order.swap(i, rng.gen_range(0..=i));
        }
        for k in 3..=t {
            let added = removal_count(&order, k).map_err(|e| e.to_string())?;
            if added > 2 {
                return Err(format!("trial {trial}: {added} new intervals at k = {k} for {order:?}"));
            }
        }
        let params = GoodnessParams::new(x as f64, t as u64, rng.gen_range(0..3)).map_err(|e| e.to_string())?;
        let a = classify_good(&fam, params, &primes).map_err(|e| e.to_string())?;
        let b = classify_good(&IntervalFamily::build(&order).unwrap(), params, &primes).map_err(|e| e.to_string())?;
        if a != b {
            return Err(format!("trial {trial}: classification depends on order"));
        }
    }
    Ok("10000 random point sets (t in 3..=50)".into())
}

fn c8_lemma7() -> Outcome {
    let f = Poly::constant(1).unwrap();
    let store = sieve(&f, 10_000, OrdMode::On, threads());
    let primes = PrimeTable::up_to(10_000);
    let inputs = lemma7_instances(&store, DEFAULT_EPS0, 2, GrowthExponent::for_poly(&f));
    if inputs.len() < 100 {
        return Err(format!("only {} instances", inputs.len()));
    }
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for input in &inputs {
        let t = lemma7_margin(input, &primes).map_err(|e| format!("p={}: {e}", input.p))?;
        let c = &t.checks;
        let ok = c.all_hold
            && c.gamma_ascending
            && c.gamma_sum_within_j
            && c.gamma_t2 != Some(false)
            && c.selections_stated_range != Some(false)
            && c.selections_all_k;
        if !ok {
            return Err(format!("p={}: {c:?}", t.p));
        }
        lo = lo.min(t.margin);
        hi = hi.max(t.margin);
    }
    Ok(format!(
        "{} instances (t_min 2), margin in [{lo:.1}, {hi:.1}] (report-only)",
        inputs.len()
    ))
}

fn c9_gap_sums() -> Outcome {
    let start = Instant::now();
    let small = heath_brown_sum(10);
    if small.sum != BigUint::from(25u8) {
        return Err(format!("sum at 10 = {}", small.sum));
    }
    let big = heath_brown_sum(1_000_000);
    if !big.cauchy_schwarz_floor_holds() {
        return Err("Cauchy-Schwarz floor fails at 1e6".into());
    }
    let table = GapTable::new(1_000_000);
    if table.gap_sum() != table.next_prime_after() - 2 {
        return Err(format!(
            "gaps sum to {}, next prime {}",
            table.gap_sum(),
            table.next_prime_after()
        ));
    }
    if table.square_sum() != big.sum {
        return Err("square sums disagree".into());
    }
    within(start.elapsed(), Duration::from_secs(10), "gap sums")?;
    Ok(format!("sum(10) = 25, sum(1e6) = {}, ratio {:.4}", big.sum, big.ratio))
}

fn c10_audit() -> Outcome {
    let mut devs = Vec::new();
    let mut parts = Vec::new();
    for x in [10_000u64, 100_000, 1_000_000] {
        let cfg = AuditConfig::new(x, DEFAULT_EPS0).map_err(|e| e.to_string())?;
        let primes = PrimeTable::up_to((cfg.lambda * x as f64).floor() as u64 + 1);
        let r = audit_log_z(&cfg, &primes).map_err(|e| e.to_string())?;
        parts.push(format!("x={x}: ratio {:.4}, dev {:.2}%", r.ratio, 100.0 * r.deviation));
        devs.push(r.deviation);
    }
    let detail = parts.join("; ");
    if devs[1] >= 0.10 {
        return Err(format!("deviation at 1e5 is {:.2}%: {detail}", 100.0 * devs[1]));
    }
    if !(devs[0] > devs[1] && devs[1] > devs[2]) {
        return Err(format!("deviation not shrinking: {detail}"));
    }
    Ok(detail)
}

fn c11_performance() -> Outcome {
    let f = Poly::constant(1).unwrap();
    let mut outputs = Vec::new();
    let mut times = Vec::new();
    for _ in 0..2 {
        let start = Instant::now();
        let store = sieve(&f, 300_000, OrdMode::On, 8);
        let mut buf = Vec::new();
        store.write_csv(&mut buf).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        within(elapsed, Duration::from_secs(300), "sieve to 3e5")?;
        times.push(elapsed);
        outputs.push(buf);
    }
    if outputs[0] != outputs[1] {
        return Err("two runs differ".into());
    }
    Ok(format!(
        "{} bytes, identical; runs {:.1?} and {:.1?} on 8 threads ({} cores)",
        outputs[0].len(),
        times[0],
        times[1],
        threads()
    ))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("constants", c1_constants),
        ("Wilson identity to 1e5", c2_wilson_identity),
        ("sieve completeness vs brute force", c3_completeness),
        ("Wilson symmetry", c4_symmetry),
        ("exact cross-check", c5_cross_check),
        ("four-hit exact checks", c6_lemma4),
        ("interval-family properties", c7_interval_families),
        ("ordered-hit structural trace", c8_lemma7),
        ("gap sums", c9_gap_sums),
        ("audit coherence", c10_audit),
        ("performance and determinism", c11_performance),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2} {name} [{secs:.2}s]: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {:>2} {name} [{secs:.2}s]: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
