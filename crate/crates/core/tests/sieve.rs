use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use proptest::prelude::*;

use nfact_core::arith::{ord_nfact_plus_f, Valuation};
use nfact_core::primes::primes_up_to;
use nfact_core::wilson::{
    is_hit, lift_hits, run_sieve, scan_plain, scan_prime, HitStore, OrdMode, SieveConfig, Window,
};
use nfact_core::Poly;

fn naive_factorial_mod(n: u64, m: u64) -> u64 {
    (1..=n).fold(1u128 % m as u128, |acc, k| acc * k as u128 % m as u128) as u64
}

fn naive_hits(p: u64, f: &Poly) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut fact = BigInt::one();
    let mut out = Vec::new();
    for n in 1..p {
        fact *= n;
        if ((&fact + f.eval_u64(n)) % &pb).is_zero() {
            out.push(n);
        }
    }
    out
}

fn small_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(primes_up_to(3000))
}

fn small_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-20i64..20, 1..4).prop_filter_map("nonzero", |c| Poly::from_i64s(&c).ok())
}

#[test]
fn wilson_theorem_up_to_ten_thousand() {
    let f = Poly::constant(1).unwrap();
    for p in primes_up_to(10_000) {
        assert_eq!(naive_factorial_mod(p - 1, p), p - 1);
        assert!(is_hit(p, p - 1, &f), "p={p}");
    }
}

#[test]
fn composites_fail_wilson() {
    let f = Poly::constant(1).unwrap();
    for m in (4..2000u64).filter(|m| !primes_up_to(2000).contains(m)) {
        assert_ne!(naive_factorial_mod(m - 1, m), m - 1, "m={m}");
        assert!(!scan_plain(m, m - 1, m, &f).contains(&(m - 1)));
    }
}

#[test]
fn known_wilson_primes() {
    // p^2 | (p-1)! + 1 exactly for 5, 13, 563 below 10^4
    let f = Poly::constant(1).unwrap();
    let mut cfg = SieveConfig::new(f, 2, 10_000);
    cfg.ord = OrdMode::On;
    cfg.threads = 4;
    let store = run_sieve(&cfg).unwrap();
    let wilson: Vec<u64> = store
        .records()
        .iter()
        .filter(|r| r.n == r.p - 1 && r.ord.lower_bound() >= 2)
        .map(|r| r.p)
        .collect();
    assert_eq!(wilson, vec![5, 13, 563]);
}

#[test]
fn small_store_matches_bigint_oracle() {
    let polys = ["1", "-1", "1,0,1", "-3,2", "5,0,0,1"];
    for coeffs in polys {
        let f: Poly = coeffs.parse().unwrap();
        let mut cfg = SieveConfig::new(f.clone(), 2, 400);
        cfg.ord = OrdMode::On;
        cfg.threads = 3;
        let store = run_sieve(&cfg).unwrap();
        for p in primes_up_to(400) {
            let got: Vec<u64> = store.hits_for(p).iter().map(|r| r.n).collect();
            assert_eq!(got, naive_hits(p, &f), "f={coeffs} p={p}");
        }
    }
}

#[test]
fn window_restricts_hits() {
    let f = Poly::constant(1).unwrap();
    let mut cfg = SieveConfig::new(f.clone(), 2, 2000);
    cfg.window = Window::Range { lo: 10, hi: 50 };
    let store = run_sieve(&cfg).unwrap();
    assert!(store.records().iter().all(|r| (10..50).contains(&r.n)));
    for p in primes_up_to(2000) {
        let want: Vec<u64> = naive_hits_window(p, &f, 10, 50);
        let got: Vec<u64> = store.hits_for(p).iter().map(|r| r.n).collect();
        assert_eq!(got, want, "p={p}");
    }
}

fn naive_hits_window(p: u64, f: &Poly, lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(1)..hi.min(p))
        .filter(|&n| (naive_factorial_mod(n, p) as i128 + f.eval_mod(n, p) as i128) % p as i128 == 0)
        .collect()
}

#[test]
fn csv_round_trip_of_real_store() {
    let f: Poly = "1,0,1".parse().unwrap();
    let mut cfg = SieveConfig::new(f, 2, 3000);
    cfg.ord = OrdMode::On;
    let store = run_sieve(&cfg).unwrap();
    let mut buf = Vec::new();
    store.write_csv(&mut buf).unwrap();
    let back = HitStore::read_csv(buf.as_slice()).unwrap();
    assert_eq!(back.records(), store.records());
    let mut again = Vec::new();
    back.write_csv(&mut again).unwrap();
    assert_eq!(buf, again);
}

#[test]
fn threads_do_not_change_output() {
    let f: Poly = "-1".parse().unwrap();
    let render = |threads| {
        let mut cfg = SieveConfig::new(f.clone(), 100, 20_000);
        cfg.threads = threads;
        let mut buf = Vec::new();
        run_sieve(&cfg).unwrap().write_csv(&mut buf).unwrap();
        buf
    };
    let one = render(1);
    for t in [2, 5, 8] {
        assert_eq!(render(t), one, "threads={t}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn montgomery_scan_matches_plain(p in small_prime(), f in small_poly()) {
        prop_assert_eq!(scan_prime(p, Window::All, &f), scan_plain(p, 1, p, &f));
    }

    #[test]
    fn scan_matches_naive(p in prop::sample::select(primes_up_to(300)), f in small_poly()) {
        prop_assert_eq!(scan_prime(p, Window::All, &f), naive_hits(p, &f));
    }

    #[test]
    fn lifting_is_consistent(p in prop::sample::select(primes_up_to(200)), f in small_poly()) {
        let hits = scan_prime(p, Window::All, &f);
        let ords = lift_hits(p, &hits, &f, 64).unwrap();
        for (&n, ord) in hits.iter().zip(ords) {
            let v = nfact_core::arith::nfact_plus_f(n, &f);
            if let Valuation::Exact(k) = ord {
                let pk = BigInt::from(BigUint::from(p).pow(k));
                prop_assert!((&v % &pk).is_zero());
                prop_assert!(!(&v % (pk * p)).is_zero());
                prop_assert_eq!(ord_nfact_plus_f(n, p, &f, 64).unwrap(), ord);
            } else {
                prop_assert!(v.is_zero() || ord.lower_bound() >= 64);
            }
        }
    }
}
