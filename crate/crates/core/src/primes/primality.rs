use std::sync::OnceLock;

use num_bigint::{BigUint, RandBigInt};
use num_integer::Roots;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::{mul_mod, pow_mod};

/// Primes below 2^16, enough to trial-divide any 32-bit integer.
fn small_primes() -> &'static [u32] {
    static TABLE: OnceLock<Vec<u32>> = OnceLock::new();
    TABLE.get_or_init(|| simple_sieve(1 << 16).into_iter().map(|p| p as u32).collect())
}

/// Plain sieve of Eratosthenes over [0, limit].
pub(crate) fn simple_sieve(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Deterministic primality: trial division below 2^32, Miller-Rabin with the
/// first twelve prime bases above (exact for all n < 3.3 * 10^24).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 1 << 32 {
        let r = n.sqrt();
        for &q in small_primes() {
            let q = q as u64;
            if q > r {
                return true;
            }
            if n.is_multiple_of(q) {
                return n == q;
            }
        }
        return true;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
        .iter()
        .all(|&a| strong_probable_prime(n, a, d, s))
}

fn strong_probable_prime(n: u64, a: u64, d: u64, s: u32) -> bool {
    let mut x = pow_mod(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Outcome of a primality test that may be probabilistic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Certainty {
    /// Deterministic: n < 2^64.
    Proven,
    /// Passed the requested number of random-base Miller-Rabin rounds.
    Probable,
}

/// Primality for arbitrary-precision integers. Values below 2^64 are decided
/// exactly; larger values get `rounds` Miller-Rabin rounds with bases drawn
/// from a fixed-seed generator, so results are reproducible.
pub fn primality_big(n: &BigUint, rounds: u32) -> Option<Certainty> {
    if let Some(small) = n.to_u64() {
        return is_prime(small).then_some(Certainty::Proven);
    }
    for &q in small_primes().iter().take(200) {
        if (n % q).is_zero() {
            return None;
        }
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().expect("n > 1");
    let d = &n_minus_1 >> s;
    let two = BigUint::from(2u8);
    let mut rng = ChaCha8Rng::seed_from_u64(0x005e_ed0f_9a1e);
    for _ in 0..rounds {
        let a = rng.gen_biguint_range(&two, &n_minus_1);
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        let mut witness = true;
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                witness = false;
                break;
            }
        }
        if witness {
            return None;
        }
    }
    Some(Certainty::Probable)
}

/// Smallest prime strictly greater than n.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n + 1;
    while !is_prime(c) {
        c += 1;
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn agrees_with_trial_division() {
        for n in 0..20_000 {
            assert_eq!(is_prime(n), trial(n), "{n}");
        }
    }

    #[test]
    fn large_values() {
        assert!(is_prime((1 << 61) - 1));
        assert!(is_prime(18_446_744_073_709_551_557)); // largest prime below 2^64
        assert!(!is_prime(18_446_744_073_709_551_559));
        // strong pseudoprime to bases 2..=11
        assert!(!is_prime(2_152_302_898_747));
        assert!(!is_prime(3_215_031_751));
        assert!(is_prime(4_294_967_311)); // smallest prime above 2^32
        assert!(!is_prime(4_294_967_297)); // F5 = 641 * 6700417
    }

    #[test]
    fn big_primality() {
        let m127 = (BigUint::one() << 127u32) - BigUint::one();
        assert_eq!(primality_big(&m127, 64), Some(Certainty::Probable));
        let composite = &m127 * BigUint::from(3u8);
        assert_eq!(primality_big(&composite, 64), None);
        let semiprime = BigUint::from(4_294_967_311u64) * BigUint::from(18_446_744_073_709_551_557u64);
        assert_eq!(primality_big(&semiprime, 64), None);
        assert_eq!(primality_big(&BigUint::from(97u8), 1), Some(Certainty::Proven));
    }

    #[test]
    fn next_prime_examples() {
        assert_eq!(next_prime(10), 11);
        assert_eq!(next_prime(11), 13);
        assert_eq!(next_prime(1), 2);
    }
}
