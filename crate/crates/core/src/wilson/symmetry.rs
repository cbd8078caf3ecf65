//! From (p-1)! = -1 mod p: n! (p-1-n)! = (-1)^(n+1) mod p for odd p. A hit
//! n for f = c (c = +-1) therefore pairs with a hit p-1-n for f = (-1)^(n+1) c.

use serde::Serialize;

use crate::arith::factorial_mod;

/// Companion (m, c') of a hit n of f = c, with m = p - 1 - n.
/// `None` unless p is odd, c = +-1 and 1 <= n <= p - 2.
pub fn companion(p: u64, n: u64, c: i64) -> Option<(u64, i64)> {
    if p.is_multiple_of(2) || !(c == 1 || c == -1) || n == 0 || n + 2 > p {
        return None;
    }
    let sign = if n % 2 == 1 { 1 } else { -1 };
    Some((p - 1 - n, sign * c))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CompanionCheck {
    pub p: u64,
    pub n: u64,
    pub companion: u64,
    /// Constant term of the companion equation m! + c' = 0 mod p.
    pub companion_f: i64,
    pub holds: bool,
}

/// Checks the companion of hit (p, n) for f = c directly.
pub fn check_companion(p: u64, n: u64, c: i64) -> Option<CompanionCheck> {
    let (m, c2) = companion(p, n, c)?;
    let fact = factorial_mod(m, p);
    let holds = (fact as i128 + c2 as i128).rem_euclid(p as i128) == 0;
    Some(CompanionCheck {
        p,
        n,
        companion: m,
        companion_f: c2,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        // 3! + 1 = 7, companion 3 itself; 5! + 1 = 121, companion 5 for p = 11
        assert_eq!(companion(7, 3, 1), Some((3, 1)));
        assert_eq!(companion(11, 5, 1), Some((5, 1)));
        // 4! + 1 = 25: even n maps to f = -1 at p - 1 - n = 0, outside the range
        assert_eq!(companion(5, 4, 1), None);
        assert_eq!(companion(5, 1, -1), Some((3, -1)));
        assert_eq!(companion(2, 1, 1), None);
        assert_eq!(companion(7, 3, 2), None);
    }

    #[test]
    fn holds_for_all_small_hits() {
        for p in crate::primes::primes_up_to(2000).into_iter().skip(1) {
            for c in [1i64, -1] {
                let f = crate::arith::Poly::constant(c).unwrap();
                for n in super::super::scan_prime(p, super::super::Window::All, &f) {
                    if let Some(chk) = check_companion(p, n, c) {
                        assert!(chk.holds, "{chk:?}");
                    }
                }
            }
        }
    }
}
