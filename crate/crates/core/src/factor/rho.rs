//! Pollard rho with Brent's cycle detection and batched gcds.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

const BATCH: u64 = 128;

/// Iteration budget shared across all rho attempts of one factorization.
#[derive(Clone, Copy, Debug)]
pub struct Effort {
    remaining: u64,
}

impl Effort {
    pub fn new(iterations: u64) -> Self {
        Effort { remaining: iterations }
    }

    pub fn exhausted(&self) -> bool {
        self.remaining == 0
    }

    fn take(&mut self, k: u64) -> bool {
        if self.remaining < k {
            self.remaining = 0;
            false
        } else {
            self.remaining -= k;
            true
        }
    }
}

fn abs_diff(a: &BigUint, b: &BigUint) -> BigUint {
    if a >= b {
        a - b
    } else {
        b - a
    }
}

/// One Brent run with polynomial y^2 + c. Returns a nontrivial divisor of
/// the composite `n`, or `None` if the run cycled or the budget ran out.
pub fn brent(n: &BigUint, c: u64, effort: &mut Effort) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u8));
    }
    let c = BigUint::from(c);
    let step = |y: &BigUint| (y * y + &c) % n;
    let one = BigUint::one();
    let mut y = BigUint::from(2u8);
    let mut x = y.clone();
    let mut ys = y.clone();
    let mut q = one.clone();
    let mut g = one.clone();
    let mut r = 1u64;
    while g == one {
        x = y.clone();
        if !effort.take(r) {
            return None;
        }
        for _ in 0..r {
            y = step(&y);
        }
        let mut k = 0;
        while k < r && g == one {
            ys = y.clone();
            let m = BATCH.min(r - k);
            if !effort.take(m) {
                return None;
            }
            for _ in 0..m {
                y = step(&y);
                q = q * abs_diff(&x, &y) % n;
            }
            g = q.gcd(n);
            k += m;
        }
        r *= 2;
    }
    if &g == n {
        // the batch overshot; retrace one step at a time
        loop {
            if !effort.take(1) {
                return None;
            }
            ys = step(&ys);
            g = abs_diff(&x, &ys).gcd(n);
            if g != one {
                break;
            }
        }
    }
    (g != one && &g != n && !g.is_zero()).then_some(g)
}
