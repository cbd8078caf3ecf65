//! Computational toolkit for the largest prime divisor of n! + f(n).
//!
//! The crate is organised around the objects a Wilson-type sieve produces:
//!
//! * [`arith`]: polynomials, factorials modulo prime powers, p-adic orders.
//! * [`primes`]: segmented sieve, deterministic primality, prime gaps.
//! * [`wilson`]: the per-prime scan for n < p with p | n! + f(n).
//! * [`intervals`]: interval families over hit positions and the exact
//!   divisibility checks built on them.
//! * [`density`]: certified lower bounds on P(n! + f(n)), densities, constants
//!   and the leading-coefficient audit.
//! * [`factor`]: exact factorization of n! + f(n) for small n.

pub mod arith;
pub mod density;
pub mod factor;
pub mod intervals;
pub mod primes;
pub mod wilson;

pub use arith::{GrowthExponent, Poly, Valuation};
