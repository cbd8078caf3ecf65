//! Exact modular and arbitrary-precision arithmetic: polynomials, factorials
//! modulo prime powers and p-adic valuations.

mod growth;
mod modular;
mod poly;
mod valuation;

use thiserror::Error;

pub use growth::{equation_vanishes, GrowthExponent, SmallNThreshold, DEFAULT_K_CHECK, DEFAULT_N_CHECK};
pub use modular::{
    add_mod, factorial_mod, factorial_mod_big, mul_mod, pow_mod, FactorialMod, ModulusValue, Montgomery,
    PrimePowerModulus,
};
pub use poly::Poly;
pub use valuation::{
    cmp_nfact_plus_f, divides_nfact_plus_f, nfact_plus_f, ord_nfact_plus_f, ord_p_big, ord_p_factorial, Valuation,
    DEFAULT_LIFT_CAP,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("the zero polynomial is not allowed")]
    ZeroPolynomial,
    #[error("cannot parse polynomial {0:?}; expected comma-separated integers, constant first")]
    BadPolynomial(String),
    #[error("cannot parse valuation {0:?}")]
    BadValuation(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("exponent must be positive")]
    ZeroExponent,
    #[error("n must be positive")]
    NonPositive,
    #[error("n! + f(n) = 0 at n = {n}")]
    ValueIsZero { n: u64 },
    #[error("no known threshold n0 for this polynomial; supply one to be validated")]
    MissingThreshold,
    #[error("threshold refuted at n = {n}{}", k.map(|k| format!(", k = {k}")).unwrap_or_default())]
    ThresholdRefuted { n: u64, k: Option<u64> },
}

/// Serializes arbitrary-precision integers as decimal strings.
pub mod decimal {
    use std::fmt::Display;

    use serde::Serializer;

    pub fn serialize<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }
}
