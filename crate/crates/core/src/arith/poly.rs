use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ArithError;

/// A nonzero polynomial with integer coefficients, constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    /// Builds a polynomial from coefficients (constant term first). Trailing
    /// zero coefficients are trimmed; the zero polynomial is rejected.
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self, ArithError> {
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(ArithError::ZeroPolynomial);
        }
        Ok(Poly { coeffs })
    }

    pub fn from_i64s(coeffs: &[i64]) -> Result<Self, ArithError> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The constant polynomial `c`.
    pub fn constant(c: i64) -> Result<Self, ArithError> {
        Self::from_i64s(&[c])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().expect("nonzero polynomial")
    }

    /// Returns `Some(c)` if this is the constant polynomial `c` and `c` fits in an i64.
    pub fn as_constant(&self) -> Option<i64> {
        if self.coeffs.len() == 1 {
            self.coeffs[0].to_i64()
        } else {
            None
        }
    }

    /// Sum of absolute values of the coefficients.
    pub fn abs_coeff_sum(&self) -> BigUint {
        self.coeffs.iter().map(|c| c.magnitude().clone()).sum()
    }

    /// Exact value f(n).
    pub fn eval(&self, n: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * n + c;
        }
        acc
    }

    pub fn eval_u64(&self, n: u64) -> BigInt {
        self.eval(&BigInt::from(n))
    }

    /// Coefficients reduced into `[0, m)`, constant term first.
    pub fn coeffs_mod(&self, m: u64) -> Vec<u64> {
        assert!(m >= 1, "modulus must be positive");
        let m_big = BigInt::from(m);
        self.coeffs
            .iter()
            .map(|c| c.mod_floor(&m_big).to_u64().expect("residue fits"))
            .collect()
    }

    /// f(n) mod m by Horner's rule, reducing at every step.
    pub fn eval_mod(&self, n: u64, m: u64) -> u64 {
        assert!(m >= 2, "modulus must be at least 2");
        let coeffs = self.coeffs_mod(m);
        let n = (n % m) as u128;
        let m128 = m as u128;
        coeffs.iter().rev().fold(0u128, |acc, &c| (acc * n + c as u128) % m128) as u64
    }

    /// f(n) mod m for an arbitrary-precision modulus.
    pub fn eval_mod_big(&self, n: &BigUint, m: &BigUint) -> BigUint {
        assert!(*m >= BigUint::from(2u8), "modulus must be at least 2");
        let m_signed = BigInt::from_biguint(Sign::Plus, m.clone());
        let n = BigInt::from_biguint(Sign::Plus, n % m);
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = (acc * &n + c).mod_floor(&m_signed);
        }
        acc.to_biguint().expect("non-negative after mod_floor")
    }

    /// `true` for the constant polynomials 1 and -1.
    pub fn is_unit_constant(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].abs().is_one()
    }
}

impl FromStr for Poly {
    type Err = ArithError;

    /// Parses `"c0,c1,...,cd"`, constant term first.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let coeffs = s
            .split(',')
            .map(|part| {
                let part = part.trim();
                part.parse::<BigInt>()
                    .map_err(|_| ArithError::BadPolynomial(s.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(coeffs)
    }
}

impl fmt::Display for Poly {
    /// Writes the comma-separated coefficient list accepted by `FromStr`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}
