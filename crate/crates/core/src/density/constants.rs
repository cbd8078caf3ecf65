use std::f64::consts::{LN_2, PI};

use serde::Serialize;

/// The closed-form constants, evaluated in double precision.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ClosedFormConstants {
    /// 1 + 9 log 2
    pub one_plus_9_log2: f64,
    /// (sqrt 145 - 1) / 8
    pub sqrt145: f64,
    /// (sqrt(81 log^2 2 + 16) - 9 log 2 + 4) / 4
    pub least_prime_divisor: f64,
    /// (2 pi^2 + 3) / 18
    pub pi_sq_old: f64,
    /// 1 + ((2 pi^2 - 15) / 6) log(3/2)
    pub pi_sq_new: f64,
}

impl ClosedFormConstants {
    /// (key, value) pairs in a fixed order.
    pub fn named(&self) -> [(&'static str, f64); 5] {
        [
            ("1+9log2", self.one_plus_9_log2),
            ("(sqrt145-1)/8", self.sqrt145),
            ("(sqrt(81log^2(2)+16)-9log2+4)/4", self.least_prime_divisor),
            ("(2pi^2+3)/18", self.pi_sq_old),
            ("1+((2pi^2-15)/6)log(3/2)", self.pi_sq_new),
        ]
    }
}

pub fn closed_form_constants() -> ClosedFormConstants {
    let l2 = LN_2;
    let pi2 = PI * PI;
    ClosedFormConstants {
        one_plus_9_log2: 1.0 + 9.0 * l2,
        sqrt145: (145f64.sqrt() - 1.0) / 8.0,
        least_prime_divisor: ((81.0 * l2 * l2 + 16.0).sqrt() - 9.0 * l2 + 4.0) / 4.0,
        pi_sq_old: (2.0 * pi2 + 3.0) / 18.0,
        pi_sq_new: 1.0 + (2.0 * pi2 - 15.0) / 6.0 * (1.5f64).ln(),
    }
}

/// 1 + 9 (1 - 4 eps0) log(2 / (1 + eps0))
pub fn lambda_bound(eps0: f64) -> f64 {
    1.0 + 9.0 * (1.0 - 4.0 * eps0) * (2.0 / (1.0 + eps0)).ln()
}

/// 1 + 9 log 2 - 100 eps0
pub fn lambda_for(eps0: f64) -> f64 {
    1.0 + 9.0 * LN_2 - 100.0 * eps0
}
