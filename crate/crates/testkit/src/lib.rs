//! Independent oracles and generators used by the test suites.
//!
//! Nothing here depends on the library under test: polynomials are plain
//! coefficient vectors or text, and ODEs are integrated with a separate
//! fine-step integrator.

pub mod ode;
pub mod sturm;
pub mod variety;

use num_bigint::BigInt;
use num_rational::BigRational;

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn to_f64(r: &Q) -> f64 {
    use num_traits::ToPrimitive;
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}
