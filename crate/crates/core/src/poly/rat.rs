//! Exact rationals.
//!
//! `Rat` is `num_rational::BigRational`, which keeps every value reduced with
//! a positive denominator and represents zero as `0/1`.

use num_bigint::BigInt;
use num_traits::One;

pub type Rat = num_rational::BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Writes `r` as `n` or `n/d`.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn pow(r: &Rat, e: u32) -> Rat {
    let mut out = Rat::one();
    for _ in 0..e {
        out *= r;
    }
    out
}
