use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational; always reduced with a positive denominator.
pub type Rational = BigRational;

/// `a` for integers, `a/b` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

pub(crate) fn pow_rational(r: &Rational, e: i32) -> Result<Rational> {
    if e >= 0 {
        Ok(num_traits::pow::pow(r.clone(), e as usize))
    } else if r.is_zero() {
        Err(Error::DivisionByZero)
    } else {
        Ok(num_traits::pow::pow(r.recip(), (-e) as usize))
    }
}
