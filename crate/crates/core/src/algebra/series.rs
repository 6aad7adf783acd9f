use num_traits::Zero;

use super::monomial::Monomial;
use super::poly::Polynomial;
use super::rx::RationalExpression;
use crate::error::{Error, Result};

/// q-adic valuation `val_q(num) - val_q(den)`; `None` for zero.
pub fn q_valuation(a: &RationalExpression) -> Option<i64> {
    let vn = a.num().q_valuation()? as i64;
    let vd = a.den().q_valuation().unwrap_or(0) as i64;
    Some(vn - vd)
}

/// Truncated power series of `a` in q through `q^order`.
///
/// The lowest q-slice of the denominator must be a single term so that the
/// coefficients stay polynomial in the remaining variables.
pub fn rx_q_series(a: &RationalExpression, order: u32) -> Result<Polynomial> {
    let table = a.table().clone();
    if a.is_zero() {
        return Ok(Polynomial::zero(&table));
    }
    let v = q_valuation(a).unwrap();
    if v < 0 {
        return Err(Error::QPole { valuation: v });
    }
    let vn = a.num().q_valuation().unwrap();
    let vd = a.den().q_valuation().unwrap();
    let order = order as i32;
    // Work with num' = num / q^vd and den' = den / q^vd, so den'(q=0) != 0.
    let d0 = a.den().q_coefficient(vd);
    let Some((d0c, d0m)) = d0.as_term() else {
        return Err(Error::NonUnitLeadingTerm(d0.to_string()));
    };
    let d0_inv_c = d0c.recip();
    let d0_inv_m = d0m.inv();
    let shift = |k: i32| -> Monomial { Monomial::var(table.len(), 0, k) };
    let dslices: Vec<Polynomial> = (0..=order).map(|j| a.den().q_coefficient(vd + j)).collect();
    let mut coeffs: Vec<Polynomial> = Vec::with_capacity(order as usize + 1);
    for k in 0..=order {
        // N_k is the q^(vd+k) slice of num.
        let mut rhs = if vd + k >= vn { a.num().q_coefficient(vd + k) } else { Polynomial::zero(&table) };
        for j in 1..=k {
            let dj = &dslices[j as usize];
            if !dj.is_zero() && !coeffs[(k - j) as usize].is_zero() {
                rhs = rhs.sub(&dj.mul(&coeffs[(k - j) as usize]));
            }
        }
        coeffs.push(rhs.mul_term(&d0_inv_c, &d0_inv_m));
    }
    let mut out = Polynomial::zero(&table);
    for (k, c) in coeffs.into_iter().enumerate() {
        if !c.is_zero() {
            out = out.add(&c.mul_monomial(&shift(k as i32)));
        }
    }
    debug_assert!(out.terms().iter().all(|(_, c)| !c.is_zero()));
    Ok(out)
}
