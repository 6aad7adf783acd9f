use std::fmt;

use num_traits::Signed;

use super::monomial::Monomial;
use super::perm::{Permutation, VarGroup};
use super::poly::Polynomial;
use super::rational::Rational;
use super::subst::Substitution;
use super::table::VariableTable;
use crate::error::{Error, Result};

/// Quotient of two Laurent polynomials.
///
/// The denominator carries no monomial factor, has coprime integer
/// coefficients and a positive first term. Equality is semantic.
#[derive(Clone)]
pub struct RationalExpression {
    num: Polynomial,
    den: Polynomial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl RationalExpression {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        num.table().ensure_same(den.table())?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Polynomial, den: Polynomial) -> Self {
        let table = num.table().clone();
        if num.is_zero() {
            return Self::from_poly(Polynomial::zero(&table));
        }
        let (c, m, den) = den.normalize_unit();
        let num = num.mul_term(&c.recip(), &m.inv());
        if den.is_one() {
            return RationalExpression { num, den };
        }
        if num == den {
            return Self::one(&table);
        }
        if let Some(q) = num.div_exact(&den) {
            return Self::from_poly(q);
        }
        RationalExpression { num, den }
    }

    pub fn from_poly(p: Polynomial) -> Self {
        let den = Polynomial::one(p.table());
        RationalExpression { num: p, den }
    }

    pub fn zero(table: &VariableTable) -> Self {
        Self::from_poly(Polynomial::zero(table))
    }

    pub fn one(table: &VariableTable) -> Self {
        Self::from_poly(Polynomial::one(table))
    }

    pub fn constant(table: &VariableTable, c: Rational) -> Self {
        Self::from_poly(Polynomial::constant(table, c))
    }

    pub fn monomial(table: &VariableTable, m: Monomial) -> Self {
        Self::from_poly(Polynomial::monomial(table, m))
    }

    pub fn table(&self) -> &VariableTable {
        self.num.table()
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn neg(&self) -> Self {
        RationalExpression { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.table().ensure_same(o.table())?;
        if self.den == o.den {
            return Ok(Self::normalized(self.num.add(&o.num), self.den.clone()));
        }
        let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        Ok(Self::normalized(num, self.den.mul(&o.den)))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.table().ensure_same(o.table())?;
        if self.is_zero() || o.is_zero() {
            return Ok(Self::zero(self.table()));
        }
        // Cheap cross-cancellation before expanding.
        let (mut n1, mut d1) = (self.num.clone(), self.den.clone());
        let (mut n2, mut d2) = (o.num.clone(), o.den.clone());
        if !d2.is_one() {
            if let Some(q) = n1.div_exact(&d2) {
                n1 = q;
                d2 = Polynomial::one(self.table());
            }
        }
        if !d1.is_one() {
            if let Some(q) = n2.div_exact(&d1) {
                n2 = q;
                d1 = Polynomial::one(self.table());
            }
        }
        Ok(Self::normalized(n1.mul(&n2), d1.mul(&d2)))
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        self.table().ensure_same(o.table())?;
        self.mul(&o.recip()?)
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(Self::normalized(base.num.pow(k), base.den.pow(k)))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        RationalExpression { num: self.num.scale(k), den: self.den.clone() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        RationalExpression { num: self.num.mul_monomial(m), den: self.den.clone() }
    }

    pub fn equals(&self, o: &Self) -> Result<bool> {
        self.table().ensure_same(o.table())?;
        if self.den == o.den {
            return Ok(self.num == o.num);
        }
        Ok(self.num.mul(&o.den) == o.num.mul(&self.den))
    }

    /// If `self / o` is `c * m` for a rational `c` and a monomial `m`, returns it.
    pub fn unit_ratio(&self, o: &Self) -> Result<Option<(Rational, Monomial)>> {
        self.table().ensure_same(o.table())?;
        let p = self.num.mul(&o.den);
        let q = self.den.mul(&o.num);
        if q.is_zero() || p.is_zero() || p.len() != q.len() {
            return Ok(None);
        }
        let (pm, pc) = p.last().unwrap();
        let (qm, qc) = q.last().unwrap();
        let m = pm.div(qm);
        let c = pc / qc;
        Ok(if q.mul_term(&c, &m) == p { Some((c, m)) } else { None })
    }

    pub fn permute(&self, w: &Permutation, group: &VarGroup) -> Result<Self> {
        let num = group.apply_poly(w, &self.num)?;
        let den = group.apply_poly(w, &self.den)?;
        Ok(Self::normalized(num, den))
    }

    pub fn substitute(&self, s: &Substitution) -> Result<Self> {
        s.apply_rx(self)
    }

    pub fn is_free_of(&self, vars: &[usize]) -> bool {
        self.num.is_free_of(vars) && self.den.is_free_of(vars)
    }

    /// Leading sign of the numerator; used for deterministic display only.
    pub fn leading_sign_positive(&self) -> bool {
        self.num.first().map(|(_, c)| c.is_positive()).unwrap_or(true)
    }

    pub fn to_text(&self) -> String {
        super::text::rx_to_text(self)
    }
}

pub fn rx_arith(
    a: &RationalExpression,
    b: &RationalExpression,
    which: ArithOp,
) -> Result<RationalExpression> {
    match which {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
        ArithOp::Div => a.div(b),
    }
}

pub fn rx_equals(a: &RationalExpression, b: &RationalExpression) -> Result<bool> {
    a.equals(b)
}

pub fn rx_substitute(a: &RationalExpression, s: &Substitution) -> Result<RationalExpression> {
    s.apply_rx(a)
}

pub fn rx_permute(
    a: &RationalExpression,
    w: &Permutation,
    group: &VarGroup,
) -> Result<RationalExpression> {
    a.permute(w, group)
}

impl fmt::Display for RationalExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for RationalExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rx({self})")
    }
}

impl From<Polynomial> for RationalExpression {
    fn from(p: Polynomial) -> Self {
        Self::from_poly(p)
    }
}
