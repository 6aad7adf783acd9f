use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::perm::{Permutation, VarGroup};
use super::poly::Polynomial;
use super::rational::{pow_rational, Rational};
use super::rx::RationalExpression;
use super::subst::Substitution;
use super::table::VariableTable;
use crate::error::{Error, Result};

/// `scalar * mono * ∏ f^e` with every `f` normalized (see
/// [`Polynomial::normalize_unit`]) and sorted, exponents nonzero.
#[derive(Clone, PartialEq, Eq)]
pub struct Factored {
    table: VariableTable,
    scalar: Rational,
    mono: Monomial,
    factors: Vec<(Polynomial, i32)>,
}

impl Factored {
    pub fn one(table: &VariableTable) -> Self {
        Self::constant(table, Rational::one())
    }

    pub fn constant(table: &VariableTable, c: Rational) -> Self {
        Factored { table: table.clone(), scalar: c, mono: Monomial::one(table.len()), factors: Vec::new() }
    }

    pub fn monomial(table: &VariableTable, c: Rational, m: Monomial) -> Self {
        Factored { table: table.clone(), scalar: c, mono: m, factors: Vec::new() }
    }

    /// `p^e` as a single factor.
    pub fn from_poly_pow(p: &Polynomial, e: i32) -> Result<Self> {
        let table = p.table().clone();
        if p.is_zero() {
            if e < 0 {
                return Err(Error::DivisionByZero);
            }
            return Ok(Self::constant(&table, Rational::zero()));
        }
        let (c, m, f) = p.normalize_unit();
        let mut out = Factored {
            table,
            scalar: pow_rational(&c, e)?,
            mono: m.pow(e),
            factors: Vec::new(),
        };
        if !f.is_one() && e != 0 {
            out.factors.push((f, e));
        }
        Ok(out)
    }

    pub fn from_poly(p: &Polynomial) -> Self {
        Self::from_poly_pow(p, 1).expect("positive power never divides by zero")
    }

    /// `(1 - c*m)^e`, the basic λ₋₁ building block.
    pub fn one_minus(table: &VariableTable, c: Rational, m: Monomial, e: i32) -> Result<Self> {
        let p = Polynomial::one(table).sub(&Polynomial::term(table, m, c));
        Self::from_poly_pow(&p, e)
    }

    pub fn table(&self) -> &VariableTable {
        &self.table
    }

    pub fn scalar(&self) -> &Rational {
        &self.scalar
    }

    pub fn mono(&self) -> &Monomial {
        &self.mono
    }

    pub fn factors(&self) -> &[(Polynomial, i32)] {
        &self.factors
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.scalar.is_one() && self.mono.is_one() && self.factors.is_empty()
    }

    fn zero_like(&self) -> Self {
        Self::constant(&self.table, Rational::zero())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        out.scalar = -out.scalar;
        out
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return self.zero_like();
        }
        let mut out = self.clone();
        out.scalar *= k;
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        let mut out = self.clone();
        out.mono = out.mono.mul(m);
        out
    }

    fn merge_factors(a: &[(Polynomial, i32)], b: &[(Polynomial, i32)], sign: i32) -> Vec<(Polynomial, i32)> {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => std::cmp::Ordering::Less,
                _ => std::cmp::Ordering::Greater,
            };
            match ord {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((b[j].0.clone(), sign * b[j].1));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let e = a[i].1 + sign * b[j].1;
                    if e != 0 {
                        out.push((a[i].0.clone(), e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.table, o.table);
        if self.is_zero() || o.is_zero() {
            return self.zero_like();
        }
        Factored {
            table: self.table.clone(),
            scalar: &self.scalar * &o.scalar,
            mono: self.mono.mul(&o.mono),
            factors: Self::merge_factors(&self.factors, &o.factors, 1),
        }
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(self.zero_like());
        }
        Ok(Factored {
            table: self.table.clone(),
            scalar: &self.scalar / &o.scalar,
            mono: self.mono.div(&o.mono),
            factors: Self::merge_factors(&self.factors, &o.factors, -1),
        })
    }

    pub fn recip(&self) -> Result<Self> {
        Self::one(&self.table).div(self)
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        if e == 0 {
            return Ok(Self::one(&self.table));
        }
        if self.is_zero() {
            return if e < 0 { Err(Error::DivisionByZero) } else { Ok(self.zero_like()) };
        }
        Ok(Factored {
            table: self.table.clone(),
            scalar: pow_rational(&self.scalar, e)?,
            mono: self.mono.pow(e),
            factors: self.factors.iter().map(|(f, k)| (f.clone(), k * e)).collect(),
        })
    }

    /// Rebuilds from arbitrary (not yet normalized) factor images.
    fn rebuild(
        table: &VariableTable,
        scalar: Rational,
        mono: Monomial,
        images: Vec<(Polynomial, i32)>,
        on_zero_den: impl Fn() -> Error,
    ) -> Result<Self> {
        let mut out = Factored::monomial(table, scalar, mono);
        let mut zero_num = false;
        for (p, e) in images {
            if p.is_zero() {
                if e < 0 {
                    return Err(on_zero_den());
                }
                zero_num = true;
                continue;
            }
            out = out.mul(&Self::from_poly_pow(&p, e)?);
        }
        if zero_num {
            return Ok(Self::constant(table, Rational::zero()));
        }
        Ok(out)
    }

    pub fn permute(&self, w: &Permutation, group: &VarGroup) -> Result<Self> {
        let mono = group.apply_monomial(w, &self.mono);
        let mut images = Vec::with_capacity(self.factors.len());
        for (f, e) in &self.factors {
            images.push((group.apply_poly(w, f)?, *e));
        }
        Self::rebuild(&self.table, self.scalar.clone(), mono, images, || Error::DivisionByZero)
    }

    pub fn substitute(&self, s: &Substitution) -> Result<Self> {
        let target = s.target().clone();
        let mono_img = s.apply_poly(&Polynomial::monomial(&self.table, self.mono.clone()))?;
        let Some((c, m)) = mono_img.as_term() else {
            return Ok(Self::constant(&target, Rational::zero()));
        };
        let scalar = &self.scalar * c;
        let mut images = Vec::with_capacity(self.factors.len());
        for (f, e) in &self.factors {
            images.push((s.apply_poly(f)?, *e));
        }
        Self::rebuild(&target, scalar, m.clone(), images, || Error::SubstitutionPole {
            bindings: s.describe(),
        })
    }

    /// Expanded numerator and denominator.
    pub fn to_rx(&self) -> RationalExpression {
        let mut num = Polynomial::term(&self.table, self.mono.clone(), self.scalar.clone());
        let mut den = Polynomial::one(&self.table);
        for (f, e) in &self.factors {
            if *e > 0 {
                num = num.mul(&f.pow(*e as u32));
            } else {
                den = den.mul(&f.pow((-e) as u32));
            }
        }
        RationalExpression::new(num, den).expect("factors are nonzero")
    }

    /// q-adic valuation, computed factorwise.
    pub fn q_valuation(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        let mut v = self.mono.exp(0) as i64;
        for (f, e) in &self.factors {
            v += f.q_valuation().unwrap_or(0) as i64 * *e as i64;
        }
        Some(v)
    }

    /// Product display: each factor shown divided by its first monomial so
    /// that `1 - L^-1*q` style factors read naturally.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut mono = self.mono.clone();
        let mut scalar = self.scalar.clone();
        let mut parts: Vec<String> = Vec::new();
        for (f, e) in &self.factors {
            let (m0, c0) = f.first().unwrap().clone();
            let shown = f.mul_term(&c0.recip(), &m0.inv());
            mono = mono.mul(&m0.pow(*e));
            scalar *= pow_rational(&c0, *e).unwrap();
            let body = format!("({shown})");
            parts.push(if *e == 1 { body } else { format!("{body}^{e}") });
        }
        let lead = Polynomial::term(&self.table, mono, scalar.abs());
        let mut out = String::new();
        if scalar.is_negative() {
            out.push('-');
        }
        let lead_text = lead.to_string();
        if lead_text != "1" || parts.is_empty() {
            out.push_str(&lead_text);
            if !parts.is_empty() {
                out.push('*');
            }
        }
        out.push_str(&parts.join("*"));
        out
    }
}

impl fmt::Debug for Factored {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Factored({})", self.to_text())
    }
}

/// Sum of [`Factored`] terms, combined over the least common multiple of the
/// factored denominators only when an expanded form is needed.
#[derive(Clone)]
pub struct FactoredSum {
    table: VariableTable,
    terms: Vec<Factored>,
}

/// Numerator expanded, denominator kept as a factor list.
#[derive(Clone, Debug)]
pub struct ReducedRx {
    pub num: Polynomial,
    pub den: Vec<(Polynomial, i32)>,
}

impl ReducedRx {
    pub fn to_rx(&self) -> RationalExpression {
        let table = self.num.table();
        let mut den = Polynomial::one(table);
        for (f, e) in &self.den {
            den = den.mul(&f.pow(*e as u32));
        }
        RationalExpression::new(self.num.clone(), den).expect("nonzero factors")
    }
}

impl FactoredSum {
    pub fn zero(table: &VariableTable) -> Self {
        FactoredSum { table: table.clone(), terms: Vec::new() }
    }

    pub fn one(table: &VariableTable) -> Self {
        Self::from_term(Factored::one(table))
    }

    pub fn from_term(t: Factored) -> Self {
        let table = t.table.clone();
        let terms = if t.is_zero() { Vec::new() } else { vec![t] };
        FactoredSum { table, terms }
    }

    pub fn from_terms<I: IntoIterator<Item = Factored>>(table: &VariableTable, it: I) -> Self {
        let mut s = Self::zero(table);
        for t in it {
            s.push(t);
        }
        s
    }

    pub fn table(&self) -> &VariableTable {
        &self.table
    }

    pub fn terms(&self) -> &[Factored] {
        &self.terms
    }

    /// Adds a term, merging it into an existing term with the same shape.
    pub fn push(&mut self, t: Factored) {
        if t.is_zero() {
            return;
        }
        if let Some(pos) = self.terms.iter().position(|u| u.mono == t.mono && u.factors == t.factors) {
            let s = &self.terms[pos].scalar + &t.scalar;
            if s.is_zero() {
                self.terms.remove(pos);
            } else {
                self.terms[pos].scalar = s;
            }
            return;
        }
        self.terms.push(t);
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for t in &o.terms {
            out.push(t.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for t in &o.terms {
            out.push(t.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        FactoredSum { table: self.table.clone(), terms: self.terms.iter().map(Factored::neg).collect() }
    }

    pub fn mul_term(&self, f: &Factored) -> Self {
        Self::from_terms(&self.table, self.terms.iter().map(|t| t.mul(f)))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(&self.table);
        for a in &self.terms {
            for b in &o.terms {
                out.push(a.mul(b));
            }
        }
        out
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::from_terms(&self.table, self.terms.iter().map(|t| t.scale(k)))
    }

    pub fn permute(&self, w: &Permutation, group: &VarGroup) -> Result<Self> {
        let mut out = Self::zero(&self.table);
        for t in &self.terms {
            out.push(t.permute(w, group)?);
        }
        Ok(out)
    }

    pub fn substitute(&self, s: &Substitution) -> Result<Self> {
        let mut out = Self::zero(s.target());
        for t in &self.terms {
            out.push(t.substitute(s)?);
        }
        Ok(out)
    }

    /// Least common denominator as a factor list.
    fn lcm(&self) -> BTreeMap<Polynomial, i32> {
        let mut lcm: BTreeMap<Polynomial, i32> = BTreeMap::new();
        for t in &self.terms {
            for (f, e) in &t.factors {
                if *e < 0 {
                    let v = lcm.entry(f.clone()).or_insert(0);
                    *v = (*v).max(-e);
                }
            }
        }
        lcm
    }

    /// Numerator over the least common denominator.
    fn numerator(&self, lcm: &BTreeMap<Polynomial, i32>) -> Polynomial {
        let mut cache: HashMap<(Polynomial, i32), Polynomial> = HashMap::new();
        let mut power = |f: &Polynomial, k: i32| -> Polynomial {
            cache
                .entry((f.clone(), k))
                .or_insert_with(|| f.pow(k as u32))
                .clone()
        };
        let mut num = Polynomial::zero(&self.table);
        for t in &self.terms {
            let mut exps: BTreeMap<&Polynomial, i32> = lcm.iter().map(|(f, e)| (f, *e)).collect();
            for (f, e) in &t.factors {
                *exps.entry(f).or_insert(0) += e;
            }
            let mut parts: Vec<Polynomial> = exps
                .into_iter()
                .filter(|(_, e)| *e > 0)
                .map(|(f, e)| power(f, e))
                .collect();
            parts.sort_by_key(|p| p.len());
            let mut prod = Polynomial::term(&self.table, t.mono.clone(), t.scalar.clone());
            for p in parts {
                prod = prod.mul(&p);
            }
            num = num.add(&prod);
        }
        num
    }

    pub fn is_zero(&self) -> bool {
        if self.terms.is_empty() {
            return true;
        }
        if self.terms.len() == 1 {
            return false;
        }
        self.numerator(&self.lcm()).is_zero()
    }

    pub fn equals(&self, o: &Self) -> Result<bool> {
        self.table.ensure_same(&o.table)?;
        Ok(self.sub(o).is_zero())
    }

    /// Expands the numerator over the common denominator and cancels every
    /// denominator factor that divides it exactly.
    pub fn reduce(&self) -> ReducedRx {
        let lcm = self.lcm();
        let mut num = self.numerator(&lcm);
        let mut den = Vec::new();
        if num.is_zero() {
            return ReducedRx { num, den };
        }
        for (f, mut k) in lcm {
            while k > 0 {
                match num.div_exact(&f) {
                    Some(q) => {
                        num = q;
                        k -= 1;
                    }
                    None => break,
                }
            }
            if k > 0 {
                den.push((f, k));
            }
        }
        ReducedRx { num, den }
    }

    pub fn to_rx(&self) -> RationalExpression {
        self.reduce().to_rx()
    }

    /// Each term on its own line joined by ` + `; the factored text form.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, t) in self.terms.iter().enumerate() {
            let s = t.to_text();
            if i == 0 {
                out.push_str(&s);
            } else if let Some(rest) = s.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&s);
            }
        }
        out
    }
}

impl fmt::Debug for FactoredSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FactoredSum({})", self.to_text())
    }
}

impl From<Factored> for FactoredSum {
    fn from(t: Factored) -> Self {
        Self::from_term(t)
    }
}
