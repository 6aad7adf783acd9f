use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::rational::Rational;
use super::table::VariableTable;
use crate::error::Result;

/// Laurent polynomial with rational coefficients.
///
/// Terms are kept sorted ascending in lexicographic order on exponent
/// vectors (q first) with no zero coefficients.
#[derive(Clone)]
pub struct Polynomial {
    table: VariableTable,
    terms: Vec<(Monomial, Rational)>,
}

impl Polynomial {
    pub fn zero(table: &VariableTable) -> Self {
        Polynomial { table: table.clone(), terms: Vec::new() }
    }

    pub fn one(table: &VariableTable) -> Self {
        Self::constant(table, Rational::one())
    }

    pub fn constant(table: &VariableTable, c: Rational) -> Self {
        Self::term(table, Monomial::one(table.len()), c)
    }

    pub fn term(table: &VariableTable, m: Monomial, c: Rational) -> Self {
        debug_assert_eq!(m.len(), table.len());
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial { table: table.clone(), terms }
    }

    pub fn monomial(table: &VariableTable, m: Monomial) -> Self {
        Self::term(table, m, Rational::one())
    }

    /// The single variable `name` to the first power.
    pub fn var(table: &VariableTable, name: &str) -> Result<Self> {
        let i = table.require(name)?;
        Ok(Self::monomial(table, Monomial::var(table.len(), i, 1)))
    }

    /// Sums arbitrary terms, merging duplicates.
    pub fn from_terms<I>(table: &VariableTable, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.len(), table.len());
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        Self::from_map(table, acc)
    }

    fn from_map(table: &VariableTable, acc: HashMap<Monomial, Rational>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        Polynomial { table: table.clone(), terms }
    }

    pub fn table(&self) -> &VariableTable {
        &self.table
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// The coefficient if this is a constant (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    /// `Some((c, m))` when the polynomial is a single term.
    pub fn as_term(&self) -> Option<(&Rational, &Monomial)> {
        match self.terms.as_slice() {
            [(m, c)] => Some((c, m)),
            _ => None,
        }
    }

    /// First term in the canonical (ascending) order.
    pub fn first(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }

    /// Last term in the canonical order; the lex-leading term.
    pub fn last(&self) -> Option<&(Monomial, Rational)> {
        self.terms.last()
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        Polynomial { table: self.table.clone(), terms }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero(&self.table);
        }
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect();
        Polynomial { table: self.table.clone(), terms }
    }

    /// Multiplication by a monomial preserves the order (lex is a group order).
    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        let terms = self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect();
        Polynomial { table: self.table.clone(), terms }
    }

    pub fn mul_term(&self, c: &Rational, m: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero(&self.table);
        }
        let terms = self.terms.iter().map(|(t, k)| (t.mul(m), k * c)).collect();
        Polynomial { table: self.table.clone(), terms }
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        debug_assert_eq!(self.table, other.table);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for (m, c) in &b[j..] {
            out.push((m.clone(), if negate { -c } else { c.clone() }));
        }
        Polynomial { table: self.table.clone(), terms: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.table, other.table);
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.table);
        }
        if let Some((c, m)) = self.as_term() {
            return other.mul_term(c, m);
        }
        if let Some((c, m)) = other.as_term() {
            return self.mul_term(c, m);
        }
        let mut acc: HashMap<Monomial, Rational> =
            HashMap::with_capacity(self.len() * other.len() / 2 + 1);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(v) => *v += c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Self::from_map(&self.table, acc)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(&self.table);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Componentwise minimum of all exponent vectors (the monomial content).
    pub fn min_monomial(&self) -> Option<Monomial> {
        let mut it = self.terms.iter();
        let first = it.next()?.0.clone();
        Some(it.fold(first, |acc, (m, _)| acc.min_with(m)))
    }

    /// Positive rational `c` such that `self / c` has coprime integer coefficients.
    pub fn content(&self) -> Rational {
        let mut g = BigInt::zero();
        let mut l = BigInt::one();
        for (_, c) in &self.terms {
            g = g.gcd(c.numer());
            l = l.lcm(c.denom());
        }
        if g.is_zero() {
            Rational::one()
        } else {
            Rational::new(g, l)
        }
    }

    /// Splits `self = c * m * p` where `p` has coprime integer coefficients,
    /// first term positive and no monomial factor.
    pub fn normalize_unit(&self) -> (Rational, Monomial, Polynomial) {
        let Some(m) = self.min_monomial() else {
            return (Rational::zero(), Monomial::one(self.table.len()), self.clone());
        };
        let mut c = self.content();
        if self.terms[0].1.is_negative() {
            c = -c;
        }
        let inv = c.recip();
        let minv = m.inv();
        let terms = self.terms.iter().map(|(t, k)| (t.mul(&minv), k * &inv)).collect();
        (c, m, Polynomial { table: self.table.clone(), terms })
    }

    pub fn q_valuation(&self) -> Option<i32> {
        self.terms.iter().map(|(m, _)| m.exp(0)).min()
    }

    pub fn q_degree(&self) -> Option<i32> {
        self.terms.iter().map(|(m, _)| m.exp(0)).max()
    }

    /// Coefficient of `q^k` as a polynomial in the other variables (q-exponent zeroed).
    pub fn q_coefficient(&self, k: i32) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(0) == k)
            .map(|(m, c)| {
                let mut m = m.clone();
                m.set_exp(0, 0);
                (m, c.clone())
            })
            .collect();
        Polynomial { table: self.table.clone(), terms }
    }

    /// Keeps only terms whose q-exponent is at most `k`.
    pub fn truncate_q(&self, k: i32) -> Polynomial {
        let terms = self.terms.iter().filter(|(m, _)| m.exp(0) <= k).cloned().collect();
        Polynomial { table: self.table.clone(), terms }
    }

    pub fn is_free_of(&self, vars: &[usize]) -> bool {
        self.terms.iter().all(|(m, _)| vars.iter().all(|&v| m.exp(v) == 0))
    }

    /// Exact division in the Laurent ring. `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        debug_assert_eq!(self.table, d.table);
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        if let Some((c, m)) = d.as_term() {
            return Some(self.mul_term(&c.recip(), &m.inv()));
        }
        // Shift both into the polynomial ring; a Laurent divisor without
        // monomial factor divides iff it divides there.
        let sn = self.min_monomial().unwrap();
        let sd = d.min_monomial().unwrap();
        let num = self.mul_monomial(&sn.inv());
        let den = d.mul_monomial(&sd.inv());
        let (lm, lc) = den.terms.last().unwrap().clone();
        let lc_inv = lc.recip();
        let mut rem: BTreeMap<Monomial, Rational> = num.terms.into_iter().collect();
        let mut quot: Vec<(Monomial, Rational)> = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            let qm = m.div(&lm);
            if !qm.is_nonnegative() {
                return None;
            }
            let qc = &c * &lc_inv;
            for (dm, dc) in den.terms.iter().take(den.terms.len() - 1) {
                let t = dm.mul(&qm);
                let v = &qc * dc;
                match rem.get_mut(&t) {
                    Some(x) => {
                        *x -= v;
                        if x.is_zero() {
                            rem.remove(&t);
                        }
                    }
                    None => {
                        rem.insert(t, -v);
                    }
                }
            }
            quot.push((qm, qc));
        }
        quot.reverse();
        let shift = sn.div(&sd);
        let terms = quot.into_iter().map(|(m, c)| (m.mul(&shift), c)).collect();
        Some(Polynomial { table: self.table.clone(), terms })
    }

    /// Rebuilds over another table with identical size (used after relabeling).
    pub fn with_table(&self, table: &VariableTable) -> Polynomial {
        assert_eq!(table.len(), self.table.len());
        Polynomial { table: table.clone(), terms: self.terms.clone() }
    }

    /// Maps every exponent vector through `f` and re-sorts.
    pub fn map_monomials<F: Fn(&Monomial) -> Monomial>(
        &self,
        table: &VariableTable,
        f: F,
    ) -> Polynomial {
        Self::from_terms(table, self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Structural order, used only to keep factor lists deterministic.
impl Ord for Polynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.terms
            .len()
            .cmp(&other.terms.len())
            .then_with(|| self.terms.cmp(&other.terms))
    }
}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        for (m, c) in &self.terms {
            m.hash(state);
            c.numer().hash(state);
            c.denom().hash(state);
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::poly_to_text(self))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}
