use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::poly::Polynomial;
use super::rational::{pow_rational, Rational};
use super::rx::RationalExpression;
use super::table::VariableTable;
use crate::error::{Error, Result};

/// Monomial substitution `v ↦ c_v * m_v` from one table into another.
///
/// Unbound variables map to the same-named variable of the target table.
#[derive(Clone, Debug)]
pub struct Substitution {
    source: VariableTable,
    target: VariableTable,
    images: Vec<(Rational, Monomial)>,
    bound: Vec<usize>,
}

impl Substitution {
    pub fn new(source: &VariableTable, target: &VariableTable) -> Self {
        let n = target.len();
        let images = source
            .names()
            .iter()
            .map(|name| match target.index_of(name) {
                Some(j) => (Rational::one(), Monomial::var(n, j, 1)),
                // Must be bound before use; zero marks it as missing.
                None => (Rational::zero(), Monomial::one(n)),
            })
            .collect();
        Substitution { source: source.clone(), target: target.clone(), images, bound: Vec::new() }
    }

    /// Binds `name ↦ c * m` where `m` is over the target table.
    pub fn bind(mut self, name: &str, c: Rational, m: Monomial) -> Result<Self> {
        let i = self.source.require(name)?;
        if m.len() != self.target.len() {
            return Err(Error::DimensionMismatch("binding monomial has wrong length".into()));
        }
        self.images[i] = (c, m);
        if !self.bound.contains(&i) {
            self.bound.push(i);
        }
        Ok(self)
    }

    /// Binds `name ↦ 1`.
    pub fn bind_one(self, name: &str) -> Result<Self> {
        let n = self.target.len();
        self.bind(name, Rational::one(), Monomial::one(n))
    }

    /// Binds `name` to the product of target variables raised to the given powers.
    pub fn bind_vars(self, name: &str, vars: &[(&str, i32)]) -> Result<Self> {
        let mut m = Monomial::one(self.target.len());
        for (v, e) in vars {
            let j = self.target.require(v)?;
            m.set_exp(j, m.exp(j) + e);
        }
        self.bind(name, Rational::one(), m)
    }

    pub fn source(&self) -> &VariableTable {
        &self.source
    }

    pub fn target(&self) -> &VariableTable {
        &self.target
    }

    /// Human-readable list of explicit bindings.
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        let mut bound = self.bound.clone();
        bound.sort_unstable();
        for i in bound {
            let (c, m) = &self.images[i];
            let img = Polynomial::term(&self.target, m.clone(), c.clone());
            parts.push(format!("{}->{}", self.source.name(i), img));
        }
        format!("{{{}}}", parts.join(", "))
    }

    fn missing(&self, m: &Monomial) -> Option<usize> {
        (0..m.len()).find(|&i| {
            m.exp(i) != 0
                && self.images[i].0.is_zero()
                && !self.bound.contains(&i)
        })
    }

    pub fn apply_poly(&self, p: &Polynomial) -> Result<Polynomial> {
        p.table().ensure_same(&self.source)?;
        let n = self.target.len();
        let mut terms = Vec::with_capacity(p.len());
        for (m, c) in p.terms() {
            if let Some(i) = self.missing(m) {
                return Err(Error::UnknownVariable(self.source.name(i).to_string()));
            }
            let mut coef = c.clone();
            let mut mono = Monomial::one(n);
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let (ci, mi) = &self.images[i];
                if !ci.is_one() {
                    coef *= pow_rational(ci, e).map_err(|_| Error::SubstitutionPole {
                        bindings: self.describe(),
                    })?;
                }
                mono = mono.mul(&mi.pow(e));
            }
            terms.push((mono, coef));
        }
        Ok(Polynomial::from_terms(&self.target, terms))
    }

    pub fn apply_rx(&self, a: &RationalExpression) -> Result<RationalExpression> {
        let num = self.apply_poly(a.num())?;
        let den = self.apply_poly(a.den())?;
        if den.is_zero() {
            return Err(Error::SubstitutionPole { bindings: self.describe() });
        }
        RationalExpression::new(num, den)
    }
}
