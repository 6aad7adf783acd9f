use smallvec::SmallVec;

/// Exponent vector, one entry per table variable. Negative entries allowed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(SmallVec<[i32; 8]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, i: usize, e: i32) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = e;
        m
    }

    pub fn from_exps<I: IntoIterator<Item = i32>>(exps: I) -> Self {
        Monomial(exps.into_iter().collect())
    }

    pub fn exps(&self) -> &[i32] {
        &self.0
    }

    pub fn exp(&self, i: usize) -> i32 {
        self.0[i]
    }

    pub fn set_exp(&mut self, i: usize, e: i32) {
        self.0[i] = e;
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn div(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn inv(&self) -> Monomial {
        Monomial(self.0.iter().map(|a| -a).collect())
    }

    pub fn pow(&self, k: i32) -> Monomial {
        Monomial(self.0.iter().map(|a| a * k).collect())
    }

    /// Componentwise minimum.
    pub fn min_with(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn max_with(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    /// True when only variable 0 (q) may carry a nonzero exponent.
    pub fn is_q_power(&self) -> bool {
        self.0.iter().skip(1).all(|&e| e == 0)
    }
}
