use super::monomial::Monomial;
use super::poly::Polynomial;
use crate::error::{Error, Result};

/// Bijection of `0..n`, `w(i) = images[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::Permutation(format!("not a bijection: {images:?}")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Swap of positions `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        if a >= n || b >= n {
            return Err(Error::Permutation(format!("transposition ({a},{b}) outside 0..{n}")));
        }
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Ok(Permutation { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &w)| i == w)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.len() != other.len() {
            return Err(Error::Permutation("composing permutations of different sizes".into()));
        }
        Ok(Permutation { images: other.images.iter().map(|&i| self.images[i]).collect() })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &w) in self.images.iter().enumerate() {
            inv[w] = i;
        }
        Permutation { images: inv }
    }

    pub fn inversions(&self) -> usize {
        let w = &self.images;
        let mut k = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    k += 1;
                }
            }
        }
        k
    }

    /// All permutations of `0..n` in lexicographic order of image vectors.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation { images: cur.clone() });
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }

    /// Minimal coset representatives of `S_n / (S_{b_1} × … × S_{b_k})` for
    /// consecutive blocks of the given sizes: permutations increasing on
    /// each block, in lexicographic order.
    pub fn shuffles(blocks: &[usize]) -> Vec<Permutation> {
        let n: usize = blocks.iter().sum();
        let mut out = Vec::new();
        let mut images = vec![0usize; n];
        let mut used = vec![false; n];
        fn rec(
            blocks: &[usize],
            b: usize,
            start: usize,
            pos: usize,
            min: usize,
            images: &mut Vec<usize>,
            used: &mut Vec<bool>,
            out: &mut Vec<Permutation>,
        ) {
            if b == blocks.len() {
                out.push(Permutation { images: images.clone() });
                return;
            }
            if pos == start + blocks[b] {
                rec(blocks, b + 1, pos, pos, 0, images, used, out);
                return;
            }
            for v in min..used.len() {
                if !used[v] {
                    used[v] = true;
                    images[pos] = v;
                    rec(blocks, b, start, pos + 1, v + 1, images, used, out);
                    used[v] = false;
                }
            }
        }
        rec(blocks, 0, 0, 0, 0, &mut images, &mut used, &mut out);
        out
    }
}

/// Table indices of a group of variables permuted together, e.g. the
/// `L[i,1..m]` of one level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarGroup {
    vars: Vec<usize>,
}

impl VarGroup {
    pub fn new(vars: Vec<usize>) -> Self {
        VarGroup { vars }
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    /// Moves the exponent of `vars[i]` onto `vars[w(i)]`.
    pub fn apply_monomial(&self, w: &Permutation, m: &Monomial) -> Monomial {
        let mut out = m.clone();
        for (i, &v) in self.vars.iter().enumerate() {
            out.set_exp(self.vars[w.image(i)], m.exp(v));
        }
        out
    }

    fn check(&self, w: &Permutation, nvars: usize) -> Result<()> {
        if w.len() != self.vars.len() {
            return Err(Error::Permutation(format!(
                "permutation of {} points applied to a group of {} variables",
                w.len(),
                self.vars.len()
            )));
        }
        if let Some(v) = self.vars.iter().find(|&&v| v >= nvars) {
            return Err(Error::Permutation(format!("variable index {v} outside the table")));
        }
        Ok(())
    }

    pub fn apply_poly(&self, w: &Permutation, p: &Polynomial) -> Result<Polynomial> {
        self.check(w, p.table().len())?;
        if w.is_identity() {
            return Ok(p.clone());
        }
        Ok(p.map_monomials(p.table(), |m| self.apply_monomial(w, m)))
    }
}
