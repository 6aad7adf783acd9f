use num_traits::One;

use crate::algebra::{
    Factored, FactoredSum, Monomial, Polynomial, Rational, RationalExpression, Substitution, VariableTable,
};
use crate::error::{Error, Result};
use crate::parallel;

use super::pushforward::check_block_invariant;
use super::space::{x_name, SpaceDescriptor};

/// All `r`-subsets of `{1..n}` in lexicographic order.
pub fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for k in start..=n {
            if n - k + 1 < r - cur.len() {
                break;
            }
            cur.push(k);
            rec(k + 1, n, r, cur, out);
            cur.pop();
        }
    }
    rec(1, n, r, &mut cur, &mut out);
    out
}

fn restriction(space: &SpaceDescriptor, subset: &[usize], target: &VariableTable) -> Result<Substitution> {
    let (r, n) = space
        .as_grassmannian()
        .ok_or_else(|| Error::InvalidSpace(format!("{space} is not a Grassmannian")))?;
    if subset.len() != r || subset.iter().any(|&i| i == 0 || i > n) || !subset.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::InvalidParameter(format!("{subset:?} is not an increasing {r}-subset of 1..{n}")));
    }
    let mut s = Substitution::new(space.table(), target);
    for (j, &i) in subset.iter().enumerate() {
        let name = space.table().name(space.var(1, j + 1)).to_string();
        // L_j^∨ ↦ x_{i_j}, i.e. L_j ↦ x_{i_j}^{-1}.
        s = s.bind_vars(&name, &[(&x_name(i), -1)])?;
    }
    Ok(s)
}

/// Restriction to the torus-fixed point indexed by `subset`.
pub fn fixed_point_restrict_sum(f: &FactoredSum, space: &SpaceDescriptor, subset: &[usize]) -> Result<FactoredSum> {
    let target = space.fixed_table()?;
    f.substitute(&restriction(space, subset, &target)?)
}

pub fn fixed_point_restrict(
    f: &RationalExpression,
    space: &SpaceDescriptor,
    subset: &[usize],
) -> Result<RationalExpression> {
    let target = space.fixed_table()?;
    f.substitute(&restriction(space, subset, &target)?)
}

/// `∏_{i∈I, j∉I} (1 - x_j / x_i)`.
pub fn normal_euler(table: &VariableTable, n: usize, subset: &[usize]) -> Result<Factored> {
    let mut out = Factored::one(table);
    for &i in subset {
        for j in (1..=n).filter(|j| !subset.contains(j)) {
            let mut m = Monomial::one(table.len());
            m.set_exp(table.require(&x_name(j))?, 1);
            m.set_exp(table.require(&x_name(i))?, -1);
            out = out.mul(&Factored::one_minus(table, Rational::one(), m, 1)?);
        }
    }
    Ok(out)
}

fn grassmannian_invariance(f: &FactoredSum, space: &SpaceDescriptor) -> Result<()> {
    let (r, _) = space.as_grassmannian().ok_or_else(|| Error::InvalidSpace(format!("{space} is not a Grassmannian")))?;
    check_block_invariant(f, &space.level_group(1), &[r])
}

/// `Σ_I f|_I / λ₋₁(N_I^∨)`, exact in the equivariant parameters `x`.
pub fn equivariant_euler_characteristic(f: &FactoredSum, space: &SpaceDescriptor) -> Result<FactoredSum> {
    grassmannian_invariance(f, space)?;
    let (r, n) = space.as_grassmannian().unwrap();
    let target = space.fixed_table()?;
    let subs = subsets(n, r);
    let parts = parallel::try_ordered_map(&subs, |s| -> Result<FactoredSum> {
        let restricted = f.substitute(&restriction(space, s, &target)?)?;
        Ok(restricted.mul_term(&normal_euler(&target, n, s)?.recip()?))
    })?;
    let mut out = FactoredSum::zero(&target);
    for p in parts {
        out = out.add(&p);
    }
    Ok(out)
}

const WEIGHT_CHOICES: [[i32; 8]; 2] = [[1, 2, 4, 8, 16, 32, 64, 128], [1, 3, 7, 13, 29, 53, 97, 181]];

/// Non-equivariant Euler characteristic: the `x → 1` limit of the
/// equivariant one, taken along `x_k = t^{w_k}`.
///
/// Returns an expression in `q` alone.
pub fn euler_characteristic(f: &FactoredSum, space: &SpaceDescriptor) -> Result<RationalExpression> {
    let chi = equivariant_euler_characteristic(f, space)?;
    let (_, n) = space.as_grassmannian().unwrap();
    if n > WEIGHT_CHOICES[0].len() {
        return Err(Error::InvalidParameter(format!("n = {n} exceeds the supported torus rank")));
    }
    let mut last = None;
    for weights in WEIGHT_CHOICES {
        match limit_along_curve(&chi, n, &weights[..n]) {
            Err(Error::SubstitutionPole { bindings }) => last = Some(Error::SubstitutionPole { bindings }),
            other => return other,
        }
    }
    Err(last.unwrap())
}

fn limit_along_curve(chi: &FactoredSum, n: usize, weights: &[i32]) -> Result<RationalExpression> {
    let curve = VariableTable::new(["t"])?;
    let t = 1;
    let mut s = Substitution::new(chi.table(), &curve);
    for k in 1..=n {
        s = s.bind(&x_name(k), Rational::one(), Monomial::var(curve.len(), t, weights[k - 1]))?;
    }
    let on_curve = chi.substitute(&s)?.reduce();
    let t_minus_1 = Polynomial::var(&curve, "t")?.sub(&Polynomial::one(&curve));
    let q_table = VariableTable::q_only();
    // Strip (t - 1) from the numerator and from each denominator factor.
    let (vn, num_rest) = strip_t_minus_1(&on_curve.num, &t_minus_1);
    let mut vd = 0;
    let mut den_at_1 = Polynomial::one(&q_table);
    for (fac, e) in &on_curve.den {
        let (v, rest) = strip_t_minus_1(fac, &t_minus_1);
        vd += v * *e as usize;
        den_at_1 = den_at_1.mul(&at_t_equals_1(&rest, &q_table).pow(*e as u32));
    }
    if on_curve.num.is_zero() {
        return Ok(RationalExpression::zero(&q_table));
    }
    if vn < vd {
        return Err(Error::EquivariantPole(format!("pole of order {} at x = 1", vd - vn)));
    }
    if vn > vd {
        return Ok(RationalExpression::zero(&q_table));
    }
    RationalExpression::new(at_t_equals_1(&num_rest, &q_table), den_at_1)
}

fn strip_t_minus_1(p: &Polynomial, t_minus_1: &Polynomial) -> (usize, Polynomial) {
    let mut v = 0;
    let mut cur = p.clone();
    if cur.is_zero() {
        return (0, cur);
    }
    loop {
        if !at_t_equals_1(&cur, &VariableTable::q_only()).is_zero() {
            return (v, cur);
        }
        cur = cur.div_exact(t_minus_1).expect("vanishing at t = 1 implies divisibility by t - 1");
        v += 1;
    }
}

/// Drops the `t` exponent, i.e. sets `t = 1`, landing in the q-only table.
fn at_t_equals_1(p: &Polynomial, q_table: &VariableTable) -> Polynomial {
    Polynomial::from_terms(
        q_table,
        p.terms().iter().map(|(m, c)| (Monomial::from_exps([m.exp(0)]), c.clone())),
    )
}

/// Checks that an equivariant Euler characteristic is free of the `x`.
pub fn is_x_free(chi: &FactoredSum) -> bool {
    let table = chi.table();
    let xs: Vec<usize> = (1..table.len()).collect();
    let rx = chi.to_rx();
    rx.is_free_of(&xs)
}

/// Non-equivariant Euler characteristic of `j ⊗ gamma` expanded in q.
pub fn chi_series(
    space: &SpaceDescriptor,
    j_value: &FactoredSum,
    gamma: &FactoredSum,
    order: u32,
) -> Result<Polynomial> {
    let chi = euler_characteristic(&j_value.mul(gamma), space)?;
    crate::algebra::rx_q_series(&chi, order)
}

