use num_traits::One;

use crate::algebra::{Factored, FactoredSum, Monomial, Permutation, Rational, RationalExpression, VariableTable};
use crate::error::{Error, Result};
use crate::kclass::{block_lambda, pair_factor, IsotropicType, Level, MultiDegree, SpaceDescriptor, SpaceKind};
use crate::parallel;

use super::coefficient::{JCoefficient, JForm, JTerm};
use super::combinat::{compositions, level_compositions, JumpProfile};

fn sign(odd: bool, table: &VariableTable) -> Factored {
    if odd {
        Factored::constant(table, -Rational::one())
    } else {
        Factored::one(table)
    }
}

/// `(1 - m)^e`.
fn one_minus(table: &VariableTable, m: Monomial, e: i32) -> Result<Factored> {
    Factored::one_minus(table, Rational::one(), m, e)
}

/// `L_v^∨ q^k` for the table index `v`.
fn dual_q(table: &VariableTable, v: usize, k: i32) -> Monomial {
    let mut m = Monomial::var(table.len(), 0, k);
    m.set_exp(v, -1);
    m
}

/// `∏_{ℓ=1}^{d} (1 - L_v^∨ q^ℓ)^{-n}`.
fn projective_denominator(table: &VariableTable, v: usize, n: usize, d: u32) -> Result<Factored> {
    let mut out = Factored::one(table);
    for l in 1..=d as i32 {
        out = out.mul(&one_minus(table, dual_q(table, v, l), -(n as i32))?);
    }
    Ok(out)
}

/// The finite reading of `∏_{m≤a}(1 - u q^m) / ∏_{m≤0}(1 - u q^m)`.
pub fn ratio_r_factored(table: &VariableTable, a: i64, u: &Monomial) -> Result<Factored> {
    let mut out = Factored::one(table);
    let step = |m: i64, e: i32| one_minus(table, u.mul(&Monomial::var(table.len(), 0, m as i32)), e);
    if a >= 0 {
        for m in 1..=a {
            out = out.mul(&step(m, 1)?);
        }
    } else {
        for m in a + 1..=0 {
            out = out.mul(&step(m, -1)?);
        }
    }
    Ok(out)
}

pub fn ratio_r(table: &VariableTable, a: i64, u: &Monomial) -> Result<RationalExpression> {
    Ok(ratio_r_factored(table, a, u)?.to_rx())
}

fn collect_terms<T: Sync>(
    items: &[T],
    f: impl Fn(&T) -> Result<JTerm> + Sync + Send,
) -> Result<Vec<JTerm>> {
    parallel::try_ordered_map(items, f)
}

fn single_level(space: &SpaceDescriptor) -> Result<(usize, usize, Vec<usize>)> {
    let (r, n) = space
        .as_grassmannian()
        .ok_or_else(|| Error::InvalidSpace(format!("{space} is not a Grassmannian")))?;
    Ok((r, n, space.levels()[0].vars.clone()))
}

/// `1 / ∏_{ℓ=1}^{d} (1 - L^∨ q^ℓ)^n` on `Gr(1, n)`.
pub fn projective_j(n: usize, d: u32) -> Result<JCoefficient> {
    let space = SpaceDescriptor::grassmannian(1, n)?;
    let v = space.var(1, 1);
    let value = projective_denominator(space.table(), v, n, d)?;
    let term = JTerm { composition: vec![vec![d]], value };
    Ok(JCoefficient::new(space, MultiDegree(vec![d]), JForm::Display, vec![term]))
}

/// One composition term of the closed Grassmannian formula.
pub fn grassmannian_display_term(table: &VariableTable, vars: &[usize], n: usize, comp: &[u32]) -> Result<Factored> {
    let r = vars.len();
    let d: u32 = comp.iter().sum();
    let mut out = sign((r as u32 - 1) * d % 2 == 1, table);
    for i in 0..r {
        for j in 0..i {
            let gap = comp[i] as i32 - comp[j] as i32;
            out = out.mul(&pair_factor(table, vars[i], vars[j], gap));
            out = out.div(&pair_factor(table, vars[i], vars[j], 0))?;
        }
        out = out.mul(&projective_denominator(table, vars[i], n, comp[i])?);
    }
    Ok(out)
}

/// Closed Grassmannian formula, summed over weak compositions as displayed.
pub fn grassmannian_j(r: usize, n: usize, d: u32) -> Result<JCoefficient> {
    let space = SpaceDescriptor::grassmannian(r, n)?;
    grassmannian_j_on(&space, d)
}

fn grassmannian_j_on(space: &SpaceDescriptor, d: u32) -> Result<JCoefficient> {
    let (r, n, vars) = single_level(space)?;
    let table = space.table();
    let comps = compositions(d, r);
    let terms = collect_terms(&comps, |c| {
        Ok(JTerm { composition: vec![c.clone()], value: grassmannian_display_term(table, &vars, n, c)? })
    })?;
    Ok(JCoefficient::new(space.clone(), MultiDegree(vec![d]), JForm::Display, terms))
}

/// λ₋₁ of the dual tangent space to the fixed flag of a jumping profile,
/// with the `(-1)^{r_i r_j (d_ij - 1)}` signs in the denominator.
pub fn quot_profile_tangent_euler_factored(
    table: &VariableTable,
    vars: &[usize],
    profile: &JumpProfile,
    n: usize,
) -> Result<Factored> {
    if vars.len() != profile.rank() {
        return Err(Error::DimensionMismatch(format!("profile {profile} has rank {} but {} variables", profile.rank(), vars.len())));
    }
    let blocks = profile.multiplicities();
    let degs = profile.block_degrees();
    let mut starts = Vec::with_capacity(blocks.len());
    let mut acc = 0;
    for &b in blocks {
        starts.push(acc);
        acc += b;
    }
    let mut out = Factored::one(table);
    for (i, &b) in blocks.iter().enumerate() {
        for s in starts[i]..starts[i] + b {
            out = out.mul(&projective_denominator(table, vars[s], n, degs[i])?.recip()?);
        }
    }
    for i in 0..blocks.len() {
        for j in 0..i {
            let dij = profile.gap(i, j);
            let (ri, rj) = (blocks[i] as i64, blocks[j] as i64);
            out = out.mul(&sign((ri * rj * (dij - 1)).rem_euclid(2) == 1, table));
            for s in starts[i]..starts[i] + blocks[i] {
                for t in starts[j]..starts[j] + blocks[j] {
                    out = out.div(&pair_factor(table, vars[s], vars[t], dij as i32))?;
                }
            }
        }
    }
    Ok(out)
}

pub fn quot_profile_tangent_euler(profile: &JumpProfile, n: usize) -> Result<RationalExpression> {
    let space = SpaceDescriptor::grassmannian(profile.rank(), n.max(profile.rank() + 1))?;
    let vars = space.levels()[0].vars.clone();
    Ok(quot_profile_tangent_euler_factored(space.table(), &vars, profile, n)?.to_rx())
}

/// Grassmannian coefficient via jumping profiles and Weyl pushforward.
///
/// Each term is labelled by the composition `w(d)` it lands on.
pub fn grassmannian_j_structured(r: usize, n: usize, d: u32) -> Result<JCoefficient> {
    let space = SpaceDescriptor::grassmannian(r, n)?;
    grassmannian_j_structured_on(&space, d)
}

pub(crate) fn grassmannian_j_structured_on(space: &SpaceDescriptor, d: u32) -> Result<JCoefficient> {
    let (r, n, vars) = single_level(space)?;
    let table = space.table();
    let group = space.level_group(1);
    let mut jobs = Vec::new();
    for p in JumpProfile::all(r, d) {
        let integrand = quot_profile_tangent_euler_factored(table, &vars, &p, n)?
            .recip()?
            .div(&block_lambda(table, &vars, p.multiplicities()))?;
        for w in Permutation::shuffles(p.multiplicities()) {
            jobs.push((p.clone(), integrand.clone(), w));
        }
    }
    let mut terms = collect_terms(&jobs, |(p, f, w)| {
        let mut comp = vec![0; r];
        for (i, &di) in p.degrees().iter().enumerate() {
            comp[w.image(i)] = di;
        }
        Ok(JTerm { composition: vec![comp], value: f.permute(w, &group)? })
    })?;
    terms.sort_by(|a, b| a.composition.cmp(&b.composition));
    Ok(JCoefficient::new(space.clone(), MultiDegree(vec![d]), JForm::Structured, terms))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlagForm {
    Canonical,
    TheoremRatio,
}

impl FlagForm {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "canonical" => Ok(FlagForm::Canonical),
            "theorem_ratio" | "theorem-ratio" => Ok(FlagForm::TheoremRatio),
            _ => Err(Error::InvalidParameter(format!("unknown flag form `{s}`"))),
        }
    }
}

fn flag_levels(space: &SpaceDescriptor) -> Result<(Vec<Level>, usize)> {
    match space.kind() {
        SpaceKind::Flag { n, .. } => Ok((space.levels().to_vec(), *n)),
        SpaceKind::Grassmannian { n, .. } | SpaceKind::Projective { n } => Ok((space.levels().to_vec(), *n)),
        _ => Err(Error::InvalidSpace(format!("{space} is not a type A flag"))),
    }
}

/// One per-level composition term of the flag formula. The level above
/// the last is virtual: rank `n`, trivial bundles, zero degrees.
pub fn flag_term(
    table: &VariableTable,
    levels: &[Level],
    n: usize,
    comp: &[Vec<u32>],
    form: FlagForm,
) -> Result<Factored> {
    let l = levels.len();
    let mut out = Factored::one(table);
    for i in 0..l {
        let vars = &levels[i].vars;
        let m = vars.len();
        let di: u32 = comp[i].iter().sum();
        out = out.mul(&sign((m as u32 - 1) * di % 2 == 1, table));
        match form {
            FlagForm::Canonical => {
                for j in 0..m {
                    for k in 0..j {
                        let gap = comp[i][j] as i32 - comp[i][k] as i32;
                        out = out.mul(&pair_factor(table, vars[j], vars[k], gap));
                        out = out.div(&pair_factor(table, vars[j], vars[k], 0))?;
                    }
                }
            }
            FlagForm::TheoremRatio => {
                for j in 0..m {
                    for k in (0..m).filter(|&k| k != j) {
                        let u = pair_monomial(table, vars[j], Some(vars[k]));
                        let a = comp[i][k] as i64 - comp[i][j] as i64;
                        out = out.mul(&ratio_r_factored(table, a, &u)?);
                    }
                }
            }
        }
        for j in 0..m {
            if i + 1 < l {
                for (k, &v) in levels[i + 1].vars.iter().enumerate() {
                    let a = comp[i][j] as i64 - comp[i + 1][k] as i64;
                    let u = pair_monomial(table, vars[j], Some(v));
                    out = out.div(&ratio_r_factored(table, a, &u)?)?;
                }
            } else {
                let u = pair_monomial(table, vars[j], None);
                let r = ratio_r_factored(table, comp[i][j] as i64, &u)?;
                out = out.div(&r.pow(n as i32)?)?;
            }
        }
    }
    Ok(out)
}

/// `L_a^∨ L_b`, or `L_a^∨` when `b` is a trivial bundle.
fn pair_monomial(table: &VariableTable, a: usize, b: Option<usize>) -> Monomial {
    let mut m = Monomial::one(table.len());
    m.set_exp(a, -1);
    if let Some(b) = b {
        m.set_exp(b, m.exp(b) + 1);
    }
    m
}

pub fn flag_j(dims: &[usize], n: usize, d: &MultiDegree, form: FlagForm) -> Result<JCoefficient> {
    let space = SpaceDescriptor::flag(dims, n)?;
    flag_j_on(&space, d, form)
}

fn flag_j_on(space: &SpaceDescriptor, d: &MultiDegree, form: FlagForm) -> Result<JCoefficient> {
    let (levels, n) = flag_levels(space)?;
    if d.0.len() != levels.len() {
        return Err(Error::DimensionMismatch(format!("degree {d} has {} entries for {} levels", d.0.len(), levels.len())));
    }
    let ranks: Vec<usize> = levels.iter().map(|l| l.rank).collect();
    let comps = level_compositions(&d.0, &ranks);
    let table = space.table();
    let terms = collect_terms(&comps, |c| {
        Ok(JTerm { composition: c.clone(), value: flag_term(table, &levels, n, c, form)? })
    })?;
    let jform = match form {
        FlagForm::Canonical => JForm::Canonical,
        FlagForm::TheoremRatio => JForm::TheoremRatio,
    };
    Ok(JCoefficient::new(space.clone(), d.clone(), jform, terms))
}

/// `λ₋₁(E^∨)` for the flag cut out of a product of Grassmannians, over
/// consecutive level pairs.
pub fn flag_obstruction_euler(dims: &[usize], n: usize) -> Result<RationalExpression> {
    let space = SpaceDescriptor::flag(dims, n)?;
    let table = space.table();
    let levels = space.levels();
    let mut out = Factored::one(table);
    for i in 0..levels.len().saturating_sub(1) {
        for &a in &levels[i].vars {
            out = out.mul(&one_minus(table, dual_q(table, a, 0), n as i32)?);
            for &b in &levels[i + 1].vars {
                out = out.div(&pair_factor(table, a, b, 0))?;
            }
        }
    }
    Ok(out.to_rx())
}

/// Per-term fixed-locus integrand `α_F^*[O] / λ₋₁(E^∨)` for a per-level
/// composition.
pub fn flag_fixed_contribution(dims: &[usize], n: usize, comp: &[Vec<u32>]) -> Result<RationalExpression> {
    let space = SpaceDescriptor::flag(dims, n)?;
    let table = space.table();
    let levels = space.levels();
    if comp.len() != levels.len() || comp.iter().zip(levels).any(|(c, l)| c.len() != l.rank) {
        return Err(Error::DimensionMismatch("composition does not match the flag dimensions".into()));
    }
    let mut out = Factored::one(table);
    for (i, level) in levels.iter().enumerate() {
        for (j, &a) in level.vars.iter().enumerate() {
            out = out.div(&projective_denominator(table, a, n, comp[i][j])?)?;
            if i + 1 < levels.len() {
                for (k, &b) in levels[i + 1].vars.iter().enumerate() {
                    let gap = comp[i][j] as i32 - comp[i + 1][k] as i32;
                    out = out.div(&pair_factor(table, a, b, gap))?;
                }
            }
        }
    }
    Ok(out.to_rx())
}

/// Product of the component coefficients over the joint table.
///
/// Projective and Grassmannian components use the closed formula; flag
/// components use the canonical form.
pub fn product_j(parts: &[SpaceDescriptor], degrees: &MultiDegree) -> Result<JCoefficient> {
    let space = SpaceDescriptor::product(parts.to_vec())?;
    product_j_on(&space, degrees)
}

pub fn product_j_on(space: &SpaceDescriptor, degrees: &MultiDegree) -> Result<JCoefficient> {
    let SpaceKind::Product(parts) = space.kind() else {
        return Err(Error::InvalidSpace(format!("{space} is not a product")));
    };
    let total_levels: usize = parts.iter().map(|p| p.num_levels()).sum();
    if degrees.0.len() != total_levels {
        return Err(Error::DimensionMismatch(format!("degree {degrees} has {} entries for {total_levels} levels", degrees.0.len())));
    }
    let table = space.table();
    let mut terms = vec![JTerm { composition: Vec::new(), value: Factored::one(table) }];
    let mut offset = 0;
    for p in parts {
        let levels = &space.levels()[offset..offset + p.num_levels()];
        let degs = &degrees.0[offset..offset + p.num_levels()];
        offset += p.num_levels();
        let local = component_terms(p, levels, degs, table)?;
        let mut next = Vec::with_capacity(terms.len() * local.len());
        for t in &terms {
            for u in &local {
                let mut composition = t.composition.clone();
                composition.extend(u.composition.iter().cloned());
                next.push(JTerm { composition, value: t.value.mul(&u.value) });
            }
        }
        terms = next;
    }
    Ok(JCoefficient::new(space.clone(), degrees.clone(), JForm::Product, terms))
}

fn component_terms(part: &SpaceDescriptor, levels: &[Level], degs: &[u32], table: &VariableTable) -> Result<Vec<JTerm>> {
    match part.kind() {
        SpaceKind::Point => Ok(vec![JTerm { composition: Vec::new(), value: Factored::one(table) }]),
        SpaceKind::Projective { n } | SpaceKind::Grassmannian { n, .. } => {
            let vars = &levels[0].vars;
            compositions(degs[0], vars.len())
                .into_iter()
                .map(|c| {
                    let value = grassmannian_display_term(table, vars, *n, &c)?;
                    Ok(JTerm { composition: vec![c], value })
                })
                .collect()
        }
        SpaceKind::Flag { n, .. } => {
            let ranks: Vec<usize> = levels.iter().map(|l| l.rank).collect();
            level_compositions(degs, &ranks)
                .into_iter()
                .map(|c| {
                    let value = flag_term(table, levels, *n, &c, FlagForm::Canonical)?;
                    Ok(JTerm { composition: c, value })
                })
                .collect()
        }
        _ => Err(Error::InvalidSpace(format!("unsupported product component {part}"))),
    }
}

/// `(ℙ^{n-1})^r` with one degree per factor.
pub fn projective_power_j(n: usize, degrees: &[u32]) -> Result<JCoefficient> {
    let space = SpaceDescriptor::projective_power(n, degrees.len())?;
    product_j_on(&space, &MultiDegree(degrees.to_vec()))
}

/// `L_j^∨ L_k^∨ q^m`.
fn double_dual(table: &VariableTable, a: usize, b: usize, m: i32) -> Monomial {
    let mut mono = Monomial::var(table.len(), 0, m);
    mono.set_exp(a, mono.exp(a) - 1);
    mono.set_exp(b, mono.exp(b) - 1);
    mono
}

/// `(-1)^{(i-1)d}`, the per-level sign of the conjectured formulas.
pub fn isotropic_sign(i: usize, d: u32) -> i64 {
    if (i as u64 - 1) * d as u64 % 2 == 1 {
        -1
    } else {
        1
    }
}

fn isotropic_term(table: &VariableTable, vars: &[usize], comp: &[u32], ty: IsotropicType) -> Result<Factored> {
    let n = vars.len();
    let d: u32 = comp.iter().sum();
    let mut out = Factored::one(table);
    for i in 1..=n {
        out = out.mul(&sign(isotropic_sign(i, d) < 0, table));
        for k in 1..=i {
            let lower = match ty {
                IsotropicType::C => 1..k,
                IsotropicType::BD => 1..k + 1,
            };
            for j in lower {
                let (a, b) = (vars[j - 1], vars[k - 1]);
                for m in 0..=(comp[j - 1] + comp[k - 1]) as i32 {
                    out = out.mul(&one_minus(table, double_dual(table, a, b, m), 1)?);
                }
                out = out.mul(&one_minus(table, double_dual(table, a, b, 0), -1)?);
            }
        }
        for k in 1..=i {
            for j in 1..k {
                let gap = comp[k - 1] as i32 - comp[j - 1] as i32;
                out = out.mul(&pair_factor(table, vars[k - 1], vars[j - 1], gap));
                out = out.div(&pair_factor(table, vars[k - 1], vars[j - 1], 0))?;
            }
        }
    }
    // The diagonal j = k factors would be 1 - q^0 = 0; they are left out.
    for i in 1..n {
        for j in 1..=i {
            for k in (1..=i + 1).filter(|&k| k != j) {
                let gap = comp[j - 1] as i32 - comp[k - 1] as i32;
                out = out.div(&pair_factor(table, vars[j - 1], vars[k - 1], gap))?;
            }
        }
    }
    Ok(out)
}

fn isotropic_j(ty: IsotropicType, n: usize, d: u32) -> Result<JCoefficient> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("conjectural formulas need n >= 2, got {n}")));
    }
    let space = SpaceDescriptor::isotropic_flag(ty, n)?;
    let table = space.table();
    let vars = space.levels()[0].vars.clone();
    let comps = compositions(d, n);
    let terms = collect_terms(&comps, |c| {
        Ok(JTerm { composition: vec![c.clone()], value: isotropic_term(table, &vars, c, ty)? })
    })?;
    Ok(JCoefficient::new(space.clone(), MultiDegree(vec![d]), JForm::Conjecture, terms).conjectural())
}

/// Literal evaluation of the conjectured Lagrangian complete flag formula.
pub fn lagrangian_flag_j_conjecture(n: usize, d: u32) -> Result<JCoefficient> {
    isotropic_j(IsotropicType::C, n, d)
}

/// Literal evaluation of the conjectured type B/D complete flag formula.
pub fn bd_flag_j_conjecture(n: usize, d: u32) -> Result<JCoefficient> {
    isotropic_j(IsotropicType::BD, n, d)
}

/// Dispatches on the space kind. Grassmannians with `r >= 2` use the
/// structured route, which is Weyl invariant.
pub fn j_coefficient(space: &SpaceDescriptor, degree: &MultiDegree) -> Result<JCoefficient> {
    let one = |d: &MultiDegree| d.0.len() == 1;
    match space.kind() {
        SpaceKind::Point => Ok(JCoefficient::new(
            space.clone(),
            MultiDegree(Vec::new()),
            JForm::Display,
            vec![JTerm { composition: Vec::new(), value: Factored::one(space.table()) }],
        )),
        SpaceKind::Projective { .. } | SpaceKind::Grassmannian { .. } if one(degree) => {
            let (r, _) = space.as_grassmannian().unwrap();
            if r == 1 {
                grassmannian_j_on(space, degree.0[0])
            } else {
                grassmannian_j_structured_on(space, degree.0[0])
            }
        }
        SpaceKind::Flag { .. } => flag_j_on(space, degree, FlagForm::Canonical),
        SpaceKind::Product(_) => product_j_on(space, degree),
        SpaceKind::IsotropicFlag { ty, n } if one(degree) => isotropic_j(*ty, *n, degree.0[0]),
        _ => Err(Error::DimensionMismatch(format!("degree {degree} does not fit {space}"))),
    }
}

/// `χ(J_d ⊗ γ)` expanded through `q^order`, for Grassmannians.
pub fn descendant_series(
    space: &SpaceDescriptor,
    degree: &MultiDegree,
    gamma: &FactoredSum,
    order: u32,
) -> Result<crate::algebra::Polynomial> {
    let j = j_coefficient(space, degree)?;
    crate::kclass::chi_series(space, j.value(), gamma, order)
}
