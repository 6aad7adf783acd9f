use num_traits::One;
use serde_json::json;

use crate::algebra::{
    Factored, FactoredSum, Monomial, Polynomial, Rational, RationalExpression, Substitution, VariableTable,
};
use crate::error::{Error, Result};
use crate::jfunc::{
    compositions, flag_j, grassmannian_display_term, grassmannian_j, grassmannian_j_structured, level_compositions,
    product_j_on, projective_j, projective_power_j, FlagForm, JCoefficient, JForm, JTerm,
};
use crate::kclass::{block_transpositions, chi_series, l_name, MultiDegree, SpaceDescriptor, SpaceKind};
use crate::parallel;

use super::report::{IdentityReport, Mode, TermOutcome, Verdict};

fn comp_label(c: &[Vec<u32>]) -> String {
    let parts: Vec<String> = c
        .iter()
        .map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
        .collect();
    format!("({})", parts.join(";"))
}

fn unit_text(table: &VariableTable, c: &Rational, m: &Monomial) -> String {
    Polynomial::term(table, m.clone(), c.clone()).to_string()
}

/// `lhs / rhs` as a monomial unit, if it is one.
fn unit_between(lhs: &RationalExpression, rhs: &RationalExpression) -> Result<Option<(Rational, Monomial)>> {
    if lhs.is_zero() || rhs.is_zero() {
        return Ok(None);
    }
    lhs.unit_ratio(rhs)
}

fn compare_factored(lhs: &Factored, rhs: &Factored) -> Result<(Verdict, Option<(Rational, Monomial)>)> {
    let ratio = lhs.div(rhs)?.to_rx();
    let unit = match (ratio.den().is_one(), ratio.num().as_term()) {
        (true, Some((c, m))) => Some((c.clone(), m.clone())),
        _ => unit_between(&lhs.to_rx(), &rhs.to_rx())?,
    };
    Ok(classify(unit))
}

fn compare_rx(lhs: &RationalExpression, rhs: &RationalExpression) -> Result<(Verdict, Option<(Rational, Monomial)>)> {
    if lhs.equals(rhs)? {
        let one = Monomial::one(lhs.table().len());
        return Ok((Verdict::Pass, Some((Rational::one(), one))));
    }
    Ok(classify(unit_between(lhs, rhs)?))
}

fn classify(unit: Option<(Rational, Monomial)>) -> (Verdict, Option<(Rational, Monomial)>) {
    match unit {
        Some((c, m)) if c.is_one() && m.is_one() => (Verdict::Pass, Some((c, m))),
        Some(u) => (Verdict::Residual, Some(u)),
        None => (Verdict::Mismatch, None),
    }
}

fn outcome(
    label: String,
    table: &VariableTable,
    (verdict, unit): (Verdict, Option<(Rational, Monomial)>),
    passes: impl FnOnce(Verdict, Option<&(Rational, Monomial)>) -> bool,
) -> TermOutcome {
    let ok = passes(verdict, unit.as_ref());
    TermOutcome { label, verdict, residual: unit.as_ref().map(|(c, m)| unit_text(table, c, m)), passes: ok }
}

fn by_mode(mode: Mode) -> impl Fn(Verdict, Option<&(Rational, Monomial)>) -> bool {
    move |v, _| match mode {
        Mode::Strict => v == Verdict::Pass,
        Mode::UnitTolerant => v != Verdict::Mismatch,
    }
}

fn aggregate(lhs: &FactoredSum, rhs: &FactoredSum, mode: Mode, gating_in_tolerant: bool) -> Result<TermOutcome> {
    let equal = lhs.equals(rhs)?;
    let verdict = if equal { Verdict::Pass } else { Verdict::Mismatch };
    let passes = equal || (mode == Mode::UnitTolerant && !gating_in_tolerant);
    Ok(TermOutcome { label: "sum".into(), verdict, residual: equal.then(|| "1".into()), passes })
}

fn projective_power_levels(space: &SpaceDescriptor) -> Result<usize> {
    match space.kind() {
        SpaceKind::Product(parts) if parts.iter().all(|p| matches!(p.kind(), SpaceKind::Projective { .. })) => {
            Ok(parts.len())
        }
        _ => Err(Error::InvalidSpace(format!("{space} is not a product of projective spaces"))),
    }
}

/// `q^{∂/∂t_i}` on a coefficient: every term times `L_i^∨ q^{d_i}`.
pub fn shift_op_apply(i: usize, coeff: &JCoefficient) -> Result<JCoefficient> {
    let r = projective_power_levels(&coeff.space)?;
    if i == 0 || i > r {
        return Err(Error::InvalidParameter(format!("level {i} out of range 1..{r}")));
    }
    let space = &coeff.space;
    let m = space.char_monomial(&[(i, 1, -1)], coeff.degree.0[i - 1] as i32);
    let terms = coeff
        .terms
        .iter()
        .map(|t| JTerm { composition: t.composition.clone(), value: t.value.mul_monomial(&m) })
        .collect();
    Ok(JCoefficient::new(space.clone(), coeff.degree.clone(), JForm::Product, terms))
}

/// `∏_{i>j} (L_i^∨ q^{d_i} - L_j^∨ q^{d_j}) / (L_i^∨ - L_j^∨)`.
fn dd_delta_factor(space: &SpaceDescriptor, degrees: &[u32]) -> Result<Factored> {
    let table = space.table();
    let r = degrees.len();
    let dual = |i: usize, k: u32| Polynomial::monomial(table, space.char_monomial(&[(i, 1, -1)], k as i32));
    let mut out = Factored::one(table);
    for i in 1..=r {
        for j in 1..i {
            let num = dual(i, degrees[i - 1]).sub(&dual(j, degrees[j - 1]));
            let den = dual(i, 0).sub(&dual(j, 0));
            out = out.mul(&Factored::from_poly(&num)).div(&Factored::from_poly(&den))?;
        }
    }
    Ok(out)
}

/// `𝒟_Δ(coeff) / Δ` with `Δ = ∏_{i>j}(L_i^∨ - L_j^∨)`.
pub fn dd_delta_apply(coeff: &JCoefficient) -> Result<RationalExpression> {
    projective_power_levels(&coeff.space)?;
    let f = dd_delta_factor(&coeff.space, &coeff.degree.0)?;
    Ok(coeff.value().mul_term(&f).to_rx())
}

/// Difference-operator side of the correspondence for one composition,
/// moved onto the Grassmannian's variables and specialized by the sign
/// `(-1)^{(r-1)d}`.
pub fn abelian_side_term(gr: &SpaceDescriptor, n: usize, comp: &[u32]) -> Result<Factored> {
    let r = comp.len();
    let d: u32 = comp.iter().sum();
    let pj = projective_power_j(n, comp)?;
    let prod = &pj.space;
    let lhs = pj.value().mul_term(&dd_delta_factor(prod, comp)?);
    let mut s = Substitution::new(prod.table(), gr.table());
    for i in 1..=r {
        s = s.bind_vars(&l_name(i, 1), &[(&l_name(1, i), 1)])?;
    }
    let moved = lhs.substitute(&s)?;
    let [term] = moved.terms() else {
        return Err(Error::DimensionMismatch("expected a single product term".into()));
    };
    Ok(if (r as u32 - 1) * d % 2 == 1 { term.neg() } else { term.clone() })
}

/// `q^{Σ_j (r-j) d_j}`.
pub fn predicted_residual(table: &VariableTable, comp: &[u32]) -> Monomial {
    let r = comp.len();
    let e: u32 = comp.iter().enumerate().map(|(j, &d)| (r - 1 - j) as u32 * d).sum();
    Monomial::var(table.len(), 0, e as i32)
}

pub fn abelian_nonabelian_check(r: usize, n: usize, d: u32, mode: Mode) -> Result<IdentityReport> {
    let gr = SpaceDescriptor::grassmannian(r, n)?;
    let table = gr.table();
    let vars = gr.levels()[0].vars.clone();
    let comps = compositions(d, r);
    let rows = parallel::try_ordered_map(&comps, |c| -> Result<(Factored, Factored)> {
        Ok((abelian_side_term(&gr, n, c)?, grassmannian_display_term(table, &vars, n, c)?))
    })?;
    let mut report = IdentityReport::new("abelian-nonabelian", json!({"r": r, "n": n, "d": d}), mode);
    for (c, (lhs, rhs)) in comps.iter().zip(&rows) {
        let predicted = predicted_residual(table, c);
        let cmp = compare_factored(lhs, rhs)?;
        report.terms.push(outcome(comp_label(std::slice::from_ref(c)), table, cmp, |v, unit| match mode {
            Mode::Strict => v == Verdict::Pass,
            Mode::UnitTolerant => unit.is_some_and(|(k, m)| k.is_one() && *m == predicted),
        }));
    }
    let lhs = FactoredSum::from_terms(table, rows.iter().map(|(l, _)| l.clone()));
    let rhs = FactoredSum::from_terms(table, rows.iter().map(|(_, r)| r.clone()));
    report.aggregate = Some(aggregate(&lhs, &rhs, mode, false)?);
    Ok(report)
}

/// `1 / ∏_{ℓ=1}^{d} (1 - L_i^∨ q^ℓ)^n` expanded with plain polynomial
/// arithmetic.
fn projective_rx_expanded(space: &SpaceDescriptor, level: usize, n: usize, d: u32) -> Result<RationalExpression> {
    let table = space.table();
    let mut den = Polynomial::one(table);
    for l in 1..=d {
        let f = Polynomial::one(table).sub(&Polynomial::monomial(table, space.char_monomial(&[(level, 1, -1)], l as i32)));
        den = den.mul(&f);
    }
    RationalExpression::new(Polynomial::one(table), den.pow(n as u32))
}

pub fn multiplicativity_check(n: usize, r: usize, cap: &MultiDegree) -> Result<IdentityReport> {
    if cap.0.len() != r {
        return Err(Error::DimensionMismatch(format!("cap {cap} needs {r} entries")));
    }
    let space = SpaceDescriptor::projective_power(n, r)?;
    let degrees = MultiDegree::up_to(cap);
    let rows = parallel::try_ordered_map(&degrees, |d| -> Result<(RationalExpression, RationalExpression)> {
        let lhs = product_j_on(&space, d)?.to_rx();
        let mut rhs = RationalExpression::one(space.table());
        for (i, &di) in d.0.iter().enumerate() {
            rhs = rhs.mul(&projective_rx_expanded(&space, i + 1, n, di)?)?;
        }
        Ok((lhs, rhs))
    })?;
    let mut report =
        IdentityReport::new("multiplicativity", json!({"n": n, "r": r, "cap": cap.0}), Mode::Strict);
    for (d, (lhs, rhs)) in degrees.iter().zip(&rows) {
        let cmp = compare_rx(lhs, rhs)?;
        report.terms.push(outcome(d.to_string(), space.table(), cmp, by_mode(Mode::Strict)));
    }
    Ok(report)
}

fn per_term_report(
    identity: &str,
    params: serde_json::Value,
    mode: Mode,
    lhs: &JCoefficient,
    rhs: &JCoefficient,
) -> Result<IdentityReport> {
    let table = lhs.space.table();
    let mut report = IdentityReport::new(identity, params, mode);
    for t in &lhs.terms {
        let Some(other) = rhs.term(&t.composition) else {
            report.terms.push(TermOutcome {
                label: comp_label(&t.composition),
                verdict: Verdict::Mismatch,
                residual: None,
                passes: false,
            });
            continue;
        };
        let cmp = compare_factored(&t.value, other)?;
        report.terms.push(outcome(comp_label(&t.composition), table, cmp, by_mode(mode)));
    }
    report.aggregate = Some(aggregate(lhs.value(), rhs.value(), mode, false)?);
    Ok(report)
}

/// Structured route against the closed form, term by term and summed.
pub fn route_check(r: usize, n: usize, d: u32, mode: Mode) -> Result<IdentityReport> {
    let structured = grassmannian_j_structured(r, n, d)?;
    let display = grassmannian_j(r, n, d)?;
    per_term_report("route", json!({"r": r, "n": n, "d": d}), mode, &structured, &display)
}

/// One-level canonical flag formula against the closed Grassmannian form.
pub fn reduction_check(r: usize, n: usize, d: u32) -> Result<IdentityReport> {
    let flag = flag_j(&[r], n, &MultiDegree(vec![d]), FlagForm::Canonical)?;
    let gr = grassmannian_j(r, n, d)?;
    // Both live on single-level tables with the same names.
    let mut report = IdentityReport::new("reduction", json!({"r": r, "n": n, "d": d}), Mode::Strict);
    let gt = gr.space.table();
    let s = Substitution::new(flag.space.table(), gt);
    for t in &flag.terms {
        let moved = t.value.substitute(&s)?;
        let label = comp_label(&t.composition);
        match gr.term(&t.composition) {
            Some(other) => {
                let cmp = compare_factored(&moved, other)?;
                report.terms.push(outcome(label, gt, cmp, by_mode(Mode::Strict)));
            }
            None => report.terms.push(TermOutcome { label, verdict: Verdict::Mismatch, residual: None, passes: false }),
        }
    }
    let moved = flag.value().substitute(&s)?;
    report.aggregate = Some(aggregate(&moved, gr.value(), Mode::Strict, true)?);
    Ok(report)
}

/// Canonical against theorem-statement flag forms; the discrepancy per term
/// is reported as a unit.
pub fn flag_forms_check(dims: &[usize], n: usize, d: &MultiDegree, mode: Mode) -> Result<IdentityReport> {
    let canonical = flag_j(dims, n, d, FlagForm::Canonical)?;
    let ratio = flag_j(dims, n, d, FlagForm::TheoremRatio)?;
    per_term_report("flag-forms", json!({"dims": dims, "n": n, "d": d.0}), mode, &canonical, &ratio)
}

/// Variable blocks that a coefficient should be symmetric in.
fn symmetry_blocks(space: &SpaceDescriptor) -> Result<Vec<(usize, Vec<usize>)>> {
    match space.kind() {
        SpaceKind::Projective { .. } | SpaceKind::Grassmannian { .. } | SpaceKind::Product(_) => {
            Ok(space.levels().iter().enumerate().map(|(i, l)| (i + 1, vec![l.rank])).collect())
        }
        SpaceKind::Flag { dims, .. } => Ok(dims
            .iter()
            .enumerate()
            .map(|(i, &m)| {
                let prev = if i == 0 { 0 } else { dims[i - 1] };
                let mut blocks = Vec::new();
                if prev > 0 {
                    blocks.push(prev);
                }
                blocks.push(m - prev);
                (i + 1, blocks)
            })
            .collect()),
        _ => Err(Error::InvalidSpace(format!("no Weyl symmetry is asserted for {space}"))),
    }
}

/// Invariance under adjacent transpositions. On flags, level `i` is tested
/// in its variables `m_{i-1}+1..m_i`.
pub fn weyl_check(coeff: &JCoefficient) -> Result<IdentityReport> {
    let space = &coeff.space;
    let mut report = IdentityReport::new(
        "weyl",
        json!({"space": space.label(), "d": coeff.degree.0, "form": coeff.form.name()}),
        Mode::Strict,
    );
    let value = coeff.value();
    for (level, blocks) in symmetry_blocks(space)? {
        let group = space.level_group(level);
        let fixed = if blocks.len() > 1 { blocks[0] } else { 0 };
        for w in block_transpositions(&blocks) {
            let moved: Vec<usize> = (0..w.len()).filter(|&i| w.image(i) != i).collect();
            if moved.iter().any(|&i| i < fixed) {
                continue;
            }
            let label = format!("level {level} swap {},{}", moved[0] + 1, moved[1] + 1);
            let ok = value.permute(&w, &group)?.equals(value)?;
            let verdict = if ok { Verdict::Pass } else { Verdict::Mismatch };
            report.terms.push(TermOutcome { label, verdict, residual: None, passes: ok });
        }
    }
    Ok(report)
}

/// q-valuation `>= 0` for every coefficient, and `J_0 = 1`.
pub fn qregular_check(coeffs: &[JCoefficient]) -> Result<IdentityReport> {
    let rows = parallel::ordered_map(coeffs, |c| (c.q_valuation(), c.degree.is_zero() && !c.to_rx().is_one()));
    let mut report = IdentityReport::new("qregular", json!({"count": coeffs.len()}), Mode::Strict);
    for (c, (val, bad_zero)) in coeffs.iter().zip(rows) {
        let ok = val.is_none_or(|v| v >= 0) && !bad_zero;
        let label = format!("{} d={} {}", c.space.label(), c.degree, c.form.name());
        let residual = Some(match val {
            Some(v) => format!("q-valuation {v}"),
            None => "zero".into(),
        });
        let verdict = if ok { Verdict::Pass } else { Verdict::Mismatch };
        report.terms.push(TermOutcome { label, verdict, residual, passes: ok });
    }
    Ok(report)
}

/// `χ(Gr(n-1,n), J_d)` against `χ(ℙ^{n-1}, J_d)` through `q^order`; the two
/// spaces are isomorphic, so the descendant series must agree.
pub fn duality_check(n: usize, max_d: u32, form: JForm, order: u32) -> Result<IdentityReport> {
    let pr = SpaceDescriptor::grassmannian(1, n)?;
    let degrees: Vec<u32> = (0..=max_d).collect();
    let rows = parallel::try_ordered_map(&degrees, |&d| -> Result<(Result<Polynomial>, Polynomial)> {
        let j = match form {
            JForm::Display => grassmannian_j(n - 1, n, d)?,
            JForm::Structured => grassmannian_j_structured(n - 1, n, d)?,
            JForm::Canonical => flag_j(&[n - 1], n, &MultiDegree(vec![d]), FlagForm::Canonical)?,
            JForm::TheoremRatio => flag_j(&[n - 1], n, &MultiDegree(vec![d]), FlagForm::TheoremRatio)?,
            _ => return Err(Error::InvalidParameter(format!("form {form} does not apply to Grassmannians"))),
        };
        let lhs = chi_series(&j.space, j.value(), &FactoredSum::one(j.space.table()), order);
        let p = projective_j(n, d)?;
        let rhs = chi_series(&pr, p.value(), &FactoredSum::one(pr.table()), order)?;
        Ok((lhs, rhs))
    })?;
    let mut report = IdentityReport::new(
        "duality",
        json!({"n": n, "max_d": max_d, "form": form.name(), "order": order}),
        Mode::Strict,
    );
    for (d, (lhs, rhs)) in degrees.iter().zip(rows) {
        let label = format!("d={d}");
        let t = match lhs {
            Ok(l) if l == rhs => TermOutcome { label, verdict: Verdict::Pass, residual: None, passes: true },
            Ok(l) => TermOutcome {
                label,
                verdict: Verdict::Mismatch,
                residual: Some(format!("{} vs {}", l, rhs)),
                passes: false,
            },
            Err(e) => TermOutcome { label, verdict: Verdict::Mismatch, residual: Some(e.to_string()), passes: false },
        };
        report.terms.push(t);
    }
    Ok(report)
}

/// Compositions for a flag multidegree, exposed for harnesses.
pub fn flag_compositions(dims: &[usize], d: &MultiDegree) -> Vec<Vec<Vec<u32>>> {
    level_compositions(&d.0, dims)
}
