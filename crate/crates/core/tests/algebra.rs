use jk_core::algebra::*;
use jk_core::error::Error;
use num_traits::Zero;
use proptest::prelude::*;

fn table() -> VariableTable {
    VariableTable::new(["u", "v"]).unwrap()
}

fn rx(s: &str) -> RationalExpression {
    parse_rx(s, &table()).unwrap()
}

fn poly(s: &str) -> Polynomial {
    parse_polynomial(s, &table()).unwrap()
}

#[test]
fn partial_fraction_pair() {
    let a = rx("(1)/(1 - u)");
    let b = rx("(1)/(1 - u^-1)");
    assert!(a.add(&b).unwrap().is_one());
}

#[test]
fn trivial_arithmetic() {
    let u = rx("u");
    assert!(u.mul(&RationalExpression::one(&table())).unwrap().equals(&u).unwrap());
    let f = rx("1 - u");
    assert!(f.div(&f).unwrap().is_one());
    assert_eq!(f.div(&RationalExpression::zero(&table())).unwrap_err(), Error::DivisionByZero);
}

#[test]
fn equality_examples() {
    assert!(rx("(u^2 - v^2)/(u - v)").equals(&rx("u + v")).unwrap());
    assert!(!rx("1 - u").equals(&rx("1 - v")).unwrap());
}

#[test]
fn table_mismatch_is_reported() {
    let other = VariableTable::new(["w"]).unwrap();
    let a = rx("u");
    let b = parse_rx("w", &other).unwrap();
    assert_eq!(a.add(&b).unwrap_err(), Error::TableMismatch);
}

#[test]
fn substitution_examples() {
    let src = VariableTable::new(["L"]).unwrap();
    let dst = VariableTable::q_only();
    let s = Substitution::new(&src, &dst).bind_one("L").unwrap();
    let a = parse_rx("1 - q*L", &src).unwrap();
    assert!(a.substitute(&s).unwrap().equals(&parse_rx("1 - q", &dst).unwrap()).unwrap());

    let pole = parse_rx("(1)/(1 - L^-1)", &src).unwrap();
    assert!(matches!(pole.substitute(&s), Err(Error::SubstitutionPole { .. })));

    let src = VariableTable::new(["L1", "L2"]).unwrap();
    let dst = VariableTable::new(["x1", "x2"]).unwrap();
    let s = Substitution::new(&src, &dst)
        .bind_vars("L1", &[("x1", 1)])
        .unwrap()
        .bind_vars("L2", &[("x2", 1)])
        .unwrap();
    let a = parse_rx("1 - L1^-1*L2", &src).unwrap();
    let want = parse_rx("1 - x1^-1*x2", &dst).unwrap();
    assert!(a.substitute(&s).unwrap().equals(&want).unwrap());
}

#[test]
fn permutation_examples() {
    let g = VarGroup::new(vec![1, 2]);
    let w = Permutation::transposition(2, 0, 1).unwrap();
    let a = rx("1 - u^-1*v");
    assert!(a.permute(&w, &g).unwrap().equals(&rx("1 - u*v^-1")).unwrap());
    let sym = rx("(u + v)/(1 - u*v)");
    assert!(sym.permute(&w, &g).unwrap().equals(&sym).unwrap());
}

#[test]
fn q_series_examples() {
    let got = rx_q_series(&rx("(1)/(1 - q*u^-1)"), 2).unwrap();
    assert_eq!(got, poly("1 + q*u^-1 + q^2*u^-2"));
    let got = rx_q_series(&rx("(1)/(1 - 2*q*u^-1 + q^2*u^-2)"), 2).unwrap();
    // Independent check by multiplying the geometric series with itself.
    let g = poly("1 + q*u^-1 + q^2*u^-2");
    assert_eq!(got, g.mul(&g).truncate_q(2));
    assert_eq!(rx_q_series(&rx("(1 + u)/(1 - q)"), 0).unwrap(), poly("1 + u"));
    assert!(matches!(rx_q_series(&rx("(1)/(q)"), 1), Err(Error::QPole { valuation: -1 })));
}

#[test]
fn lambda_examples() {
    let t = VariableTable::new(["L"]).unwrap();
    let l = Monomial::from_exps([0, 1]);
    let lq = Monomial::from_exps([1, 1]);
    let lq2 = Monomial::from_exps([2, 1]);
    assert!(jk_core::kclass::lambda_minus1_dual(&t, &[]).is_one());
    assert!(jk_core::kclass::lambda_minus1_dual(&t, &[l]).equals(&parse_rx("1 - L^-1", &t).unwrap()).unwrap());
    let got = jk_core::kclass::lambda_minus1_dual(&t, &[lq, lq2]);
    let want = parse_rx("1 - q^-1*L^-1", &t).unwrap().mul(&parse_rx("1 - q^-2*L^-1", &t).unwrap()).unwrap();
    assert!(got.equals(&want).unwrap());
}

#[test]
fn rational_normalization() {
    let r = parse_rational("6/-4").unwrap();
    assert_eq!(format_rational(&r), "-3/2");
    assert!(parse_rational("0/5").unwrap().is_zero());
}

fn arb_poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(((-2i32..=2, -2i32..=2, -2i32..=2), -4i64..=4), 0..4).prop_map(|terms| {
        let t = table();
        Polynomial::from_terms(
            &t,
            terms
                .into_iter()
                .map(|((a, b, c), k)| (Monomial::from_exps([a, b, c]), Rational::from_integer(k.into()))),
        )
    })
}

fn arb_rx() -> impl Strategy<Value = RationalExpression> {
    (arb_poly(), arb_poly())
        .prop_filter_map("nonzero den", |(n, d)| (!d.is_zero()).then(|| RationalExpression::new(n, d).unwrap()))
}

/// Denominators of the form `1 + q * p`, so there is no pole at `q = 0`.
fn arb_regular_rx() -> impl Strategy<Value = RationalExpression> {
    (arb_poly(), arb_poly()).prop_map(|(n, p)| {
        let t = table();
        let q = Monomial::var(t.len(), 0, 1);
        let p = p.map_monomials(&t, |m| {
            let mut m = m.clone();
            m.set_exp(0, m.exp(0).abs());
            m.mul(&q)
        });
        let n = n.map_monomials(&t, |m| {
            let mut m = m.clone();
            m.set_exp(0, m.exp(0).abs());
            m
        });
        RationalExpression::new(n, Polynomial::one(&t).add(&p)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in arb_rx(), b in arb_rx(), c in arb_rx()) {
        let ab_c = a.add(&b).unwrap().add(&c).unwrap();
        let a_bc = a.add(&b.add(&c).unwrap()).unwrap();
        prop_assert!(ab_c.equals(&a_bc).unwrap());
        prop_assert!(a.mul(&b).unwrap().equals(&b.mul(&a).unwrap()).unwrap());
        let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
        let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert!(lhs.equals(&rhs).unwrap());
        let abc = a.mul(&b).unwrap().mul(&c).unwrap();
        prop_assert!(abc.equals(&a.mul(&b.mul(&c).unwrap()).unwrap()).unwrap());
    }

    #[test]
    fn division_cancels(a in arb_rx(), b in arb_rx()) {
        prop_assume!(!b.is_zero());
        prop_assert!(a.mul(&b).unwrap().div(&b).unwrap().equals(&a).unwrap());
    }

    #[test]
    fn equality_is_an_equivalence(a in arb_rx(), b in arb_rx(), k in 1i64..5) {
        prop_assert!(a.equals(&a).unwrap());
        prop_assert_eq!(a.equals(&b).unwrap(), b.equals(&a).unwrap());
        // Same class, different representatives.
        let m = Monomial::from_exps([1, -1, 2]);
        let f = Polynomial::constant(&table(), Rational::from_integer(k.into())).mul_monomial(&m);
        let a2 = RationalExpression::new(a.num().mul(&f), a.den().mul(&f)).unwrap();
        prop_assert!(a.equals(&a2).unwrap());
        prop_assert!(a2.equals(&a).unwrap());
    }

    #[test]
    fn denominator_is_normalized(a in arb_rx()) {
        let (_, lead) = a.den().first().unwrap();
        prop_assert!(*lead > Rational::zero());
        prop_assert!(a.den().min_monomial().unwrap().is_one());
    }

    #[test]
    fn q_series_truncations_agree(a in arb_regular_rx(), n in 0u32..4, m in 0u32..4) {
        let k = n.min(m) as i32;
        let sn = rx_q_series(&a, n).unwrap().truncate_q(k);
        let sm = rx_q_series(&a, m).unwrap().truncate_q(k);
        prop_assert_eq!(sn, sm);
    }

    #[test]
    fn text_round_trip(p in arb_poly(), a in arb_rx()) {
        let t = table();
        prop_assert_eq!(parse_polynomial(&p.to_string(), &t).unwrap(), p.clone());
        let back = parse_rx(&a.to_string(), &t).unwrap();
        prop_assert_eq!(back.num(), a.num());
        prop_assert_eq!(back.den(), a.den());
        prop_assert_eq!(poly_from_json(&poly_to_json(&p)).unwrap(), p);
        let back = rx_from_json(&rx_to_json(&a)).unwrap();
        prop_assert_eq!(back.num(), a.num());
        prop_assert_eq!(back.den(), a.den());
    }

    #[test]
    fn substitution_commutes_with_arithmetic(a in arb_rx(), b in arb_rx(), e in -2i32..=2) {
        let src = table();
        let dst = VariableTable::new(["x"]).unwrap();
        let s = Substitution::new(&src, &dst)
            .bind_vars("u", &[("x", 1)]).unwrap()
            .bind_vars("v", &[("x", e)]).unwrap();
        let (Ok(sa), Ok(sb)) = (a.substitute(&s), b.substitute(&s)) else { return Ok(()); };
        if let Ok(prod) = a.mul(&b).unwrap().substitute(&s) {
            prop_assert!(prod.equals(&sa.mul(&sb).unwrap()).unwrap());
        }
        if let Ok(sum) = a.add(&b).unwrap().substitute(&s) {
            prop_assert!(sum.equals(&sa.add(&sb).unwrap()).unwrap());
        }
    }

    #[test]
    fn factored_sum_matches_expanded(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assume!(!b.is_zero() && !c.is_zero());
        let t = table();
        let fa = Factored::from_poly(&a).div(&Factored::from_poly(&b)).unwrap();
        let fc = Factored::from_poly(&c).recip().unwrap();
        let sum = FactoredSum::from_terms(&t, [fa.clone(), fc.clone()]);
        let want = fa.to_rx().add(&fc.to_rx()).unwrap();
        prop_assert!(sum.to_rx().equals(&want).unwrap());
    }
}
