use jk_core::algebra::*;
use jk_core::jfunc::*;
use jk_core::kclass::*;
use proptest::prelude::*;

fn p(s: &str, t: &VariableTable) -> Polynomial {
    parse_polynomial(s, t).unwrap()
}

fn over(num: Polynomial, den: Polynomial) -> RationalExpression {
    RationalExpression::new(num, den).unwrap()
}

/// `∏_{ℓ=1}^{d} (1 - x q^ℓ)^n` for the variable named `x`, expanded.
fn q_product(t: &VariableTable, x: &str, n: u32, d: u32) -> Polynomial {
    (1..=d).fold(Polynomial::one(t), |acc, l| acc.mul(&p(&format!("1 - q^{l}*{x}^-1"), t))).pow(n)
}

fn same(a: &RationalExpression, b: &RationalExpression) -> bool {
    a.equals(b).unwrap()
}

#[test]
fn ratio_examples() {
    let t = VariableTable::new(["u"]).unwrap();
    let u = Monomial::from_exps([0, 1]);
    assert!(ratio_r(&t, 0, &u).unwrap().is_one());
    let two = ratio_r(&t, 2, &u).unwrap();
    assert!(same(&two, &p("1 - q*u", &t).mul(&p("1 - q^2*u", &t)).into()));
    let neg = ratio_r(&t, -2, &u).unwrap();
    let den = p("1 - u", &t).mul(&p("1 - q^-1*u", &t));
    assert!(same(&neg, &over(Polynomial::one(&t), den)));
}

proptest! {
    #[test]
    fn ratio_telescopes(a in -3i64..=3, e in -2i32..=2) {
        let t = VariableTable::new(["u", "v"]).unwrap();
        let u = Monomial::from_exps([0, 1, e]);
        let step = Polynomial::one(&t).sub(&Polynomial::monomial(&t, u.mul(&Monomial::var(3, 0, a as i32 + 1))));
        let lhs = ratio_r(&t, a, &u).unwrap().mul(&step.into()).unwrap();
        prop_assert!(same(&lhs, &ratio_r(&t, a + 1, &u).unwrap()));
    }
}

#[test]
fn projective_examples() {
    assert!(projective_j(3, 0).unwrap().to_rx().is_one());
    let c = projective_j(2, 1).unwrap();
    let want = parse_rx("(1)/(1 - 2*q*L[1,1]^-1 + q^2*L[1,1]^-2)", c.space.table()).unwrap();
    assert!(same(&c.to_rx(), &want));
    let c = projective_j(2, 2).unwrap();
    let t = c.space.table();
    assert!(same(&c.to_rx(), &over(Polynomial::one(t), q_product(t, "L[1,1]", 2, 2))));
}

#[test]
fn grassmannian_with_r_one_is_projective() {
    for n in 2..=5 {
        for d in 0..=4 {
            let c = grassmannian_j(1, n, d).unwrap();
            let t = c.space.table();
            let want = over(Polynomial::one(t), q_product(t, "L[1,1]", n as u32, d));
            assert!(same(&c.to_rx(), &want), "n={n} d={d}");
        }
    }
}

#[test]
fn grassmannian_degree_zero_is_one() {
    for n in 2..=5 {
        for r in 1..n {
            assert!(grassmannian_j(r, n, 0).unwrap().to_rx().is_one());
            assert!(grassmannian_j_structured(r, n, 0).unwrap().to_rx().is_one());
        }
    }
}

#[test]
fn grassmannian_two_three_by_hand() {
    let c = grassmannian_j(2, 3, 1).unwrap();
    let t = c.space.table();
    let pair = p("1 - L[1,2]^-1*L[1,1]", t);
    // (1,0): the pair factor is 1 - L2^∨ L1 q^{-1}.
    let a = over(p("1 - q^-1*L[1,2]^-1*L[1,1]", t), pair.mul(&q_product(t, "L[1,1]", 3, 1)));
    let b = over(p("1 - q*L[1,2]^-1*L[1,1]", t), pair.mul(&q_product(t, "L[1,2]", 3, 1)));
    let want = a.add(&b).unwrap().neg();
    assert!(same(&c.to_rx(), &want));
    assert_eq!(c.terms.len(), 2);
}

#[test]
fn quot_profile_examples() {
    let flat = JumpProfile::new(vec![0, 0, 0]).unwrap();
    assert!(quot_profile_tangent_euler(&flat, 4).unwrap().is_one());

    let single = JumpProfile::new(vec![2]).unwrap();
    let got = quot_profile_tangent_euler(&single, 3).unwrap();
    let t = got.table().clone();
    assert!(same(&got, &q_product(&t, "L[1,1]", 3, 2).into()));

    let two = JumpProfile::new(vec![0, 1]).unwrap();
    let got = quot_profile_tangent_euler(&two, 3).unwrap();
    let t = got.table().clone();
    let want = over(q_product(&t, "L[1,2]", 3, 1), p("1 - q*L[1,2]^-1*L[1,1]", &t));
    assert!(same(&got, &want));
}

#[test]
fn obstruction_examples() {
    assert!(flag_obstruction_euler(&[2], 4).unwrap().is_one());
    let got = flag_obstruction_euler(&[1, 2], 3).unwrap();
    let t = got.table().clone();
    let num = p("1 - L[1,1]^-1", &t).pow(3);
    let den = p("1 - L[1,1]^-1*L[2,1]", &t).mul(&p("1 - L[1,1]^-1*L[2,2]", &t));
    assert!(same(&got, &over(num, den)));
    let three = flag_obstruction_euler(&[1, 2, 3], 4).unwrap();
    let t = three.table().clone();
    let mut num = p("1 - L[1,1]^-1", &t).pow(4);
    num = num.mul(&p("1 - L[2,1]^-1", &t).pow(4)).mul(&p("1 - L[2,2]^-1", &t).pow(4));
    let mut den = Polynomial::one(&t);
    for k in 1..=2 {
        den = den.mul(&p(&format!("1 - L[1,1]^-1*L[2,{k}]"), &t));
    }
    for j in 1..=2 {
        for k in 1..=3 {
            den = den.mul(&p(&format!("1 - L[2,{j}]^-1*L[3,{k}]"), &t));
        }
    }
    assert!(same(&three, &over(num, den)));
}

#[test]
fn fixed_contribution_examples() {
    let got = flag_fixed_contribution(&[1, 2], 3, &[vec![0], vec![0, 0]]).unwrap();
    let t = got.table().clone();
    let den = p("1 - L[1,1]^-1*L[2,1]", &t).mul(&p("1 - L[1,1]^-1*L[2,2]", &t));
    assert!(same(&got, &over(Polynomial::one(&t), den)));

    let got = flag_fixed_contribution(&[2], 3, &[vec![1, 2]]).unwrap();
    let t = got.table().clone();
    let want = q_product(&t, "L[1,1]", 3, 1).mul(&q_product(&t, "L[1,2]", 3, 2));
    assert!(same(&got, &want.into()));
}

#[test]
fn flag_examples() {
    for dims in [vec![1, 2], vec![1, 3], vec![2, 3]] {
        let d = MultiDegree(vec![0; dims.len()]);
        for form in [FlagForm::Canonical, FlagForm::TheoremRatio] {
            assert!(flag_j(&dims, 4, &d, form).unwrap().to_rx().is_one());
        }
    }
    let c = flag_j(&[1, 2], 3, &MultiDegree(vec![1, 0]), FlagForm::Canonical).unwrap();
    let t = c.space.table();
    let den = p("1 - q*L[1,1]^-1*L[2,1]", t).mul(&p("1 - q*L[1,1]^-1*L[2,2]", t));
    assert!(same(&c.to_rx(), &over(Polynomial::one(t), den)));
    assert!(c.q_valuation().unwrap() >= 0);
}

#[test]
fn one_level_flag_is_the_grassmannian() {
    for n in 2..=4 {
        for r in 1..n {
            for d in 0..=2 {
                let f = flag_j(&[r], n, &MultiDegree(vec![d]), FlagForm::Canonical).unwrap();
                let g = grassmannian_j(r, n, d).unwrap();
                assert_eq!(f.space.table(), g.space.table());
                assert!(f.value().equals(g.value()).unwrap(), "r={r} n={n} d={d}");
            }
        }
    }
}

#[test]
fn product_examples() {
    let c = projective_power_j(2, &[0, 0]).unwrap();
    assert!(c.to_rx().is_one());
    let c = projective_power_j(2, &[1, 0]).unwrap();
    let t = c.space.table();
    assert!(same(&c.to_rx(), &over(Polynomial::one(t), q_product(t, "L[1,1]", 2, 1))));
    let c = projective_power_j(3, &[1, 1]).unwrap();
    let t = c.space.table();
    let den = q_product(t, "L[1,1]", 3, 1).mul(&q_product(t, "L[2,1]", 3, 1));
    assert!(same(&c.to_rx(), &over(Polynomial::one(t), den)));
}

#[test]
fn conjecture_sign_and_flag() {
    assert_eq!(isotropic_sign(2, 1), -1);
    assert_eq!(isotropic_sign(1, 5), 1);
    assert_eq!(isotropic_sign(3, 1), 1);
    let c = lagrangian_flag_j_conjecture(2, 1).unwrap();
    assert!(c.conjectural);
    assert_eq!(c.terms.len(), 2);
    assert!(bd_flag_j_conjecture(3, 1).unwrap().conjectural);
    assert!(lagrangian_flag_j_conjecture(1, 1).is_err());
}

#[test]
fn conjecture_at_degree_zero_reads_literally() {
    // Only the j=1, k=2 cross factor survives at d=0 for n=2.
    let c = lagrangian_flag_j_conjecture(2, 0).unwrap();
    let t = c.space.table();
    let want = over(Polynomial::one(t), p("1 - L[1,1]^-1*L[1,2]", t));
    assert!(same(&c.to_rx(), &want));
}

fn series(n: u32, d: u32, order: u32) -> Vec<Rational> {
    // Expands every geometric factor of ∏_{ℓ≤d}(1 - L^∨q^ℓ)^{-n} and sums
    // chi(O(k)) = C(k+n-1, n-1) over the resulting monomials.
    let mut out = vec![Rational::from_integer(0.into()); order as usize + 1];
    let mut stack = vec![(0u32, 0u32, 0u32)];
    // (factor index, q-degree, L-degree)
    let factors: Vec<u32> = (1..=d).flat_map(|l| std::iter::repeat_n(l, n as usize)).collect();
    while let Some((i, qd, ld)) = stack.pop() {
        if i as usize == factors.len() {
            let h = (0..n - 1).fold(1u64, |acc, k| acc * (ld as u64 + k as u64 + 1) / (k as u64 + 1));
            out[qd as usize] += Rational::from_integer(h.into());
            continue;
        }
        let l = factors[i as usize];
        let mut k = 0;
        while qd + k * l <= order {
            stack.push((i + 1, qd + k * l, ld + k));
            k += 1;
        }
    }
    out
}

#[test]
fn projective_descendants_match_counting() {
    for (n, d) in [(2usize, 1u32), (2, 2), (3, 1), (3, 2)] {
        let g = SpaceDescriptor::grassmannian(1, n).unwrap();
        let got = descendant_series(&g, &MultiDegree(vec![d]), &FactoredSum::one(g.table()), 5).unwrap();
        let want = series(n as u32, d, 5);
        for (a, w) in want.iter().enumerate() {
            let c = got.q_coefficient(a as i32).as_constant().unwrap_or_else(|| Rational::from_integer(0.into()));
            assert_eq!(&c, w, "n={n} d={d} a={a}");
        }
    }
}

#[test]
fn p1_descendant_closed_form() {
    // chi(P^1, 1/(1 - L^∨ q)^2) = (1 + q)/(1 - q)^3 = Σ (a+1)^2 q^a.
    let g = SpaceDescriptor::grassmannian(1, 2).unwrap();
    let got = descendant_series(&g, &MultiDegree(vec![1]), &FactoredSum::one(g.table()), 6).unwrap();
    for a in 0..=6i32 {
        let want = Rational::from_integer(((a + 1) * (a + 1)).into());
        assert_eq!(got.q_coefficient(a).as_constant().unwrap(), want);
    }
}

#[test]
fn structured_route_is_weyl_invariant() {
    for (r, n, d) in [(2, 3, 1), (2, 3, 2), (2, 4, 2), (3, 4, 1), (3, 4, 2)] {
        let c = grassmannian_j_structured(r, n, d).unwrap();
        let g = c.space.level_group(1);
        for w in Permutation::all(r) {
            assert!(c.value().permute(&w, &g).unwrap().equals(c.value()).unwrap(), "{r},{n},{d}");
        }
        assert!(c.q_valuation().unwrap() >= 0);
    }
}

#[test]
fn series_serializes() {
    let g = SpaceDescriptor::grassmannian(1, 3).unwrap();
    let s = j_series(&g, &MultiDegree(vec![2])).unwrap();
    let v = s.to_json();
    assert_eq!(v["coefficients"].as_array().unwrap().len(), 3);
    let back = rx_from_json(&v["coefficients"][2]["value"]).unwrap();
    assert!(same(&back, &projective_j(3, 2).unwrap().to_rx()));
}
