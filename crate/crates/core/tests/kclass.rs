use jk_core::algebra::{parse_rx, Factored, FactoredSum, Rational, RationalExpression};
use jk_core::kclass::*;
use num_traits::One;

fn dual_power(space: &SpaceDescriptor, k: i32) -> FactoredSum {
    let entries: Vec<_> = (1..=space.levels()[0].rank).map(|j| (1, j, -k)).collect();
    let m = space.char_monomial(&entries, 0);
    Factored::monomial(space.table(), Rational::one(), m).into()
}

fn chi_const(f: &FactoredSum, space: &SpaceDescriptor) -> Rational {
    euler_characteristic(f, space).unwrap().as_constant().expect("constant")
}

fn product(factors: &[&str], t: &jk_core::algebra::VariableTable) -> RationalExpression {
    factors.iter().fold(RationalExpression::one(t), |acc, f| acc.mul(&parse_rx(f, t).unwrap()).unwrap())
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn chi_of_structure_sheaf_is_one() {
    for n in 2..=5 {
        for r in 1..n.min(4) {
            let g = SpaceDescriptor::grassmannian(r, n).unwrap();
            let chi = equivariant_euler_characteristic(&FactoredSum::one(g.table()), &g).unwrap();
            assert!(is_x_free(&chi), "Gr({r},{n})");
            assert_eq!(chi_const(&FactoredSum::one(g.table()), &g), Rational::one(), "Gr({r},{n})");
        }
    }
}

#[test]
fn borel_weil_on_projective_space() {
    for n in 2..=5usize {
        let g = SpaceDescriptor::grassmannian(1, n).unwrap();
        for k in 0..=4 {
            let want = binom((n - 1 + k) as u64, k as u64);
            assert_eq!(chi_const(&dual_power(&g, k as i32), &g), Rational::from_integer(want.into()));
        }
    }
}

#[test]
fn det_dual_on_gr24() {
    let g = SpaceDescriptor::grassmannian(2, 4).unwrap();
    assert_eq!(chi_const(&dual_power(&g, 1), &g), Rational::from_integer(6.into()));
}

#[test]
fn equivariant_chi_of_line_is_sum_of_characters() {
    let g = SpaceDescriptor::grassmannian(1, 3).unwrap();
    let chi = equivariant_euler_characteristic(&dual_power(&g, 1), &g).unwrap();
    let want = parse_rx("x[1] + x[2] + x[3]", chi.table()).unwrap();
    assert!(chi.to_rx().equals(&want).unwrap());
}

#[test]
fn pushforward_oracles() {
    for n in [3, 4] {
        let g = SpaceDescriptor::grassmannian(2, n).unwrap();
        let one = FactoredSum::one(g.table());
        assert!(weyl_pushforward(&one, &[1, 2], &g).unwrap().to_rx().is_one());
        let l1 = Factored::monomial(g.table(), Rational::one(), g.char_monomial(&[(1, 1, -1)], 0));
        let out = weyl_pushforward(&l1.into(), &[1, 2], &g).unwrap();
        let want = parse_rx("L[1,1]^-1 + L[1,2]^-1", g.table()).unwrap();
        assert!(out.to_rx().equals(&want).unwrap());
    }
    for r in 1..=4usize {
        let g = SpaceDescriptor::grassmannian(r, r + 1).unwrap();
        let one = FactoredSum::one(g.table());
        let mut chains = vec![vec![r]];
        if r >= 2 {
            chains.push((1..=r).collect());
            chains.push(vec![1, r]);
        }
        for dims in chains {
            assert!(weyl_pushforward(&one, &dims, &g).unwrap().to_rx().is_one(), "{dims:?}");
        }
    }
}

#[test]
fn relative_tangent_orientation() {
    let g = SpaceDescriptor::grassmannian(3, 5).unwrap();
    let got = relative_tangent_euler(&[1, 2, 3], &g).unwrap();
    let want = product(
        &["1 - L[1,1]*L[1,2]^-1", "1 - L[1,1]*L[1,3]^-1", "1 - L[1,2]*L[1,3]^-1"],
        g.table(),
    );
    assert!(got.equals(&want).unwrap());
    assert!(relative_tangent_euler(&[3], &g).unwrap().is_one());
}

#[test]
fn lambda_of_characters() {
    let g = SpaceDescriptor::projective(3).unwrap();
    let t = g.table();
    assert!(lambda_minus1_dual(t, &[]).is_one());
    let chars = [g.char_monomial(&[(1, 1, 1)], 1), g.char_monomial(&[(1, 1, 1)], 2)];
    let want = product(&["1 - q^-1*L[1,1]^-1", "1 - q^-2*L[1,1]^-1"], t);
    assert!(lambda_minus1_dual(t, &chars).equals(&want).unwrap());
}

#[test]
fn fixed_point_restriction_examples() {
    let g = SpaceDescriptor::grassmannian(2, 4).unwrap();
    let f = parse_rx("L[1,1]^-1 + L[1,2]^-1", g.table()).unwrap();
    let got = fixed_point_restrict(&f, &g, &[1, 3]).unwrap();
    assert!(got.equals(&parse_rx("x[1] + x[3]", got.table()).unwrap()).unwrap());
    let one = RationalExpression::one(g.table());
    assert!(fixed_point_restrict(&one, &g, &[2, 4]).unwrap().is_one());
}

#[test]
fn non_invariant_input_is_rejected() {
    let g = SpaceDescriptor::grassmannian(2, 3).unwrap();
    let l1 = Factored::monomial(g.table(), Rational::one(), g.char_monomial(&[(1, 1, -1)], 0));
    assert!(euler_characteristic(&l1.into(), &g).is_err());
}
