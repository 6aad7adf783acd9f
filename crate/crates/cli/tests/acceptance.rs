//! One line per acceptance criterion. Every comparison is exact; the only
//! numeric tolerances are the wall-clock budgets.

use std::process::Command;
use std::time::{Duration, Instant};

use jk_core::algebra::{Factored, FactoredSum, Polynomial, Rational, RationalExpression};
use jk_core::jfunc::*;
use jk_core::kclass::{euler_characteristic, weyl_pushforward, MultiDegree, SpaceDescriptor};
use jk_core::lab::{self, Mode};
use num_bigint::BigInt;
use num_integer::binomial;

const ROUTE_BUDGET: Duration = Duration::from_secs(60);
const REDUCTION_BUDGET: Duration = Duration::from_secs(60);
const CORRESPONDENCE_BUDGET: Duration = Duration::from_secs(300);

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: &[String], checked: usize, elapsed: Option<(Duration, Duration)>) -> Outcome {
    let mut pass = failures.is_empty();
    let mut detail = format!("{checked} checked, {} failed", failures.len());
    if let Some((took, budget)) = elapsed {
        pass &= took <= budget;
        detail.push_str(&format!(", {:.2}s of {}s", took.as_secs_f64(), budget.as_secs()));
    }
    if !failures.is_empty() {
        let shown: Vec<_> = failures.iter().take(6).cloned().collect();
        detail.push_str(&format!("; {}", shown.join("; ")));
        if failures.len() > shown.len() {
            detail.push_str("; ...");
        }
    }
    Outcome { pass, detail }
}

const ROUTE_CASES: [(usize, usize, u32); 5] = [(2, 3, 1), (2, 3, 2), (2, 4, 1), (2, 4, 2), (3, 4, 1)];

fn reduction_cases() -> Vec<(usize, usize, u32)> {
    let mut out = Vec::new();
    for n in 2..=4 {
        for r in 1..n.min(4) {
            for d in 0..=2 {
                out.push((r, n, d));
            }
        }
    }
    out
}

fn correspondence_cases() -> Vec<(usize, usize, u32)> {
    let mut out = Vec::new();
    for r in [2, 3] {
        for n in r + 1..=4 {
            for d in 0..=3 {
                out.push((r, n, d));
            }
        }
    }
    out
}

fn criterion_route() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    for (r, n, d) in ROUTE_CASES {
        let rep = lab::route_check(r, n, d, Mode::Strict).unwrap();
        if !rep.pass() {
            let units: Vec<_> = rep
                .terms
                .iter()
                .filter(|t| !t.passes)
                .map(|t| format!("{} {}", t.label, t.residual.as_deref().unwrap_or("?")))
                .collect();
            failures.push(format!("({r},{n},{d}) {}", units.join(", ")));
        }
    }
    outcome(&failures, ROUTE_CASES.len(), Some((start.elapsed(), ROUTE_BUDGET)))
}

fn criterion_reduction() -> Outcome {
    let start = Instant::now();
    let cases = reduction_cases();
    let failures: Vec<_> = cases
        .iter()
        .filter(|(r, n, d)| !lab::reduction_check(*r, *n, *d).unwrap().pass())
        .map(|c| format!("{c:?}"))
        .collect();
    outcome(&failures, cases.len(), Some((start.elapsed(), REDUCTION_BUDGET)))
}

/// `1 / ∏_{ℓ=1}^{d} (1 - L^∨ q^ℓ)^n` by plain polynomial expansion.
fn projective_expanded(space: &SpaceDescriptor, n: usize, d: u32) -> RationalExpression {
    let t = space.table();
    let mut den = Polynomial::one(t);
    for l in 1..=d {
        let m = space.char_monomial(&[(1, 1, -1)], l as i32);
        den = den.mul(&Polynomial::one(t).sub(&Polynomial::monomial(t, m)));
    }
    RationalExpression::new(Polynomial::one(t), den.pow(n as u32)).unwrap()
}

fn criterion_rank_one() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for n in 2..=5 {
        for d in 0..=4 {
            checked += 1;
            let c = grassmannian_j(1, n, d).unwrap();
            if !c.to_rx().equals(&projective_expanded(&c.space, n, d)).unwrap() {
                failures.push(format!("n={n} d={d}"));
            }
        }
    }
    outcome(&failures, checked, None)
}

fn criterion_correspondence() -> Outcome {
    let start = Instant::now();
    let cases = correspondence_cases();
    let mut failures = Vec::new();
    let mut strict_passes = 0;
    for &(r, n, d) in &cases {
        let rep = lab::abelian_nonabelian_check(r, n, d, Mode::UnitTolerant).unwrap();
        if !rep.pass() {
            failures.push(format!("({r},{n},{d}) unit-tolerant"));
        }
        // Every residual must be exactly q^{Σ_j (r-j) d_j}.
        for (c, t) in compositions(d, r).iter().zip(&rep.terms) {
            let e: u32 = c.iter().enumerate().map(|(j, &dj)| (r - 1 - j) as u32 * dj).sum();
            let want = match e {
                0 => "1".to_string(),
                1 => "q".to_string(),
                _ => format!("q^{e}"),
            };
            if t.residual.as_deref() != Some(want.as_str()) {
                failures.push(format!("({r},{n},{d}) {} residual {:?}, predicted {want}", t.label, t.residual));
            }
        }
        if lab::abelian_nonabelian_check(r, n, d, Mode::Strict).unwrap().pass() {
            strict_passes += 1;
        }
    }
    let mut o = outcome(&failures, cases.len(), Some((start.elapsed(), CORRESPONDENCE_BUDGET)));
    o.detail.push_str(&format!(", strict mode recorded {strict_passes}/{} passing", cases.len()));
    o
}

fn criterion_multiplicativity() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for n in 2..=3 {
        for r in 1..=3 {
            checked += 1;
            let rep = lab::multiplicativity_check(n, r, &MultiDegree(vec![2; r])).unwrap();
            if !rep.pass() {
                failures.push(format!("n={n} r={r}"));
            }
        }
    }
    outcome(&failures, checked, None)
}

fn int(k: u64) -> Rational {
    Rational::from_integer(BigInt::from(k))
}

fn dual_power(space: &SpaceDescriptor, k: i32) -> FactoredSum {
    let entries: Vec<_> = (1..=space.levels()[0].rank).map(|j| (1, j, -k)).collect();
    Factored::monomial(space.table(), int(1), space.char_monomial(&entries, 0)).into()
}

fn chi(f: &FactoredSum, space: &SpaceDescriptor) -> Option<Rational> {
    euler_characteristic(f, space).ok()?.as_constant()
}

fn criterion_localization() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for n in 2..=5 {
        for r in 1..n.min(4) {
            checked += 1;
            let g = SpaceDescriptor::grassmannian(r, n).unwrap();
            if chi(&FactoredSum::one(g.table()), &g) != Some(int(1)) {
                failures.push(format!("chi(O) on Gr({r},{n})"));
            }
        }
        let p = SpaceDescriptor::grassmannian(1, n).unwrap();
        for k in 0..=4u64 {
            checked += 1;
            let want = int(binomial(n as u64 - 1 + k, k));
            if chi(&dual_power(&p, k as i32), &p) != Some(want) {
                failures.push(format!("chi(L^-{k}) on P^{}", n - 1));
            }
        }
    }
    checked += 1;
    let g = SpaceDescriptor::grassmannian(2, 4).unwrap();
    if chi(&dual_power(&g, 1), &g) != Some(int(6)) {
        failures.push("chi(det S^dual) on Gr(2,4)".into());
    }
    for n in 3..=5 {
        checked += 2;
        let g = SpaceDescriptor::grassmannian(2, n).unwrap();
        let one = FactoredSum::one(g.table());
        if !weyl_pushforward(&one, &[1, 2], &g).unwrap().to_rx().is_one() {
            failures.push(format!("pushforward of 1 into Gr(2,{n})"));
        }
        let l1 = Factored::monomial(g.table(), int(1), g.char_monomial(&[(1, 1, -1)], 0));
        let want = Factored::monomial(g.table(), int(1), g.char_monomial(&[(1, 2, -1)], 0));
        let want = FactoredSum::from_terms(g.table(), [l1.clone(), want]);
        if !weyl_pushforward(&l1.into(), &[1, 2], &g).unwrap().equals(&want).unwrap() {
            failures.push(format!("pushforward of L1^dual into Gr(2,{n})"));
        }
    }
    outcome(&failures, checked, None)
}

fn regularity_corpus() -> Vec<JCoefficient> {
    let mut out = Vec::new();
    for (r, n, d) in ROUTE_CASES {
        out.push(grassmannian_j_structured(r, n, d).unwrap());
        out.push(grassmannian_j(r, n, d).unwrap());
    }
    for (r, n, d) in reduction_cases() {
        out.push(flag_j(&[r], n, &MultiDegree(vec![d]), FlagForm::Canonical).unwrap());
    }
    for n in 2..=5 {
        for d in 0..=4 {
            out.push(grassmannian_j(1, n, d).unwrap());
        }
    }
    for (r, n, d) in correspondence_cases() {
        out.push(grassmannian_j(r, n, d).unwrap());
    }
    for n in 2..=3 {
        for r in 1..=3 {
            for d in MultiDegree::up_to(&MultiDegree(vec![2; r])) {
                out.push(projective_power_j(n, &d.0).unwrap());
            }
        }
    }
    for n in 2..=3 {
        for d in 0..=2 {
            out.push(lagrangian_flag_j_conjecture(n, d).unwrap());
            out.push(bd_flag_j_conjecture(n, d).unwrap());
        }
    }
    out
}

fn weyl_corpus() -> Vec<JCoefficient> {
    let mut out = Vec::new();
    for n in 2..=5 {
        for r in 1..n.min(4) {
            for d in 0..=3 {
                out.push(grassmannian_j(r, n, d).unwrap());
            }
        }
    }
    for dims in [vec![1, 2], vec![1, 3], vec![2, 3]] {
        for d in MultiDegree::up_to(&MultiDegree(vec![1, 1])) {
            out.push(flag_j(&dims, 4, &d, FlagForm::Canonical).unwrap());
        }
    }
    out
}

fn criterion_regularity() -> Outcome {
    let corpus = regularity_corpus();
    let mut failures = Vec::new();
    let mut by_kind = std::collections::BTreeMap::<String, usize>::new();
    for c in &corpus {
        let val = c.q_valuation();
        if val.is_some_and(|v| v < 0) {
            *by_kind.entry(format!("pole:{}", c.form.name())).or_default() += 1;
            failures.push(format!("{} d={} {} q-valuation {}", c.space.label(), c.degree, c.form.name(), val.unwrap()));
        }
        if c.degree.is_zero() && !c.to_rx().is_one() {
            *by_kind.entry(format!("J0:{}", c.form.name())).or_default() += 1;
            failures.push(format!("{} {} J0 is not 1", c.space.label(), c.form.name()));
        }
    }
    let weyl = weyl_corpus();
    for c in &weyl {
        if !lab::weyl_check(c).unwrap().pass() {
            *by_kind.entry(format!("weyl:{}", c.form.name())).or_default() += 1;
            failures.push(format!("{} d={} {} not Weyl invariant", c.space.label(), c.degree, c.form.name()));
        }
    }
    let mut o = outcome(&failures, corpus.len() + weyl.len(), None);
    if !by_kind.is_empty() {
        let counts: Vec<_> = by_kind.iter().map(|(k, v)| format!("{k}={v}")).collect();
        o.detail = format!("{} [{}]", o.detail, counts.join(" "));
    }
    o
}

const CLI_SUITE: &[&[&str]] = &[
    &["projective", "--n", "3", "--d", "0"],
    &["projective", "--n", "3", "--max-d", "2", "--format", "json"],
    &["grassmannian", "--r", "2", "--n", "4", "--d", "1", "--format", "json"],
    &["grassmannian", "--r", "2", "--n", "3", "--d", "2", "--form", "structured"],
    &["flag", "--dims", "1,2", "--n", "3", "--d", "1,0", "--form", "canonical"],
    &["flag", "--dims", "1,2", "--n", "3", "--d", "1,1", "--form", "theorem_ratio", "--format", "json"],
    &["product", "--space", "pr:2xpr:3", "--d", "1,1"],
    &["conjecture-c", "--n", "2", "--d", "1"],
    &["conjecture-bd", "--n", "3", "--d", "1", "--format", "json"],
    &["chi", "--space", "gr:1,2", "--d", "1", "--order", "2"],
    &["chi", "--space", "gr:2,4", "--d", "0", "--gamma", "detSdual", "--order", "0"],
    &["verify", "abelian-nonabelian", "--r", "2", "--n", "3", "--max-d", "2", "--mode", "unit-tolerant"],
    &["verify", "--format", "json", "abelian-nonabelian", "--r", "3", "--n", "4", "--d", "2"],
    &["verify", "reduction", "--r", "2", "--n", "3", "--max-d", "2"],
    &["verify", "route", "--r", "2", "--n", "3", "--d", "1"],
    &["verify", "multiplicativity", "--n", "2", "--r", "2", "--cap", "2,2"],
    &["verify", "weyl", "--space", "gr:2,4", "--max-d", "1"],
    &["verify", "qregular", "--space", "lfl:2", "--max-d", "2"],
    &["verify", "flag-forms", "--dims", "1,2", "--n", "3", "--d", "1,1"],
    &["verify", "duality", "--n", "3", "--max-d", "1", "--order", "3"],
];

fn criterion_determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_jk");
    let mut failures = Vec::new();
    for args in CLI_SUITE {
        let run = |threads: &str| Command::new(bin).args(*args).env("JK_THREADS", threads).output().unwrap();
        let a = run("1");
        let b = run("4");
        let c = run("4");
        let code = a.status.code();
        if a.stdout.is_empty() || code.is_none_or(|c| c > 1) {
            failures.push(format!("`{}` exited {code:?}", args.join(" ")));
        } else if a.stdout != b.stdout || b.stdout != c.stdout || a.status != b.status {
            failures.push(format!("`{}` differs between runs", args.join(" ")));
        }
    }
    outcome(&failures, CLI_SUITE.len(), None)
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("structured route equals closed form", criterion_route),
        ("one-level flag reduces to Grassmannian", criterion_reduction),
        ("rank one is projective space", criterion_rank_one),
        ("abelian/nonabelian correspondence, unit tolerant", criterion_correspondence),
        ("multiplicativity for products of projective spaces", criterion_multiplicativity),
        ("localization oracles", criterion_localization),
        ("q-regularity, normalization, Weyl invariance", criterion_regularity),
        ("CLI determinism", criterion_determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!("criterion {}: {} [{name}] {}", i + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
