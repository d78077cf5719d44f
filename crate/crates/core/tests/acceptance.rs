//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails. A criterion passes only when its checks
//! hold and it finishes within its time budget.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use gacurve::coefficients::{CoeffConfig, DvrElement, ResidueField};
use gacurve::curve::{
    build_alphas, saturation_sample_check, special_fiber, tower_report, verify_conditions, Curve, KPoly, MemberBounds,
};
use gacurve::lfihd::{self, AdditiveSeries};
use gacurve::poly::{parse_coeff, parse_poly, Namespace};
use gacurve::selftest::{self, e1, e2, e3};
use gacurve::stability::{self, SearchSpace};

const SEED: u64 = 20_260_415;
const FP2: CoeffConfig = CoeffConfig::EquicharP { p: 2 };
const Q: CoeffConfig = CoeffConfig::Equichar0;

type Check = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn e<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|err| err.to_string())
}

fn series(c: CoeffConfig, terms: &[(&str, u64)]) -> AdditiveSeries {
    AdditiveSeries::from_exponents(c, terms.iter().map(|(s, k)| (parse_coeff(s, c).unwrap(), *k))).unwrap()
}

fn xs(c: CoeffConfig, s: &str) -> KPoly {
    parse_poly(s, &Namespace::x_series(), c).unwrap()
}

fn models() -> [CoeffConfig; 4] {
    [FP2, CoeffConfig::EquicharP { p: 3 }, Q, CoeffConfig::MixedChar { p: 2 }]
}

/// 4 models x 200 series, exponents up to p^3, valuations up to 3, g and h of
/// degree up to 8, all four axioms up to index 8.
fn c1_axioms() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut checks = 0;
    for c in models() {
        for _ in 0..200 {
            checks += selftest::axiom_case(&mut rng, c, 8, 8)?;
        }
    }
    Ok(format!("800 series, {checks} identities"))
}

fn c2_homomorphism() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let m = models();
    for i in 0..200 {
        selftest::homomorphism_case(&mut rng, m[i % 4])?;
    }
    Ok("200 triples".into())
}

fn c3_e1() -> Check {
    let curve = Curve::new(e1());
    let b = MemberBounds::default();
    let r = verify_conditions(curve.data());
    ensure!(r.all_hold(), "conditions fail");
    let f = special_fiber(&r);
    ensure!(f.dimension == Some(2) && f.reduced, "special fiber {f:?}");

    // (x + tT)^2 + (x + tT) = x^2 + x + t^2 T^2 + tT in characteristic 2
    let tt = series(FP2, &[("t", 1)]);
    let a2 = &curve.alphas()[1];
    let moved = e(lfihd::exp_apply(&tt, a2))?;
    let by_hand = &a2.embed(&Namespace::x_series(), &[0]) + &xs(FP2, "T + t*T^2");
    ensure!(moved == by_hand, "alpha2(x + tT) = {moved}");
    ensure!(e(stability::is_stable(&curve, &tt, &b))?.stable, "tT unstable");
    ensure!(e(stability::is_free_action(&curve, &tt, &b))?.free, "tT not free");
    ensure!(e(lfihd::delta(&tt, a2, 1))?.to_string() == "1", "delta1(x2) != 1");

    // (x + T)^2 + (x + T) = x^2 + x + T^2 + T, so the T coefficient is 1/t
    let r = e(stability::is_stable(&curve, &series(FP2, &[("1", 1)]), &b))?;
    let failure = r.failure.map(|(i, j, g)| (i, j, g.to_string()));
    ensure!(failure == Some((2, 1, "1/t".into())), "T: {failure:?}");

    let space = e(SearchSpace::new(FP2, 1, 1, 1, &["1"]))?;
    let mut found: Vec<(String, bool)> =
        e(stability::search_actions(&curve, &space, &b))?.into_iter().map(|h| (h.series.to_string(), h.free)).collect();
    found.sort();
    let want: Vec<(String, bool)> = ["t*T", "t*T^2", "t*T^2 + t*T"].iter().map(|s| (s.to_string(), true)).collect();
    ensure!(found == want, "search found {found:?}");
    Ok("conditions, fiber, tT, T, search".into())
}

fn c4_e2() -> Check {
    let curve = Curve::new(e2());
    let b = MemberBounds::default();
    let r = verify_conditions(curve.data());
    ensure!(r.all_hold(), "conditions fail");
    let w = r.jacobian_units[0].inverse.as_ref().map(|p| p.to_string());
    ensure!(w.as_deref() == Some("1/2*x1"), "Jacobian witness {w:?}");

    // alpha2(x + lT) = alpha2 + (2l/t) x T + (l^2/t) T^2: stable iff t | l
    for lam in ["1", "t", "t^2", "2*t"] {
        let l = parse_coeff(lam, Q).unwrap();
        let expected = l.valuation() >= gacurve::coefficients::Valuation::Finite(1);
        let got = e(stability::is_stable(&curve, &series(Q, &[(lam, 1)]), &b))?.stable;
        ensure!(got == expected, "lambda = {lam}: stable = {got}");
    }

    let r = e(stability::is_free_action(&curve, &series(Q, &[("t", 1)]), &b))?;
    ensure!(r.free, "tT not free");
    let k = ResidueField::of(Q);
    let half = parse_poly("T1/2", &Namespace::presentation(2), Q).unwrap().map_coeffs(k, |c| c.residue().unwrap());
    let w = r.entry_units.iter().find(|(i, j, _)| (*i, *j) == (2, 1)).and_then(|(_, _, w)| w.clone());
    ensure!(w.as_ref() == Some(&half), "mod-t witness {w:?}");
    Ok("conditions, lambda grid, freeness witness".into())
}

fn c5_e3() -> Check {
    let data = e3();
    let r = verify_conditions(&data);
    ensure!(r.all_hold() && r.zero_dimensional && r.radical == Some(true), "conditions fail");
    for (v, el) in r.eliminants.iter().enumerate() {
        ensure!(gacurve::poly::univariate::is_squarefree(el, v), "eliminant {el} not squarefree");
    }
    ensure!(r.jacobian_units[1].derivative.to_string() == "1", "df2/dx2 = {}", r.jacobian_units[1].derivative);

    let tower = tower_report(&data);
    let ideal = |i: usize| tower[i].ideal.clone().unwrap_or_default();
    ensure!(ideal(0) == ["t", "x1^2 + x1"], "I1 = {:?}", ideal(0));
    ensure!(ideal(1) == ["t", "x1^2 + x1", "x2^2 + x2 + x1"], "I2 = {:?}", ideal(1));

    let a = build_alphas(&data);
    let x = parse_poly("x", &Namespace::x(), FP2).unwrap();
    let a3 = (&(&(&a[1] * &a[1]) + &a[1]) + &x).scale(&DvrElement::t_pow(FP2, -1));
    ensure!(a[2] == a3, "alpha3 = {}", a[2]);
    // with alpha2 = (x^2 + x)/t, clearing t^3 gives x^4 + (1 + t) x^2 + t(1 + t) x
    let cleared = a[2].scale(&DvrElement::t_pow(FP2, 3));
    ensure!(
        cleared == parse_poly("x^4 + (1 + t)*x^2 + (t + t^2)*x", &Namespace::x(), FP2).unwrap(),
        "t^3 alpha3 = {cleared}"
    );
    Ok("conditions, tower, alpha3".into())
}

fn c6_membership() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 6);
    let curve = Curve::new(e1());
    for _ in 0..100 {
        selftest::round_trip_case(&mut rng, &curve)?;
    }
    for i in 0..25 {
        selftest::non_member_case(&mut rng, &curve, i)?;
    }
    Ok("100 round trips, 25 non-members".into())
}

fn c7_saturation() -> Check {
    let b = MemberBounds::default();
    let mut members = 0;
    for (name, data) in [("E1", e1()), ("E3", e3())] {
        let v = e(saturation_sample_check(&Curve::new(data), 50, SEED + 7, &b))?;
        ensure!(v.is_ok(), "{name}: {:?}", v.counterexample);
        members += v.expected_members;
    }
    Ok(format!("100 samples, {members} expected members"))
}

fn c8_minimal_valuation() -> Check {
    let b = MemberBounds::default();
    let mut stable = Vec::new();
    for (name, data) in [("E1", e1()), ("E2", e2()), ("E3", e3())] {
        let config = data.config();
        let r =
            e(stability::minimal_valuation_criterion_check(&Curve::new(data), &SearchSpace::default_for(config), &b))?;
        ensure!(r.applicable, "{name}: inapplicable");
        ensure!(r.counterexample.is_none(), "{name}: {:?}", r.counterexample.map(|s| s.to_string()));
        stable.push(format!("{name} {}", r.stable_series));
    }
    Ok(format!("stable series: {}", stable.join(", ")))
}

fn c9_linalg() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 9);
    let m = [FP2, CoeffConfig::EquicharP { p: 5 }, Q, CoeffConfig::MixedChar { p: 3 }];
    for i in 0..500 {
        selftest::consistent_case(&mut rng, m[i % 4])?;
    }
    for i in 0..100 {
        selftest::obstructed_case(&mut rng, m[i % 4])?;
    }
    Ok("500 consistent, 100 obstructed".into())
}

fn c10_determinism() -> Check {
    let a = selftest::run(selftest::DEFAULT_SEED);
    let b = selftest::run(selftest::DEFAULT_SEED);
    ensure!(a.passed(), "selftest failed: {:?}", a.suites.iter().find(|s| s.failure.is_some()));
    let (ja, jb) = (a.to_json().to_string(), b.to_json().to_string());
    ensure!(ja == jb, "selftest bodies differ");
    Ok(format!("{} bytes, identical", ja.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("axiom suite", 30, c1_axioms),
        ("homomorphism and coassociativity", 10, c2_homomorphism),
        ("curve E1", 5, c3_e1),
        ("curve E2", 5, c4_e2),
        ("curve E3", 10, c5_e3),
        ("membership round trip", 60, c6_membership),
        ("saturation sampling", 30, c7_saturation),
        ("minimal valuation", 30, c8_minimal_valuation),
        ("DVR linear algebra", 10, c9_linalg),
        ("selftest determinism", 60, c10_determinism),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let over = took > Duration::from_secs(budget);
        let (status, detail) = match (&outcome, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; over the {budget} s budget")),
            (Err(m), _) => ("FAIL", m.clone()),
        };
        failed += (status == "FAIL") as usize;
        println!("{status} {:>2} {name} ({:.2} s, budget {budget} s): {detail}", i + 1, took.as_secs_f64());
    }
    if failed == 0 {
        println!("acceptance: all 10 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria fail");
        ExitCode::FAILURE
    }
}
