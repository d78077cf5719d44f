//! Regression suites for the three worked curves plus seeded random suites.
//! The report depends only on the seed and the case counts.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::coefficients::{CoeffConfig, ResidueField};
use crate::curve::{
    build_alphas, lift_from_residue, saturation_sample_check, special_fiber, tower_report, verify_conditions, Curve,
    CurveData, KPoly, MemberBounds, MemberOutcome,
};
use crate::lfihd::{self, AdditiveSeries};
use crate::linalg::{solve_over_dvr, SolveOutcome};
use crate::poly::{parse_coeff, parse_poly, Monomial, MultiPoly, Namespace};
use crate::sample;
use crate::stability::{self, SearchSpace};

pub const DEFAULT_SEED: u64 = 0x0067_6163_7572_7665;

const FP2: CoeffConfig = CoeffConfig::EquicharP { p: 2 };
const Q: CoeffConfig = CoeffConfig::Equichar0;

pub fn e1() -> CurveData {
    CurveData::parse(FP2, &["x1^2 + x1"]).expect("E1 parses")
}

pub fn e2() -> CurveData {
    CurveData::parse(Q, &["x1^2 - 1"]).expect("E2 parses")
}

pub fn e3() -> CurveData {
    CurveData::parse(FP2, &["x1^2 + x1", "x2^2 + x2 + x1"]).expect("E3 parses")
}

/// Case counts for the random suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteSizes {
    pub axiom_series_per_model: usize,
    pub homomorphism: usize,
    pub round_trips: usize,
    pub non_members: usize,
    pub saturation_trials: usize,
    pub consistent_systems: usize,
    pub obstructed_systems: usize,
}

impl Default for SuiteSizes {
    fn default() -> Self {
        SuiteSizes {
            axiom_series_per_model: 25,
            homomorphism: 50,
            round_trips: 25,
            non_members: 10,
            saturation_trials: 20,
            consistent_systems: 100,
            obstructed_systems: 20,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SelftestReport {
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.failure.is_none())
    }

    pub fn to_json(&self) -> Value {
        let suites: Vec<Value> = self
            .suites
            .iter()
            .map(|s| json!({"name": s.name, "cases": s.cases, "passed": s.failure.is_none(), "failure": s.failure}))
            .collect();
        json!({"seed": self.seed, "passed": self.passed(), "suites": suites})
    }
}

type Suite = std::result::Result<usize, String>;
type SuiteRun = Box<dyn Fn() -> Suite>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn e<T, E: std::fmt::Display>(r: std::result::Result<T, E>) -> std::result::Result<T, String> {
    r.map_err(|err| err.to_string())
}

fn series(config: CoeffConfig, coeff: &str, exponent: u64) -> AdditiveSeries {
    let c = parse_coeff(coeff, config).expect("literal coefficient");
    AdditiveSeries::from_exponents(config, [(c, exponent)]).expect("literal series")
}

fn tpoly(config: CoeffConfig, n: usize, s: &str) -> KPoly {
    parse_poly(s, &Namespace::presentation(n), config).expect("literal polynomial")
}

pub fn run(seed: u64) -> SelftestReport {
    run_with(seed, SuiteSizes::default())
}

pub fn run_with(seed: u64, sizes: SuiteSizes) -> SelftestReport {
    let suites: Vec<(&'static str, SuiteRun)> = vec![
        ("regression_e1", Box::new(regression_e1)),
        ("regression_e2", Box::new(regression_e2)),
        ("regression_e3", Box::new(regression_e3)),
        ("axioms", Box::new(move || axioms(seed, sizes.axiom_series_per_model))),
        ("homomorphism", Box::new(move || homomorphism(seed, sizes.homomorphism))),
        ("membership", Box::new(move || membership(seed, sizes.round_trips, sizes.non_members))),
        ("saturation", Box::new(move || saturation(seed, sizes.saturation_trials))),
        ("minimal_valuation", Box::new(minimal_valuation)),
        ("linear_algebra", Box::new(move || linear_algebra(seed, sizes.consistent_systems, sizes.obstructed_systems))),
    ];
    let suites = suites
        .into_iter()
        .map(|(name, f)| match f() {
            Ok(cases) => SuiteResult { name, cases, failure: None },
            Err(msg) => SuiteResult { name, cases: 0, failure: Some(msg) },
        })
        .collect();
    SelftestReport { seed, suites }
}

pub fn regression_e1() -> Suite {
    let curve = Curve::new(e1());
    let b = MemberBounds::default();
    let report = verify_conditions(curve.data());
    ensure!(report.all_hold(), "E1 conditions fail");
    let fiber = special_fiber(&report);
    ensure!(fiber.dimension == Some(2) && fiber.reduced, "E1 special fiber {fiber:?}");

    let tt = series(FP2, "t", 1);
    ensure!(e(stability::is_stable(&curve, &tt, &b))?.stable, "tT not stable on E1");
    ensure!(e(stability::is_free_action(&curve, &tt, &b))?.free, "tT not free on E1");
    let table = e(stability::induced_action(&curve, &tt, &b))?;
    let d21 = table.get(2, 1).map(|c| c.p.clone());
    ensure!(d21 == Some(tpoly(FP2, 2, "1")), "delta1(x2) = {d21:?}");

    let r = e(stability::is_stable(&curve, &series(FP2, "1", 1), &b))?;
    let failure = r.failure.map(|(i, j, g)| (i, j, g.to_string()));
    ensure!(failure == Some((2, 1, "1/t".to_string())), "T on E1: {failure:?}");

    let space = e(SearchSpace::new(FP2, 1, 1, 1, &["1"]))?;
    let mut found: Vec<(String, bool)> =
        e(stability::search_actions(&curve, &space, &b))?.iter().map(|h| (h.series.to_string(), h.free)).collect();
    found.sort();
    let expected: Vec<(String, bool)> = ["t*T", "t*T^2", "t*T^2 + t*T"].iter().map(|s| (s.to_string(), true)).collect();
    ensure!(found == expected, "E1 search found {found:?}");
    Ok(7)
}

pub fn regression_e2() -> Suite {
    let curve = Curve::new(e2());
    let b = MemberBounds::default();
    let report = verify_conditions(curve.data());
    ensure!(report.all_hold(), "E2 conditions fail");
    let inv = report.jacobian_units[0].inverse.as_ref().map(|p| p.to_string());
    ensure!(inv.as_deref() == Some("1/2*x1"), "E2 Jacobian witness {inv:?}");

    for (lam, stable) in [("1", false), ("t", true), ("t^2", true), ("2*t", true)] {
        let r = e(stability::is_stable(&curve, &series(Q, lam, 1), &b))?;
        ensure!(r.stable == stable, "E2 lambda = {lam}: stable = {}", r.stable);
    }

    let free = e(stability::is_free_action(&curve, &series(Q, "t", 1), &b))?;
    ensure!(free.free, "tT not free on E2");
    let k = ResidueField::of(Q);
    let expected = tpoly(Q, 2, "T1/2").map_coeffs(k, |c| c.residue().expect("integral"));
    let witness = free.entry_units.iter().find(|(i, j, _)| (*i, *j) == (2, 1)).and_then(|(_, _, w)| w.clone());
    ensure!(witness.as_ref() == Some(&expected), "E2 mod-t witness {witness:?}");
    Ok(7)
}

pub fn regression_e3() -> Suite {
    let data = e3();
    let report = verify_conditions(&data);
    ensure!(report.all_hold(), "E3 conditions fail");
    ensure!(report.zero_dimensional && report.radical == Some(true), "E3 not zero-dimensional and radical");
    let elim: Vec<String> = report.eliminants.iter().map(|p| p.to_string()).collect();
    ensure!(elim == ["x1^2 + x1", "x2^4 + x2"], "E3 eliminants {elim:?}");
    ensure!(
        report.eliminants.iter().enumerate().all(|(v, p)| crate::poly::univariate::is_squarefree(p, v)),
        "E3 eliminants not squarefree"
    );
    let d2 = report.jacobian_units[1].derivative.to_string();
    ensure!(d2 == "1", "E3 second Jacobian entry {d2}");

    let tower = tower_report(&data);
    let ideals: Vec<Option<Vec<String>>> = tower.iter().map(|s| s.ideal.clone()).collect();
    let s = |v: &[&str]| Some(v.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    ensure!(
        ideals == vec![s(&["t", "x1^2 + x1"]), s(&["t", "x1^2 + x1", "x2^2 + x2 + x1"]), None],
        "E3 tower {ideals:?}"
    );

    let alphas = build_alphas(&data);
    let x = MultiPoly::var(data.field(), Namespace::x(), 0);
    let a2 = &alphas[1];
    let a3 = (&(&(a2 * a2) + a2) + &x).scale(&crate::coefficients::DvrElement::t_pow(FP2, -1));
    ensure!(alphas[2] == a3, "alpha3 = {}", alphas[2]);
    Ok(5)
}

fn axiom_models() -> [CoeffConfig; 4] {
    [FP2, CoeffConfig::EquicharP { p: 3 }, Q, CoeffConfig::MixedChar { p: 2 }]
}

/// One axiom check on a random series and random `g`, `h` of degree at most
/// `max_deg`. Exponents stay below `p^3`.
pub fn axiom_case(rng: &mut ChaCha8Rng, config: CoeffConfig, max_deg: u32, bound: u32) -> Suite {
    let s = sample::series(rng, config, 4, 3, 3);
    ensure!(lfihd::validate_series(&s).is_ok(), "generated series {s} is not additive");
    let f = config.fraction_field();
    let ns = Namespace::x();
    let g = sample::poly(rng, f, &ns, max_deg, 4, (-1, 2));
    let h = sample::poly(rng, f, &ns, max_deg, 3, (-1, 2));
    let r = e(lfihd::check_axioms(&s, &g, &h, bound))?;
    match r.violation {
        None => Ok(r.checks),
        Some(v) => Err(format!(
            "{} on s = {s}, g = {g}: axiom {} at ({}, {}): {}",
            config.label(),
            v.axiom,
            v.i,
            v.j,
            v.detail
        )),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AxiomTrials {
    pub trials: usize,
    pub checks: usize,
    /// `(g, h, violation)` of the first failing trial.
    pub violation: Option<(String, String, lfihd::AxiomViolation)>,
}

/// Runs the axiom checks for a fixed series on `trials` seeded random pairs
/// `g`, `h` of degree at most `max_deg`.
pub fn axiom_trials(
    s: &AdditiveSeries,
    trials: usize,
    seed: u64,
    bound: u32,
    max_deg: u32,
) -> crate::Result<AxiomTrials> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = s.config().fraction_field();
    let ns = Namespace::x();
    let mut out = AxiomTrials { trials: 0, checks: 0, violation: None };
    for _ in 0..trials {
        let g = sample::poly(&mut rng, f, &ns, max_deg, 4, (-1, 2));
        let h = sample::poly(&mut rng, f, &ns, max_deg, 3, (-1, 2));
        let r = lfihd::check_axioms(s, &g, &h, bound)?;
        out.trials += 1;
        out.checks += r.checks;
        if let Some(v) = r.violation {
            out.violation = Some((g.to_string(), h.to_string(), v));
            break;
        }
    }
    Ok(out)
}

fn axioms(seed: u64, per_model: usize) -> Suite {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = 0;
    for config in axiom_models() {
        for _ in 0..per_model {
            axiom_case(&mut rng, config, 4, 4)?;
            cases += 1;
        }
    }
    Ok(cases)
}

/// `exp(gh) = exp(g) exp(h)` and coassociativity for random `s`, `g`, `h`.
pub fn homomorphism_case(rng: &mut ChaCha8Rng, config: CoeffConfig) -> Suite {
    let s = sample::series(rng, config, 4, 3, 3);
    let f = config.fraction_field();
    let ns = Namespace::x();
    let g = sample::poly(rng, f, &ns, 5, 4, (-1, 2));
    let h = sample::poly(rng, f, &ns, 5, 4, (-1, 2));
    let prod = e(lfihd::exp_apply(&s, &(&g * &h)))?;
    let (eg, eh) = (e(lfihd::exp_apply(&s, &g))?, e(lfihd::exp_apply(&s, &h))?);
    ensure!(prod == &eg * &eh, "exp not multiplicative for s = {s}, g = {g}, h = {h}");
    ensure!(e(lfihd::check_coassociativity(&s, &g))?, "coassociativity fails for s = {s}, g = {g}");
    Ok(1)
}

fn homomorphism(seed: u64, count: usize) -> Suite {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    let models = axiom_models();
    for i in 0..count {
        homomorphism_case(&mut rng, models[i % models.len()])?;
    }
    Ok(count)
}

/// `member(P(alpha))` for random P over O, certificate re-substituted.
pub fn round_trip_case(rng: &mut ChaCha8Rng, curve: &Curve) -> Suite {
    let n = curve.data().n();
    let p = sample::poly(rng, curve.data().field(), &Namespace::presentation(n + 1), 3, 4, (0, 2));
    let g = e(curve.evaluate(&p))?;
    let out = e(curve.member(&g, &MemberBounds::default()))?;
    let cert = out.certificate().ok_or_else(|| format!("P = {p}: image reported outside B"))?;
    ensure!(e(curve.check_certificate(cert))?, "certificate {} does not re-substitute", cert.p);
    ensure!(e(curve.evaluate(&cert.p))? == g, "certificate {} evaluates elsewhere", cert.p);
    Ok(1)
}

/// `t^{-1} m(alpha) + P(alpha)` with `m` a nonzero standard monomial of the
/// special fiber; never in B.
pub fn non_member(rng: &mut ChaCha8Rng, curve: &Curve, index: usize) -> KPoly {
    use rand::Rng;
    let data = curve.data();
    let n = data.n();
    let ns = Namespace::presentation(n + 1);
    let report = verify_conditions(data);
    let std = &report.standard_monomials;
    let embed: Vec<usize> = (0..n).collect();
    let base = lift_from_residue(&std[index % std.len()], data.config()).embed(&ns, &embed);
    let top = MultiPoly::monomial(
        data.field(),
        ns.clone(),
        Monomial::var_pow(n, (index / std.len()) as u32 % 3),
        crate::coefficients::DvrElement::t_pow(data.config(), -1),
    );
    let deg = rng.gen_range(0..=2);
    let extra = sample::poly(rng, data.field(), &ns, deg, 2, (0, 1));
    &(&base * &top) + &extra
}

pub fn non_member_case(rng: &mut ChaCha8Rng, curve: &Curve, index: usize) -> Suite {
    let q = non_member(rng, curve, index);
    let g = e(curve.evaluate(&q))?;
    match e(curve.member(&g, &MemberBounds::default()))? {
        MemberOutcome::NotMember { .. } => Ok(1),
        MemberOutcome::Member(c) => Err(format!("{q} evaluated in B with certificate {}", c.p)),
    }
}

fn membership(seed: u64, round_trips: usize, non_members: usize) -> Suite {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(2));
    let curve = Curve::new(e1());
    for _ in 0..round_trips {
        round_trip_case(&mut rng, &curve)?;
    }
    for i in 0..non_members {
        non_member_case(&mut rng, &curve, i)?;
    }
    Ok(round_trips + non_members)
}

fn saturation(seed: u64, trials: usize) -> Suite {
    let b = MemberBounds::default();
    for (name, data) in [("E1", e1()), ("E3", e3())] {
        let v = e(saturation_sample_check(&Curve::new(data), trials, seed.wrapping_add(3), &b))?;
        if let Some((q, expected)) = v.counterexample {
            return Err(format!("{name}: Q = {q}, expected member = {expected}"));
        }
    }
    Ok(2 * trials)
}

fn minimal_valuation() -> Suite {
    let b = MemberBounds::default();
    let mut cases = 0;
    for (name, data) in [("E1", e1()), ("E2", e2()), ("E3", e3())] {
        let config = data.config();
        let r =
            e(stability::minimal_valuation_criterion_check(&Curve::new(data), &SearchSpace::default_for(config), &b))?;
        ensure!(r.applicable, "{name}: criterion reported inapplicable");
        if let Some(s) = r.counterexample {
            return Err(format!("{name}: stable series {s} has a unit coefficient"));
        }
        cases += r.stable_series;
    }
    Ok(cases)
}

fn linalg_models() -> [CoeffConfig; 4] {
    [FP2, CoeffConfig::EquicharP { p: 5 }, Q, CoeffConfig::MixedChar { p: 3 }]
}

pub fn consistent_case(rng: &mut ChaCha8Rng, config: CoeffConfig) -> Suite {
    use rand::Rng;
    let (r, c) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
    let a = sample::matrix(rng, config, r, c, 3);
    let y = sample::vector(rng, config, c, 3);
    let b = e(a.mul_vec(&y))?;
    match e(solve_over_dvr(&a, &b))? {
        SolveOutcome::Solution(x) => {
            ensure!(x.iter().all(|v| v.is_integral()), "solution leaves O");
            ensure!(e(a.mul_vec(&x))? == b, "A x != b");
            Ok(1)
        }
        other => Err(format!("consistent {r}x{c} system over {} reported {other:?}", config.label())),
    }
}

pub fn obstructed_case(rng: &mut ChaCha8Rng, config: CoeffConfig) -> Suite {
    use rand::Rng;
    let (r, c) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
    let (a, b, planted) = sample::obstructed_system(rng, config, r, c);
    match e(solve_over_dvr(&a, &b))? {
        SolveOutcome::NoSolution { row, .. } if row == planted => Ok(1),
        other => Err(format!("obstruction planted in row {planted}, got {other:?}")),
    }
}

fn linear_algebra(seed: u64, consistent: usize, obstructed: usize) -> Suite {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(4));
    let models = linalg_models();
    for i in 0..consistent {
        consistent_case(&mut rng, models[i % models.len()])?;
    }
    for i in 0..obstructed {
        obstructed_case(&mut rng, models[i % models.len()])?;
    }
    Ok(consistent + obstructed)
}
