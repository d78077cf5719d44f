//! Additive series that preserve B, the induced higher derivation on the
//! generators, freeness, and a grid search over series.

use rayon::prelude::*;

use crate::coefficients::{CoeffConfig, DvrElement, ResidueField, Valuation};
use crate::curve::{
    lift_from_residue, reduce_mod_t, verify_conditions, Curve, KPoly, MemberBounds, MemberOutcome,
    MembershipCertificate, ResPoly,
};
use crate::error::{Error, Result};
use crate::groebner;
use crate::lfihd::{self, AdditiveSeries, CertificateEntry, FreenessCertificate};
use crate::poly::{parse_coeff, univariate, MultiPoly, Namespace};

fn ensure_conditions(curve: &Curve) -> Result<()> {
    if verify_conditions(curve.data()).all_hold() {
        Ok(())
    } else {
        Err(Error::ConditionsNotMet("the curve fails the special-fiber conditions".into()))
    }
}

fn check_series(curve: &Curve, s: &AdditiveSeries) -> Result<()> {
    if s.config() != curve.config() {
        return Err(Error::ConfigMismatch);
    }
    if let lfihd::SeriesVerdict::Violation { monomial, coefficient } = lfihd::validate_series(s) {
        return Err(Error::InvalidSeries(format!("s(T+U) - s(T) - s(U) has coefficient {coefficient} at {monomial}")));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct StabilityEntry {
    /// Generator index, 1-based.
    pub i: usize,
    pub j: usize,
    pub element: KPoly,
    pub outcome: MemberOutcome,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StabilityReport {
    pub stable: bool,
    pub entries: Vec<StabilityEntry>,
    /// `(i, j, element)` of the first T-coefficient outside B.
    pub failure: Option<(usize, usize, KPoly)>,
}

/// Whether every T-coefficient of every `alpha_i(x + s(T))` lies in B. Stops
/// at the first coefficient outside B.
pub fn is_stable(curve: &Curve, s: &AdditiveSeries, bounds: &MemberBounds) -> Result<StabilityReport> {
    check_series(curve, s)?;
    ensure_conditions(curve)?;
    stable_unchecked(curve, s, bounds)
}

fn stable_unchecked(curve: &Curve, s: &AdditiveSeries, bounds: &MemberBounds) -> Result<StabilityReport> {
    let mut entries = Vec::new();
    for (idx, alpha) in curve.alphas().iter().enumerate() {
        let exp = lfihd::exp_apply(s, alpha)?;
        for (j, element) in exp.coefficients_in(1).into_iter().enumerate().skip(1) {
            let outcome = curve.member(&element, bounds)?;
            let ok = outcome.is_member();
            entries.push(StabilityEntry { i: idx + 1, j, element: element.clone(), outcome });
            if !ok {
                return Ok(StabilityReport { stable: false, entries, failure: Some((idx + 1, j, element)) });
            }
        }
    }
    Ok(StabilityReport { stable: true, entries, failure: None })
}

/// `delta^{(j)}(x_i)` as elements of B, for `1 <= j <= deg(alpha_i) * e_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct InducedActionTable {
    /// `rows[i-1][j-1]` certifies `delta^{(j)}(x_i)`.
    pub rows: Vec<Vec<MembershipCertificate>>,
}

impl InducedActionTable {
    pub fn get(&self, i: usize, j: usize) -> Option<&MembershipCertificate> {
        self.rows.get(i.checked_sub(1)?)?.get(j.checked_sub(1)?)
    }

    /// `(i, j, certificate)` in generator-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &MembershipCertificate)> {
        self.rows.iter().enumerate().flat_map(|(i, row)| row.iter().enumerate().map(move |(j, c)| (i + 1, j + 1, c)))
    }
}

pub fn induced_action(curve: &Curve, s: &AdditiveSeries, bounds: &MemberBounds) -> Result<InducedActionTable> {
    check_series(curve, s)?;
    ensure_conditions(curve)?;
    induced_unchecked(curve, s, bounds)
}

fn induced_unchecked(curve: &Curve, s: &AdditiveSeries, bounds: &MemberBounds) -> Result<InducedActionTable> {
    let mut rows = Vec::new();
    for (alpha, deg) in curve.alphas().iter().zip(curve.alpha_degrees()) {
        let exp = lfihd::exp_apply(s, alpha)?;
        let coeffs = exp.coefficients_in(1);
        let limit = *deg as u64 * s.max_exponent();
        let zero = MultiPoly::zero(*alpha.ring(), Namespace::x());
        let mut row = Vec::new();
        for j in 1..=limit as usize {
            let element = coeffs.get(j).cloned().unwrap_or_else(|| zero.clone());
            match curve.member(&element, bounds)? {
                MemberOutcome::Member(c) => row.push(c),
                MemberOutcome::NotMember { .. } => return Err(Error::NotStable),
            }
        }
        rows.push(row);
    }
    Ok(InducedActionTable { rows })
}

#[derive(Clone, Debug, PartialEq)]
pub struct FreenessReport {
    pub free: bool,
    /// The mod-t images of the entries generate the unit ideal of
    /// `k[T_1..T_{n+1}]/(fbar)`.
    pub special_fiber_unit: bool,
    /// The entries generate the unit ideal of K[x].
    pub generic_fiber_unit: bool,
    /// Per table entry `(i, j)`, the inverse of its mod-t image when that
    /// image alone is a unit.
    pub entry_units: Vec<(usize, usize, Option<ResPoly>)>,
    pub certificate: Option<FreenessCertificate>,
}

/// Decides whether the entries of the induced table generate B, by checking
/// the special and the generic fiber, and assembles `1 = sum C_j E_j` with
/// `C_j` over O when they do.
pub fn is_free_action(curve: &Curve, s: &AdditiveSeries, bounds: &MemberBounds) -> Result<FreenessReport> {
    check_series(curve, s)?;
    ensure_conditions(curve)?;
    let table = induced_unchecked(curve, s, bounds)?;
    free_unchecked(curve, s, &table)
}

fn free_unchecked(curve: &Curve, s: &AdditiveSeries, table: &InducedActionTable) -> Result<FreenessReport> {
    let data = curve.data();
    let config = curve.config();
    let n = data.n();
    let f = data.field();
    let k = ResidueField::of(config);
    let ns = Namespace::presentation(n + 1);
    let embed: Vec<usize> = (0..n).collect();
    let entries: Vec<(usize, usize, &MembershipCertificate)> =
        table.iter().filter(|(_, _, c)| !c.g.is_zero()).collect();

    let fbar: Vec<ResPoly> = data.f().iter().map(|fi| reduce_mod_t(fi).unwrap().embed(&ns, &embed)).collect();
    let fbar_basis = groebner::buchberger(&k, &ns, &fbar);
    let images: Vec<ResPoly> = entries.iter().map(|(_, _, c)| reduce_mod_t(&c.p).unwrap()).collect();
    let entry_units = entries
        .iter()
        .zip(&images)
        .map(|((i, j, _), img)| (*i, *j, groebner::is_unit_in_quotient(img, &fbar_basis).inverse))
        .collect();
    let mut special_gens = images.clone();
    special_gens.extend(fbar.iter().cloned());
    let special = groebner::unit_cofactors(&k, &ns, &special_gens);

    let values: Vec<KPoly> = entries.iter().map(|(_, _, c)| c.g.clone()).collect();
    let generic = univariate::gcd_with_cofactors(&values, 0).filter(|(g, _)| g.is_constant() && !g.is_zero());

    let mut report = FreenessReport {
        free: special.is_some() && generic.is_some(),
        special_fiber_unit: special.is_some(),
        generic_fiber_unit: generic.is_some(),
        entry_units,
        certificate: None,
    };
    let (Some(special), Some((gcd, h))) = (special, generic) else {
        return Ok(report);
    };

    let make = |cs: Vec<KPoly>| FreenessCertificate {
        entries: entries.iter().zip(cs).map(|((i, j, _), c)| CertificateEntry { c, beta: *j as u64, d: *i }).collect(),
    };
    let zero = MultiPoly::zero(f, ns.clone());

    // a unit constant among the entries certifies freeness on its own
    if let Some(pos) = entries.iter().position(|(_, _, c)| c.g.constant_value().is_some_and(|v| v.is_unit_in_o())) {
        let inv = entries[pos].2.g.constant_value().unwrap().inv()?;
        let cs = (0..entries.len())
            .map(|q| if q == pos { MultiPoly::constant(f, ns.clone(), inv.clone()) } else { zero.clone() })
            .collect();
        report.certificate = Some(make(cs));
        return finish(curve, s, report);
    }

    // special fiber: 1 = a + t*c with a = sum c_j E_j
    let lift = |p: &ResPoly| lift_from_residue(p, config);
    let cj: Vec<KPoly> = special[..entries.len()].iter().map(lift).collect();
    let qi: Vec<KPoly> = special[entries.len()..].iter().map(lift).collect();
    let mut a_t = zero.clone();
    for (c, (_, _, cert)) in cj.iter().zip(&entries) {
        a_t = &a_t + &(c * &cert.p);
    }
    let f_t: Vec<KPoly> = data.f().iter().map(|fi| fi.embed(&ns, &embed)).collect();
    let mut rest = &MultiPoly::one(f, ns.clone()) - &a_t;
    for (q, fi) in qi.iter().zip(&f_t) {
        rest = &rest - &(q * fi);
    }
    let t_inv = DvrElement::t_pow(config, -1);
    let mut c_t = rest.scale(&t_inv);
    debug_assert!(c_t.is_integral());
    for (i, q) in qi.iter().enumerate() {
        c_t = &c_t + &(q * &MultiPoly::var(f, ns.clone(), i + 1));
    }

    // generic fiber: t^m = sum H_j E_j with H_j over O in T1
    let gcd_inv = gcd.constant_value().unwrap().inv()?;
    let h: Vec<KPoly> = h.iter().map(|p| p.scale(&gcd_inv)).collect();
    let m = h.iter().filter_map(|p| p.content_valuation().finite()).map(|v| -v).max().unwrap_or(0).max(0);
    let t_m = DvrElement::t_pow(config, m);
    let h_t: Vec<KPoly> = h.iter().map(|p| p.scale(&t_m).embed(&ns, &[0])).collect();

    // 1 = (a + t c)^m = a * S + (t c)^m
    let tc = c_t.scale(&f.uniformizer());
    let mut s_sum = zero.clone();
    for kk in 0..m {
        let binom = DvrElement::from_bigint(config, &lfihd::lucas_binomial(kk as u64, (m - kk) as u64, 1).into());
        let term = &a_t.pow((m - 1 - kk) as u32) * &tc.pow(kk as u32);
        s_sum = &s_sum + &term.scale(&binom);
    }
    let c_m = c_t.pow(m as u32);
    let cs = cj.iter().zip(&h_t).map(|(c, hj)| &(c * &s_sum) + &(&c_m * hj)).collect();
    report.certificate = Some(make(cs));
    finish(curve, s, report)
}

fn finish(curve: &Curve, s: &AdditiveSeries, report: FreenessReport) -> Result<FreenessReport> {
    let cert = report.certificate.as_ref().unwrap();
    assert!(certificate_holds(curve, s, cert)?, "freeness certificate failed to verify");
    Ok(report)
}

/// `sum C_j(alpha) * delta^{(beta_j)}(alpha_{d_j}) = 1` with every `C_j` over O.
/// The deltas are recomputed from the alphas, so the check is independent of
/// the membership certificates.
pub fn certificate_holds(curve: &Curve, s: &AdditiveSeries, cert: &FreenessCertificate) -> Result<bool> {
    let mut total = MultiPoly::zero(curve.data().field(), Namespace::x());
    for e in &cert.entries {
        if !e.c.is_integral() {
            return Ok(false);
        }
        let value = curve.evaluate(&e.c)?;
        let d = lfihd::delta(s, &curve.alphas()[e.d - 1], e.beta as u32)?;
        total = &total + &(&value * &d);
    }
    Ok(total == MultiPoly::one(curve.data().field(), Namespace::x()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct PatternRow {
    pub i: usize,
    /// `max(n - i + 1, 0)`.
    pub required: i64,
    pub value: KPoly,
    pub divisible: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PatternReport {
    pub e: u64,
    pub n: i64,
    pub rows: Vec<PatternRow>,
}

impl PatternReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.divisible)
    }
}

/// For `s` with t-power coefficients, `e` its largest exponent and `n` the
/// valuation there: whether `t^{max(n-i+1,0)}` divides `delta^{(e)}(x_i)` in B.
pub fn check_divisibility_pattern(curve: &Curve, s: &AdditiveSeries, bounds: &MemberBounds) -> Result<PatternReport> {
    check_series(curve, s)?;
    if s.is_zero() || s.terms().iter().any(|(c, _)| c.as_t_power().is_none()) {
        return Err(Error::SeriesNotTPowerForm);
    }
    let (lead, e) = s.terms().last().unwrap();
    let n = lead.as_t_power().unwrap();
    let mut rows = Vec::new();
    for (idx, alpha) in curve.alphas().iter().enumerate() {
        let i = idx + 1;
        let required = (n - i as i64 + 1).max(0);
        let value = lfihd::delta(s, alpha, *e as u32)?;
        let quotient = value.scale(&DvrElement::t_pow(curve.config(), -required));
        let divisible = curve.member(&quotient, bounds)?.is_member();
        rows.push(PatternRow { i, required, value, divisible });
    }
    Ok(PatternReport { e: *e, n, rows })
}

/// Series grid: exponents `p^0..p^max_frob`, each coefficient `0` or
/// `u * t^v` with `u` from `units` and `min_val <= v <= max_val`.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchSpace {
    pub max_frob: u32,
    pub min_val: i64,
    pub max_val: i64,
    pub units: Vec<DvrElement>,
}

impl SearchSpace {
    pub fn new(config: CoeffConfig, max_frob: u32, min_val: i64, max_val: i64, units: &[&str]) -> Result<Self> {
        let units = units
            .iter()
            .map(|u| {
                let c = parse_coeff(u, config)?;
                if c.is_unit_in_o() {
                    Ok(c)
                } else {
                    Err(Error::Input(format!("search multiplier {u} is not a unit of O")))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        if min_val > max_val || min_val < 0 {
            return Err(Error::Input(format!("invalid valuation range {min_val}..{max_val}")));
        }
        Ok(SearchSpace { max_frob, min_val, max_val, units })
    }

    pub fn default_for(config: CoeffConfig) -> Self {
        Self::new(config, 2, 0, 2, &["1"]).unwrap()
    }

    /// All nonzero candidates in grid order. With characteristic exponent 1
    /// every exponent is 1, so only the linear slot is enumerated.
    pub fn candidates(&self, config: CoeffConfig) -> Vec<AdditiveSeries> {
        let slots = if config.char_exponent() == 1 { 1 } else { self.max_frob as usize + 1 };
        let mut choices = vec![DvrElement::zero(config)];
        for v in self.min_val..=self.max_val {
            for u in &self.units {
                choices.push(u * &DvrElement::t_pow(config, v));
            }
        }
        let mut out = Vec::new();
        let total = choices.len().pow(slots as u32);
        for idx in 0..total {
            let mut rest = idx;
            let mut digits = vec![0; slots];
            for d in digits.iter_mut().rev() {
                *d = rest % choices.len();
                rest /= choices.len();
            }
            if digits.iter().all(|d| *d == 0) {
                continue;
            }
            let terms = digits.iter().enumerate().map(|(s, d)| (choices[*d].clone(), s as u32));
            out.push(AdditiveSeries::from_frobenius(config, terms).expect("grid exponents are small"));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchHit {
    pub series: AdditiveSeries,
    pub free: bool,
}

/// All nonzero stable series of the grid, with freeness, in grid order.
pub fn search_actions(curve: &Curve, space: &SearchSpace, bounds: &MemberBounds) -> Result<Vec<SearchHit>> {
    ensure_conditions(curve)?;
    let candidates = space.candidates(curve.config());
    let results: Vec<Result<Option<SearchHit>>> = candidates
        .par_iter()
        .map(|s| {
            if !lfihd::validate_series(s).is_ok() || !stable_unchecked(curve, s, bounds)?.stable {
                return Ok(None);
            }
            let table = induced_unchecked(curve, s, bounds)?;
            let free = free_unchecked(curve, s, &table)?.free;
            Ok(Some(SearchHit { series: s.clone(), free }))
        })
        .collect();
    results.into_iter().filter_map(|r| r.transpose()).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct MinimalValuationReport {
    /// False when B = O[x], where the criterion says nothing.
    pub applicable: bool,
    pub stable_series: usize,
    /// A stable series with a unit coefficient.
    pub counterexample: Option<AdditiveSeries>,
}

/// When B is larger than O[x], no stable series in the grid may have a
/// coefficient of valuation 0.
pub fn minimal_valuation_criterion_check(
    curve: &Curve,
    space: &SearchSpace,
    bounds: &MemberBounds,
) -> Result<MinimalValuationReport> {
    let applicable = curve.alphas().iter().any(|a| !a.is_integral());
    if !applicable {
        return Ok(MinimalValuationReport { applicable, stable_series: 0, counterexample: None });
    }
    let hits = search_actions(curve, space, bounds)?;
    let counterexample =
        hits.iter().find(|h| h.series.min_valuation() <= Valuation::Finite(0)).map(|h| h.series.clone());
    Ok(MinimalValuationReport { applicable, stable_series: hits.len(), counterexample })
}
