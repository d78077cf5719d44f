//! Locally finite iterative higher derivations on K[x], given by an additive
//! series `s(T)` through `x -> x + s(T)`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::coefficients::{CoeffConfig, DvrElement, FractionField, Valuation};
use crate::error::{Error, Result};
use crate::poly::{Monomial, MultiPoly, Namespace};

pub type KPoly = MultiPoly<FractionField>;

/// `s(T) = sum_j lambda_j T^{e_j}`, stored with merged exponents, no zero
/// coefficients, sorted by exponent.
#[derive(Clone, Debug, PartialEq)]
pub struct AdditiveSeries {
    config: CoeffConfig,
    terms: Vec<(DvrElement, u64)>,
}

impl AdditiveSeries {
    pub fn zero(config: CoeffConfig) -> Self {
        AdditiveSeries { config, terms: Vec::new() }
    }

    /// Terms given as `(lambda, e)` meaning `lambda * T^e`.
    pub fn from_exponents(config: CoeffConfig, terms: impl IntoIterator<Item = (DvrElement, u64)>) -> Result<Self> {
        let mut merged: Vec<(DvrElement, u64)> = Vec::new();
        for (c, e) in terms {
            if c.config() != config {
                return Err(Error::ConfigMismatch);
            }
            if e == 0 {
                return Err(Error::InvalidExponent {
                    exponent: 0,
                    reason: "series terms need a positive exponent".into(),
                });
            }
            match merged.iter_mut().find(|(_, f)| *f == e) {
                Some((d, _)) => *d = &*d + &c,
                None => merged.push((c, e)),
            }
        }
        merged.retain(|(c, _)| !c.is_zero());
        merged.sort_by_key(|(_, e)| *e);
        Ok(AdditiveSeries { config, terms: merged })
    }

    /// Terms given as `(lambda, s)` meaning `lambda * T^{p^s}` with `p` the
    /// characteristic exponent of K.
    pub fn from_frobenius(config: CoeffConfig, terms: impl IntoIterator<Item = (DvrElement, u32)>) -> Result<Self> {
        let p = config.char_exponent();
        let mut raw = Vec::new();
        for (c, s) in terms {
            let e = p.checked_pow(s).filter(|e| *e <= u32::MAX as u64).ok_or_else(|| Error::InvalidExponent {
                exponent: s as u64,
                reason: "frobenius exponent too large".into(),
            })?;
            raw.push((c, e));
        }
        Self::from_exponents(config, raw)
    }

    /// `c * T`.
    pub fn linear(c: DvrElement) -> Self {
        let config = c.config();
        Self::from_exponents(config, [(c, 1)]).unwrap()
    }

    pub fn config(&self) -> CoeffConfig {
        self.config
    }

    pub fn terms(&self) -> &[(DvrElement, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_exponent(&self) -> u64 {
        self.terms.last().map_or(0, |(_, e)| *e)
    }

    /// Minimal coefficient valuation.
    pub fn min_valuation(&self) -> Valuation {
        self.terms.iter().map(|(c, _)| c.valuation()).min().unwrap_or(Valuation::Infinite)
    }

    /// Frobenius exponent of each term, when every exponent is a power of
    /// the characteristic exponent.
    pub fn frobenius_terms(&self) -> Option<Vec<(DvrElement, u32)>> {
        let p = self.config.char_exponent();
        self.terms.iter().map(|(c, e)| frobenius_log(*e, p).map(|s| (c.clone(), s))).collect()
    }

    /// The series as a polynomial in variable `v` of `ns`.
    pub fn to_poly(&self, ns: &Namespace, v: usize) -> KPoly {
        let f = FractionField::new(self.config);
        MultiPoly::from_terms(
            f,
            ns.clone(),
            self.terms.iter().map(|(c, e)| (Monomial::var_pow(v, *e as u32), c.clone())),
        )
    }
}

impl fmt::Display for AdditiveSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly(&Namespace::new(["T"]), 0))
    }
}

/// `s` with `p^s = e`, if any.
fn frobenius_log(e: u64, p: u64) -> Option<u32> {
    if p == 1 {
        return (e == 1).then_some(0);
    }
    let mut s = 0;
    let mut q = 1u64;
    while q < e {
        q = q.checked_mul(p)?;
        s += 1;
    }
    (q == e).then_some(s)
}

#[derive(Clone, Debug, PartialEq)]
pub enum SeriesVerdict {
    Ok,
    /// A nonzero term of `s(T+U) - s(T) - s(U)`.
    Violation {
        monomial: String,
        coefficient: DvrElement,
    },
}

impl SeriesVerdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, SeriesVerdict::Ok)
    }
}

/// Checks the additivity identity `s(T+U) = s(T) + s(U)`; the witness is
/// the smallest nonzero term of the difference in the term order.
pub fn validate_series(s: &AdditiveSeries) -> SeriesVerdict {
    let ns = Namespace::new(["T", "U"]);
    let f = FractionField::new(s.config);
    let t = MultiPoly::var(f, ns.clone(), 0);
    let u = MultiPoly::var(f, ns.clone(), 1);
    let single = s.to_poly(&Namespace::new(["T"]), 0);
    let sum = single.substitute(&ns, &[&t + &u]).expect("one variable");
    let diff = &(&sum - &s.to_poly(&ns, 0)) - &s.to_poly(&ns, 1);
    match diff.terms().last() {
        None => SeriesVerdict::Ok,
        Some((m, c)) => {
            let mono = MultiPoly::monomial(f, ns, m.clone(), DvrElement::one(s.config));
            SeriesVerdict::Violation { monomial: mono.to_string(), coefficient: c.clone() }
        }
    }
}

fn ensure_valid(s: &AdditiveSeries) -> Result<()> {
    match validate_series(s) {
        SeriesVerdict::Ok => Ok(()),
        SeriesVerdict::Violation { monomial, coefficient } => {
            Err(Error::InvalidSeries(format!("s(T+U) - s(T) - s(U) has coefficient {coefficient} at {monomial}")))
        }
    }
}

fn check_source(s: &AdditiveSeries, g: &KPoly) -> Result<()> {
    if *g.namespace() != Namespace::x() {
        return Err(Error::NamespaceMismatch { left: Namespace::x().to_string(), right: g.namespace().to_string() });
    }
    if g.ring().config() != s.config {
        return Err(Error::ConfigMismatch);
    }
    Ok(())
}

/// `g(x + s(T))` in the namespace `[x, T]`.
pub fn exp_apply(s: &AdditiveSeries, g: &KPoly) -> Result<KPoly> {
    ensure_valid(s)?;
    check_source(s, g)?;
    Ok(exp_unchecked(s, g, None))
}

/// [`exp_apply`] with all terms of T-degree above `max_t` dropped.
pub fn exp_apply_truncated(s: &AdditiveSeries, g: &KPoly, max_t: u32) -> Result<KPoly> {
    ensure_valid(s)?;
    check_source(s, g)?;
    Ok(exp_unchecked(s, g, Some(max_t)))
}

fn exp_unchecked(s: &AdditiveSeries, g: &KPoly, max_t: Option<u32>) -> KPoly {
    let ns = Namespace::x_series();
    let f = *g.ring();
    let shift = &MultiPoly::var(f, ns.clone(), 0) + &s.to_poly(&ns, 1);
    let trunc = |p: KPoly| match max_t {
        Some(m) => p.truncate_in(1, m),
        None => p,
    };
    let mut powers = vec![MultiPoly::one(f, ns.clone())];
    let mut out = MultiPoly::zero(f, ns.clone());
    for (m, c) in g.terms() {
        let e = m.degree_in(0) as usize;
        while powers.len() <= e {
            let next = trunc(powers.last().unwrap() * &shift);
            powers.push(next);
        }
        out = &out + &powers[e].scale(c);
    }
    out
}

/// All `delta^{(i)}(g)` for one `g`, read off from the exponential.
#[derive(Clone, Debug, PartialEq)]
pub struct DeltaTable {
    entries: Vec<KPoly>,
    zero: KPoly,
}

impl DeltaTable {
    pub fn new(s: &AdditiveSeries, g: &KPoly) -> Result<Self> {
        let exp = exp_apply(s, g)?;
        Ok(Self::from_exp(&exp, g))
    }

    /// Only the entries with index at most `max_i`.
    pub fn truncated(s: &AdditiveSeries, g: &KPoly, max_i: u32) -> Result<Self> {
        let exp = exp_apply_truncated(s, g, max_i)?;
        Ok(Self::from_exp(&exp, g))
    }

    fn from_exp(exp: &KPoly, g: &KPoly) -> Self {
        let zero = MultiPoly::zero(*g.ring(), Namespace::x());
        DeltaTable { entries: exp.coefficients_in(1), zero }
    }

    pub fn get(&self, i: usize) -> &KPoly {
        self.entries.get(i).unwrap_or(&self.zero)
    }

    /// Largest `i` with a nonzero entry.
    pub fn support_end(&self) -> usize {
        self.entries.iter().rposition(|e| !e.is_zero()).unwrap_or(0)
    }

    pub fn entries(&self) -> &[KPoly] {
        &self.entries
    }
}

/// `delta^{(i)}(g)`: the coefficient of `T^i` in `g(x + s(T))`.
pub fn delta(s: &AdditiveSeries, g: &KPoly, i: u32) -> Result<KPoly> {
    Ok(DeltaTable::truncated(s, g, i)?.get(i as usize).clone())
}

/// `binom(i+j, i)`, exactly for `p = 1` and reduced mod `p` by Lucas'
/// theorem otherwise.
pub fn lucas_binomial(i: u64, j: u64, p: u64) -> BigUint {
    if p <= 1 {
        return binomial(i + j, i);
    }
    let (mut n, mut k) = (i + j, i);
    let mut acc = BigUint::one();
    while n > 0 || k > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return BigUint::zero();
        }
        acc = (acc * binomial(nd, kd)) % p;
        n /= p;
        k /= p;
    }
    acc
}

fn binomial(n: u64, k: u64) -> BigUint {
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for m in 0..k {
        acc = acc * (n - m) / (m + 1);
    }
    acc
}

#[derive(Clone, Debug, PartialEq)]
pub struct AxiomViolation {
    /// One of `a`, `b`, `c`, `d`.
    pub axiom: char,
    pub i: u64,
    pub j: u64,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AxiomReport {
    pub checks: usize,
    pub violation: Option<AxiomViolation>,
}

impl AxiomReport {
    pub fn is_ok(&self) -> bool {
        self.violation.is_none()
    }
}

/// Verifies the four axioms for all indices up to `bound`: identity,
/// local finiteness beyond `deg g * max exponent`, Leibniz on `g*h`, and
/// iterativity with Lucas binomials.
pub fn check_axioms(s: &AdditiveSeries, g: &KPoly, h: &KPoly, bound: u32) -> Result<AxiomReport> {
    ensure_valid(s)?;
    check_source(s, g)?;
    check_source(s, h)?;
    let config = s.config;
    let p = config.char_exponent();
    let f = FractionField::new(config);
    let mut checks = 0;
    fn fail(checks: usize, axiom: char, i: u64, j: u64, detail: String) -> Result<AxiomReport> {
        Ok(AxiomReport { checks, violation: Some(AxiomViolation { axiom, i, j, detail }) })
    }

    let full = DeltaTable::new(s, g)?;
    checks += 1;
    if full.get(0) != g {
        return fail(checks, 'a', 0, 0, format!("delta0(g) = {}", full.get(0)));
    }

    checks += 1;
    let deg = g.total_degree().unwrap_or(0) as u64;
    let limit = deg * s.max_exponent();
    if full.support_end() as u64 > limit {
        return fail(checks, 'b', full.support_end() as u64, 0, format!("nonzero beyond index {limit}"));
    }

    let gh = &(g * h);
    let dg = DeltaTable::truncated(s, g, bound)?;
    let dh = DeltaTable::truncated(s, h, bound)?;
    let dgh = DeltaTable::truncated(s, gh, bound)?;
    for i in 0..=bound as usize {
        checks += 1;
        let mut rhs = MultiPoly::zero(f, Namespace::x());
        for i1 in 0..=i {
            rhs = &rhs + &(dg.get(i1) * dh.get(i - i1));
        }
        if *dgh.get(i) != rhs {
            return fail(checks, 'c', i as u64, 0, format!("{} != {}", dgh.get(i), rhs));
        }
    }

    let wide = DeltaTable::truncated(s, g, 2 * bound)?;
    for j in 0..=bound as usize {
        let inner = DeltaTable::truncated(s, wide.get(j), bound)?;
        for i in 0..=bound as usize {
            checks += 1;
            let c = DvrElement::from_bigint(config, &BigInt::from(lucas_binomial(i as u64, j as u64, p)));
            let rhs = wide.get(i + j).scale(&c);
            if *inner.get(i) != rhs {
                return fail(checks, 'd', i as u64, j as u64, format!("{} != {}", inner.get(i), rhs));
            }
        }
    }
    Ok(AxiomReport { checks, violation: None })
}

/// Substituting `T -> T + U` in `g(x + s(T))` agrees with applying the
/// exponential twice, `G(x + s(U), T)`.
pub fn check_coassociativity(s: &AdditiveSeries, g: &KPoly) -> Result<bool> {
    let exp = exp_apply(s, g)?;
    let ns = Namespace::new(["x", "T", "U"]);
    let f = *g.ring();
    let (x, t, u) =
        (MultiPoly::var(f, ns.clone(), 0), MultiPoly::var(f, ns.clone(), 1), MultiPoly::var(f, ns.clone(), 2));
    let lhs = exp.substitute(&ns, &[x.clone(), &t + &u])?;
    let rhs = exp.substitute(&ns, &[&x + &s.to_poly(&ns, 2), t])?;
    Ok(lhs == rhs)
}

/// `s + t^n T^e`, where `e` is a power of the characteristic exponent that
/// exceeds every exponent of `s`. With characteristic exponent 1 only
/// `e = 1` is accepted, which merges into the linear term.
pub fn extend_action(s: &AdditiveSeries, n_new: i64, e_new: u64) -> Result<AdditiveSeries> {
    let p = s.config.char_exponent();
    let bad = |reason: &str| Err(Error::InvalidExponent { exponent: e_new, reason: reason.into() });
    if frobenius_log(e_new, p).is_none() {
        return bad(&format!("not a power of the characteristic exponent {p}"));
    }
    if p > 1 && e_new <= s.max_exponent() {
        return bad("must exceed every exponent of the series");
    }
    if n_new < 0 {
        return Err(Error::NegativeValuation(n_new));
    }
    let mut terms = s.terms.clone();
    terms.push((DvrElement::t_pow(s.config, n_new), e_new));
    let out = AdditiveSeries::from_exponents(s.config, terms)?;
    ensure_valid(&out)?;
    Ok(out)
}

/// `1 = sum_j c_j * delta^{(beta_j)}(d_j)` in the presented algebra, with
/// `d_j` an index into the tracked generators.
#[derive(Clone, Debug, PartialEq)]
pub struct FreenessCertificate {
    pub entries: Vec<CertificateEntry>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CertificateEntry {
    /// Multiplier in the presentation variables.
    pub c: KPoly,
    pub beta: u64,
    pub d: usize,
}
