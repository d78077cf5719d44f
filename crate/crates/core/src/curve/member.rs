//! Membership in `B = O[alpha_1..alpha_{n+1}]` by solving an O-linear system
//! over all alpha-monomials up to a degree bound.

use std::sync::Arc;

use super::{Curve, KPoly};
use crate::coefficients::{DvrElement, Valuation};
use crate::error::{Error, Result};
use crate::linalg::{DvrFactorization, DvrMatrix, SolveOutcome};
use crate::poly::{Monomial, MultiPoly, Namespace};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MemberBounds {
    /// Largest x-degree of the alpha-monomials used; `None` means
    /// `2 * deg g + 4`.
    pub max_monomial_degree: Option<u32>,
    /// Largest t-denominator allowed in the coefficient matrix.
    pub max_certificate_valuation: i64,
    /// Cap on the number of alpha-monomials.
    pub max_monomials: usize,
}

impl Default for MemberBounds {
    fn default() -> Self {
        MemberBounds { max_monomial_degree: None, max_certificate_valuation: 64, max_monomials: 5000 }
    }
}

/// `P` over O in `T_1..T_{n+1}` with `P(alpha) = g`.
#[derive(Clone, Debug, PartialEq)]
pub struct MembershipCertificate {
    pub p: KPoly,
    pub g: KPoly,
    /// Degree bound at which the certificate was found.
    pub degree_bound: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub enum MemberOutcome {
    Member(MembershipCertificate),
    /// No representation with alpha-monomials of x-degree at most `bound`.
    /// `blocking_power` is the power of x whose coefficient could not be met.
    NotMember {
        bound: u32,
        blocking_power: usize,
        gap: Option<i64>,
    },
}

impl MemberOutcome {
    pub fn certificate(&self) -> Option<&MembershipCertificate> {
        match self {
            MemberOutcome::Member(c) => Some(c),
            MemberOutcome::NotMember { .. } => None,
        }
    }

    pub fn is_member(&self) -> bool {
        self.certificate().is_some()
    }
}

/// The factored coefficient matrix for one degree bound. Row `r` holds the
/// coefficients of `x^r`, multiplied by `t^{-shift_r}`.
pub(crate) struct MemberSystem {
    monomials: Vec<Monomial>,
    shifts: Vec<Option<i64>>,
    depth: i64,
    fact: DvrFactorization,
}

/// Exponent vectors `a` with `sum a_j d_j <= bound`.
fn enumerate_monomials(degrees: &[u32], bound: u32, cap: usize) -> Result<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    let mut current = vec![0u32; degrees.len()];
    fn rec(j: usize, left: u32, degrees: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>, cap: usize) -> bool {
        if j == degrees.len() {
            out.push(cur.clone());
            return out.len() <= cap;
        }
        let d = degrees[j].max(1);
        let mut a = 0;
        loop {
            cur[j] = a;
            if !rec(j + 1, left - a * d, degrees, cur, out, cap) {
                return false;
            }
            if (a + 1) * d > left || degrees[j] == 0 {
                break;
            }
            a += 1;
        }
        cur[j] = 0;
        true
    }
    if !rec(0, bound, degrees, &mut current, &mut out, cap) {
        return Err(Error::BoundExceeded(format!("more than {cap} monomials of degree at most {bound}")));
    }
    Ok(out)
}

impl Curve {
    fn system(&self, bound: u32, bounds: &MemberBounds) -> Result<Arc<MemberSystem>> {
        let exps = enumerate_monomials(self.alpha_degrees(), bound, bounds.max_monomials)?;
        let cached = self.systems.lock().unwrap().get(&bound).cloned();
        let sys = match cached {
            Some(s) => s,
            None => {
                let s = Arc::new(self.build_system(bound, &exps));
                self.systems.lock().unwrap().insert(bound, s.clone());
                s
            }
        };
        if sys.depth > bounds.max_certificate_valuation {
            return Err(Error::BoundExceeded(format!(
                "denominators t^{} exceed the valuation bound {}",
                sys.depth, bounds.max_certificate_valuation
            )));
        }
        Ok(sys)
    }

    fn build_system(&self, bound: u32, exps: &[Vec<u32>]) -> MemberSystem {
        let config = self.config();
        let f = self.data.field();
        let x = Namespace::x();
        let mut powers: Vec<Vec<KPoly>> = self.alphas.iter().map(|_| vec![MultiPoly::one(f, x.clone())]).collect();
        let rows = bound as usize + 1;
        let mut entries: Vec<Vec<DvrElement>> = Vec::with_capacity(exps.len());
        for a in exps {
            let mut value = MultiPoly::one(f, x.clone());
            for (j, &e) in a.iter().enumerate() {
                while powers[j].len() <= e as usize {
                    let next = powers[j].last().unwrap() * &self.alphas[j];
                    powers[j].push(next);
                }
                if e > 0 {
                    value = &value * &powers[j][e as usize];
                }
            }
            let mut col = vec![DvrElement::zero(config); rows];
            for (m, c) in value.terms() {
                col[m.degree_in(0) as usize] = c.clone();
            }
            entries.push(col);
        }
        let shifts: Vec<Option<i64>> =
            (0..rows).map(|r| entries.iter().map(|col| col[r].valuation()).min().and_then(Valuation::finite)).collect();
        let depth = shifts.iter().flatten().map(|s| -s).max().unwrap_or(0).max(0);
        let mut matrix = DvrMatrix::zeros(config, rows, exps.len());
        for (j, col) in entries.iter().enumerate() {
            for (r, e) in col.iter().enumerate() {
                if let (false, Some(s)) = (e.is_zero(), shifts[r]) {
                    matrix.set(r, j, e * &DvrElement::t_pow(config, -s)).expect("scaled entries lie in O");
                }
            }
        }
        let monomials = exps.iter().map(|a| Monomial::from_exponents(a)).collect();
        MemberSystem { monomials, shifts, depth, fact: DvrFactorization::new(&matrix) }
    }

    fn solve_at(&self, g: &KPoly, bound: u32, bounds: &MemberBounds) -> Result<MemberOutcome> {
        let config = self.config();
        let sys = self.system(bound, bounds)?;
        let mut b = vec![DvrElement::zero(config); sys.shifts.len()];
        for (m, c) in g.terms() {
            let r = m.degree_in(0) as usize;
            match sys.shifts[r] {
                None => return Ok(MemberOutcome::NotMember { bound, blocking_power: r, gap: None }),
                Some(s) => {
                    let scaled = c * &DvrElement::t_pow(config, -s);
                    if let Valuation::Finite(v) = scaled.valuation() {
                        if v < 0 {
                            return Ok(MemberOutcome::NotMember { bound, blocking_power: r, gap: Some(-v) });
                        }
                    }
                    b[r] = scaled;
                }
            }
        }
        match sys.fact.solve(&b)? {
            SolveOutcome::NoSolution { row, gap } => Ok(MemberOutcome::NotMember { bound, blocking_power: row, gap }),
            SolveOutcome::Solution(coeffs) => {
                let ns = Namespace::presentation(self.alphas.len());
                let p = MultiPoly::from_terms(self.data.field(), ns, sys.monomials.iter().cloned().zip(coeffs));
                let back = self.evaluate(&p)?;
                assert!(back == *g, "membership certificate failed to re-substitute");
                Ok(MemberOutcome::Member(MembershipCertificate { p, g: g.clone(), degree_bound: bound }))
            }
        }
    }

    /// Decides `g ∈ B` relative to the degree bound, deepening through three
    /// levels up to the bound.
    pub fn member(&self, g: &KPoly, bounds: &MemberBounds) -> Result<MemberOutcome> {
        if *g.namespace() != Namespace::x() {
            return Err(Error::NamespaceMismatch {
                left: Namespace::x().to_string(),
                right: g.namespace().to_string(),
            });
        }
        if g.ring().config() != self.config() {
            return Err(Error::ConfigMismatch);
        }
        let deg = g.total_degree().unwrap_or(0);
        let max = bounds.max_monomial_degree.unwrap_or(2 * deg + 4).max(deg);
        let mut levels = vec![deg, (deg + max) / 2, max];
        levels.dedup();
        let mut last = None;
        for level in levels {
            let out = self.solve_at(g, level, bounds)?;
            if out.is_member() {
                return Ok(out);
            }
            last = Some(out);
        }
        Ok(last.unwrap())
    }

    /// Checks a certificate independently of how it was produced.
    pub fn check_certificate(&self, cert: &MembershipCertificate) -> Result<bool> {
        Ok(cert.p.is_integral() && self.evaluate(&cert.p)? == cert.g)
    }
}
