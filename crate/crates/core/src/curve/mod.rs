//! Triangular curve data over O: the alpha generators of B inside K[x], the
//! presentation ideal, verification of the conditions on the special fiber,
//! the tower of affine modifications, and membership in B.

mod member;
mod saturation;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

pub use member::{MemberBounds, MemberOutcome, MembershipCertificate};
pub use saturation::{saturation_sample_check, SaturationVerdict};

use crate::coefficients::{CoeffConfig, DvrElement, FractionField, ResidueField, Ring};
use crate::error::{Error, Result};
use crate::groebner::{self, GroebnerBasis};
use crate::poly::{parse_poly, MultiPoly, Namespace};

pub type KPoly = MultiPoly<FractionField>;
pub type ResPoly = MultiPoly<ResidueField>;

/// Reduction of a polynomial with coefficients in O modulo t.
pub fn reduce_mod_t(p: &KPoly) -> Result<ResPoly> {
    let k = ResidueField::of(p.ring().config());
    p.try_map_coeffs(k, |c| c.residue())
}

/// Coefficientwise lift of a residue polynomial to O.
pub fn lift_from_residue(p: &ResPoly, config: CoeffConfig) -> KPoly {
    p.map_coeffs(FractionField::new(config), |c| DvrElement::lift_residue(config, c))
}

/// `(config, n, f_1..f_n)` with `f_i` in `O[x_1..x_i]` of positive degree
/// in `x_i`. All `f_i` live in the namespace `x1..xn`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveData {
    config: CoeffConfig,
    f: Vec<KPoly>,
}

impl CurveData {
    pub fn new(config: CoeffConfig, f: Vec<KPoly>) -> Result<Self> {
        config.validate()?;
        let n = f.len();
        let ns = Namespace::xs(n);
        for (i, fi) in f.iter().enumerate() {
            let name = format!("f{}", i + 1);
            if *fi.namespace() != ns {
                return Err(Error::InvalidCurve(format!("{name} must be written in the variables {ns}")));
            }
            if fi.ring().config() != config {
                return Err(Error::ConfigMismatch);
            }
            if !fi.uses_only_first(i + 1) {
                return Err(Error::InvalidCurve(format!("{name} may only involve x1..x{}", i + 1)));
            }
            if !fi.is_integral() {
                return Err(Error::InvalidCurve(format!("{name} has a coefficient outside O")));
            }
            if fi.degree_in(i) == 0 {
                return Err(Error::InvalidCurve(format!("{name} must have positive degree in x{}", i + 1)));
            }
        }
        Ok(CurveData { config, f })
    }

    /// Parses `f_i` from text in the variables `x1..xn`.
    pub fn parse(config: CoeffConfig, f: &[&str]) -> Result<Self> {
        let ns = Namespace::xs(f.len());
        let polys = f.iter().map(|s| parse_poly(s, &ns, config)).collect::<Result<Vec<_>>>()?;
        Self::new(config, polys)
    }

    pub fn config(&self) -> CoeffConfig {
        self.config
    }

    pub fn n(&self) -> usize {
        self.f.len()
    }

    pub fn f(&self) -> &[KPoly] {
        &self.f
    }

    pub fn field(&self) -> FractionField {
        FractionField::new(self.config)
    }
}

/// `alpha_1 = x` and `alpha_{i+1} = f_i(alpha_1, .., alpha_i) / t`, all in K[x].
pub fn build_alphas(data: &CurveData) -> Vec<KPoly> {
    let f = data.field();
    let x = Namespace::x();
    let n = data.n();
    let zero = MultiPoly::zero(f, x.clone());
    let t_inv = DvrElement::t_pow(data.config, -1);
    let mut alphas = vec![MultiPoly::var(f, x.clone(), 0)];
    for fi in &data.f {
        let mut assignment = alphas.clone();
        assignment.resize(n, zero.clone());
        let next = fi.substitute(&x, &assignment).expect("assignment matches the namespace");
        alphas.push(next.scale(&t_inv));
    }
    alphas
}

/// Generators `t*T_{i+1} - f_i(T_1..T_i)` in `O[T_1..T_{n+1}]`.
#[derive(Clone, Debug, PartialEq)]
pub struct PresentationIdeal {
    pub ns: Namespace,
    pub gens: Vec<KPoly>,
}

pub fn presentation(data: &CurveData) -> PresentationIdeal {
    let n = data.n();
    let f = data.field();
    let ns = Namespace::presentation(n + 1);
    let embed: Vec<usize> = (0..n).collect();
    let gens = data
        .f
        .iter()
        .enumerate()
        .map(|(i, fi)| {
            let t_next = MultiPoly::var(f, ns.clone(), i + 1).scale(&f.uniformizer());
            &t_next - &fi.embed(&ns, &embed)
        })
        .collect();
    PresentationIdeal { ns, gens }
}

impl PresentationIdeal {
    /// Every generator vanishes under `T_j -> alpha_j`.
    pub fn maps_to_zero(&self, alphas: &[KPoly]) -> bool {
        self.gens.iter().all(|g| g.substitute(&Namespace::x(), alphas).is_ok_and(|v| v.is_zero()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct JacobianVerdict {
    /// `d fbar_i / d x_i` in `k[x_1..x_n]`.
    pub derivative: ResPoly,
    pub unit: bool,
    /// Inverse modulo `(fbar)`, reduced.
    pub inverse: Option<ResPoly>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConditionsReport {
    pub reduced: Vec<ResPoly>,
    pub basis: GroebnerBasis<ResidueField>,
    pub zero_dimensional: bool,
    pub quotient_dimension: Option<usize>,
    pub standard_monomials: Vec<ResPoly>,
    /// `None` when the ideal is not zero-dimensional.
    pub radical: Option<bool>,
    pub eliminants: Vec<ResPoly>,
    pub jacobian_units: Vec<JacobianVerdict>,
}

impl ConditionsReport {
    pub fn all_hold(&self) -> bool {
        self.zero_dimensional && self.radical == Some(true) && self.jacobian_units.iter().all(|j| j.unit)
    }
}

/// Checks that `(t, f_1..f_n)` is zero-dimensional and radical and that each
/// `d f_i / d x_i` is a unit modulo it.
pub fn verify_conditions(data: &CurveData) -> ConditionsReport {
    let n = data.n();
    let ns = Namespace::xs(n);
    let k = ResidueField::of(data.config);
    let reduced: Vec<ResPoly> =
        data.f.iter().map(|fi| reduce_mod_t(fi).expect("curve coefficients lie in O")).collect();
    let basis = groebner::buchberger(&k, &ns, &reduced);
    let (zero_dimensional, desc) = groebner::is_zero_dimensional(&basis);
    let standard_monomials = desc
        .as_ref()
        .map(|d| d.standard_monomials.iter().map(|m| MultiPoly::monomial(k, ns.clone(), m.clone(), k.one())).collect())
        .unwrap_or_default();
    let (radical, eliminants) = match groebner::is_radical_zero_dim(&basis) {
        Ok(v) => (Some(v.radical), v.eliminants),
        Err(_) => (None, Vec::new()),
    };
    let jacobian_units = reduced
        .iter()
        .enumerate()
        .map(|(i, fi)| {
            let derivative = fi.partial_derivative(i);
            let v = groebner::is_unit_in_quotient(&derivative, &basis);
            JacobianVerdict { derivative, unit: v.unit, inverse: v.inverse }
        })
        .collect();
    ConditionsReport {
        reduced,
        basis,
        zero_dimensional,
        quotient_dimension: desc.map(|d| d.dimension),
        standard_monomials,
        radical,
        eliminants,
        jacobian_units,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpecialFiberReport {
    /// `dim_k k[T_1..T_n]/(fbar)`.
    pub dimension: Option<usize>,
    /// Standard monomials in `T_1..T_n`.
    pub standard_monomials: Vec<String>,
    pub reduced: bool,
}

/// The special fiber `k[T_1..T_{n+1}]/(fbar)`: finitely many lines.
pub fn special_fiber(report: &ConditionsReport) -> SpecialFiberReport {
    let n = report.reduced.len();
    let names = Namespace::presentation(n);
    let standard_monomials =
        report.standard_monomials.iter().map(|m| m.embed(&names, &(0..n).collect::<Vec<_>>()).to_string()).collect();
    SpecialFiberReport {
        dimension: report.quotient_dimension,
        standard_monomials,
        reduced: report.radical == Some(true),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TowerStep {
    /// `B_i = O[x_1..x_i]`.
    pub ring_generators: Vec<String>,
    /// `I_i = (t, f_1..f_i)`; absent for the last ring.
    pub ideal: Option<Vec<String>>,
}

/// `B_1 = O[x_1] ⊂ ... ⊂ B_{n+1}` with `B_{i+1} = B_i[t^{-1} I_i]`.
pub fn tower_report(data: &CurveData) -> Vec<TowerStep> {
    let n = data.n();
    (1..=n + 1)
        .map(|i| {
            let ring_generators = (1..=i).map(|j| format!("x{j}")).collect();
            let ideal = (i <= n).then(|| {
                let ns = Namespace::xs(i);
                let mut gens = vec!["t".to_string()];
                for fj in &data.f[..i] {
                    // f_j only involves x_1..x_j, so dropping later variables is exact
                    let shrunk =
                        MultiPoly::from_terms(*fj.ring(), ns.clone(), fj.terms().map(|(m, c)| (m.clone(), c.clone())));
                    gens.push(shrunk.to_string());
                }
                gens
            });
            TowerStep { ring_generators, ideal }
        })
        .collect()
}

/// A curve with its alpha generators and a cache of membership systems.
pub struct Curve {
    data: CurveData,
    alphas: Vec<KPoly>,
    degrees: Vec<u32>,
    systems: Mutex<HashMap<u32, Arc<member::MemberSystem>>>,
}

impl Curve {
    pub fn new(data: CurveData) -> Self {
        let alphas = build_alphas(&data);
        let degrees = alphas.iter().map(|a| a.degree_in(0)).collect();
        Curve { data, alphas, degrees, systems: Mutex::new(HashMap::new()) }
    }

    pub fn data(&self) -> &CurveData {
        &self.data
    }

    pub fn config(&self) -> CoeffConfig {
        self.data.config
    }

    pub fn alphas(&self) -> &[KPoly] {
        &self.alphas
    }

    /// `deg_x alpha_i`.
    pub fn alpha_degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// `deg alpha_{i+1} >= deg alpha_i` whenever `deg_{x_i} f_i >= 2`.
    pub fn degrees_monotone(&self) -> bool {
        self.data.f.iter().enumerate().all(|(i, fi)| fi.degree_in(i) < 2 || self.degrees[i + 1] >= self.degrees[i])
    }

    /// Evaluates a polynomial in `T_1..T_{n+1}` at the alphas.
    pub fn evaluate(&self, p: &KPoly) -> Result<KPoly> {
        p.substitute(&Namespace::x(), &self.alphas)
    }
}

impl Clone for Curve {
    fn clone(&self) -> Self {
        Curve::new(self.data.clone())
    }
}

impl std::fmt::Debug for Curve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Curve").field("data", &self.data).field("alphas", &self.alphas).finish()
    }
}

#[cfg(test)]
mod tests;
