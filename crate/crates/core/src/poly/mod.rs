//! Sparse multivariate polynomials over any coefficient ring, with a
//! deterministic text form and a parser for it.

mod monomial;
mod parse;
pub mod univariate;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

pub use monomial::Monomial;
pub use parse::{parse_coeff, parse_poly};

use crate::coefficients::{FormatCoeff, FractionField, Ring, Valuation};
use crate::error::{Error, Result};

/// An ordered list of variable names. Variable `i` outranks variable `j` in
/// the term order when `i > j`.
#[derive(Clone, Debug, Eq)]
pub struct Namespace(Arc<[String]>);

impl PartialEq for Namespace {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Namespace {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        Namespace(names.into_iter().map(Into::into).collect())
    }

    /// The single affine coordinate `x` of K[x].
    pub fn x() -> Self {
        Self::new(["x"])
    }

    /// `x1, ..., xn`.
    pub fn xs(n: usize) -> Self {
        Self::new((1..=n).map(|i| format!("x{i}")))
    }

    /// Presentation variables `T1, ..., Tn`.
    pub fn presentation(n: usize) -> Self {
        Self::new((1..=n).map(|i| format!("T{i}")))
    }

    /// `x` together with the group parameter `T`.
    pub fn x_series() -> Self {
        Self::new(["x", "T"])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    /// The namespace with variable `v` removed.
    pub fn without(&self, v: usize) -> Self {
        Self::new(self.0.iter().enumerate().filter(|(i, _)| *i != v).map(|(_, n)| n.clone()))
    }
}

impl fmt::Display for Namespace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.join(", "))
    }
}

/// A polynomial with coefficients in `R` over the variables of a namespace.
/// Terms with zero coefficients are never stored, so structural equality is
/// polynomial equality.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiPoly<R: Ring> {
    ring: R,
    ns: Namespace,
    terms: BTreeMap<Monomial, R::Elem>,
}

impl<R: Ring> MultiPoly<R> {
    pub fn zero(ring: R, ns: Namespace) -> Self {
        MultiPoly { ring, ns, terms: BTreeMap::new() }
    }

    pub fn constant(ring: R, ns: Namespace, c: R::Elem) -> Self {
        Self::monomial(ring, ns, Monomial::one(), c)
    }

    pub fn one(ring: R, ns: Namespace) -> Self {
        let one = ring.one();
        Self::constant(ring, ns, one)
    }

    pub fn var(ring: R, ns: Namespace, v: usize) -> Self {
        assert!(v < ns.len(), "variable index {v} outside {ns}");
        let one = ring.one();
        Self::monomial(ring, ns, Monomial::var(v), one)
    }

    pub fn monomial(ring: R, ns: Namespace, m: Monomial, c: R::Elem) -> Self {
        let mut terms = BTreeMap::new();
        if !ring.is_zero(&c) {
            terms.insert(m, c);
        }
        MultiPoly { ring, ns, terms }
    }

    pub fn from_terms(ring: R, ns: Namespace, terms: impl IntoIterator<Item = (Monomial, R::Elem)>) -> Self {
        let mut p = Self::zero(ring, ns);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn namespace(&self) -> &Namespace {
        &self.ns
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending term order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &R::Elem)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> R::Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &R::Elem)> {
        self.terms.iter().next_back()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    pub fn leading_coefficient(&self) -> Option<&R::Elem> {
        self.terms.values().next_back()
    }

    /// Total degree, `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.leading_monomial().map(Monomial::total_degree)
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.degree_in(v)).max().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value when the polynomial is constant.
    pub fn constant_value(&self) -> Option<R::Elem> {
        self.is_constant().then(|| self.coefficient(&Monomial::one()))
    }

    /// Whether only variables with index `< n` occur.
    pub fn uses_only_first(&self, n: usize) -> bool {
        self.terms.keys().all(|m| m.max_var().is_none_or(|v| v < n))
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: R::Elem) {
        if self.ring.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = self.ring.add(existing, &c);
                if self.ring.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_ns(&self, other: &Self) -> Result<()> {
        if self.ns != other.ns {
            return Err(Error::NamespaceMismatch { left: self.ns.to_string(), right: other.ns.to_string() });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ns(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_ns(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), self.ring.neg(c));
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ns(other)?;
        let mut out = Self::zero(self.ring.clone(), self.ns.clone());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), self.ring.mul(c1, c2));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        if self.ring.is_zero(c) {
            return Self::zero(self.ring.clone(), self.ns.clone());
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, a)| (m.clone(), self.ring.mul(a, c)))
            .filter(|(_, a)| !self.ring.is_zero(a))
            .collect();
        MultiPoly { ring: self.ring.clone(), ns: self.ns.clone(), terms }
    }

    pub fn mul_term(&self, m: &Monomial, c: &R::Elem) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(mm, a)| (mm.mul(m), self.ring.mul(a, c)))
            .filter(|(_, a)| !self.ring.is_zero(a))
            .collect();
        MultiPoly { ring: self.ring.clone(), ns: self.ns.clone(), terms }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.ring.clone(), self.ns.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to variable `v`.
    pub fn partial_derivative(&self, v: usize) -> Self {
        let mut out = Self::zero(self.ring.clone(), self.ns.clone());
        for (m, c) in &self.terms {
            let e = m.degree_in(v);
            if e == 0 {
                continue;
            }
            let reduced = Monomial::var(v).quotient_of(m).unwrap();
            out.add_term(reduced, self.ring.mul(c, &self.ring.from_i64(e as i64)));
        }
        out
    }

    /// Composition: variable `i` is replaced by `assignment[i]`, all of which
    /// live in `target`.
    pub fn substitute(&self, target: &Namespace, assignment: &[MultiPoly<R>]) -> Result<Self> {
        if assignment.len() != self.ns.len() {
            return Err(Error::DimensionMismatch(format!(
                "substitution for {} needs {} polynomials, got {}",
                self.ns,
                self.ns.len(),
                assignment.len()
            )));
        }
        for a in assignment {
            if a.ns != *target {
                return Err(Error::NamespaceMismatch { left: target.to_string(), right: a.ns.to_string() });
            }
        }
        let mut powers: Vec<Vec<MultiPoly<R>>> =
            vec![vec![Self::one(self.ring.clone(), target.clone())]; assignment.len()];
        let mut out = Self::zero(self.ring.clone(), target.clone());
        for (m, c) in &self.terms {
            let mut term = Self::constant(self.ring.clone(), target.clone(), c.clone());
            for (v, e) in m.iter() {
                let cache = &mut powers[v];
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap() * &assignment[v];
                    cache.push(next);
                }
                term = &term * &cache[e as usize];
            }
            for (tm, tc) in term.terms {
                out.add_term(tm, tc);
            }
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[R::Elem]) -> R::Elem {
        let mut acc = self.ring.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.iter() {
                t = self.ring.mul(&t, &self.ring.pow(&point[v], e as u64));
            }
            acc = self.ring.add(&acc, &t);
        }
        acc
    }

    /// Applies `f` to every coefficient, landing in another ring.
    pub fn map_coeffs<S: Ring>(&self, ring: S, f: impl Fn(&R::Elem) -> S::Elem) -> MultiPoly<S> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let d = f(c);
            if !ring.is_zero(&d) {
                terms.insert(m.clone(), d);
            }
        }
        MultiPoly { ring, ns: self.ns.clone(), terms }
    }

    /// Fallible variant of [`map_coeffs`](Self::map_coeffs).
    pub fn try_map_coeffs<S: Ring, E>(
        &self,
        ring: S,
        f: impl Fn(&R::Elem) -> std::result::Result<S::Elem, E>,
    ) -> std::result::Result<MultiPoly<S>, E> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let d = f(c)?;
            if !ring.is_zero(&d) {
                terms.insert(m.clone(), d);
            }
        }
        Ok(MultiPoly { ring, ns: self.ns.clone(), terms })
    }

    /// Renames variables: variable `i` becomes `var_map[i]` of `target`.
    pub fn embed(&self, target: &Namespace, var_map: &[usize]) -> Self {
        assert_eq!(var_map.len(), self.ns.len());
        let mut out = Self::zero(self.ring.clone(), target.clone());
        for (m, c) in &self.terms {
            out.add_term(m.remap(var_map), c.clone());
        }
        out
    }

    /// Writes the polynomial as `sum_j c_j * v^j` and returns the `c_j`,
    /// which live in the namespace with `v` removed.
    pub fn coefficients_in(&self, v: usize) -> Vec<Self> {
        let target = self.ns.without(v);
        let deg = self.degree_in(v) as usize;
        let mut out = vec![Self::zero(self.ring.clone(), target); deg + 1];
        if self.is_zero() {
            return Vec::new();
        }
        for (m, c) in &self.terms {
            let j = m.degree_in(v) as usize;
            out[j].add_term(m.remove_var(v), c.clone());
        }
        out
    }

    /// Dense coefficient vector in variable `v`, when no other variable occurs.
    pub fn to_dense(&self, v: usize) -> Option<Vec<R::Elem>> {
        if self.terms.keys().any(|m| m.iter().any(|(w, _)| w != v)) {
            return None;
        }
        let mut out = vec![self.ring.zero(); self.degree_in(v) as usize + usize::from(!self.is_zero())];
        for (m, c) in &self.terms {
            out[m.degree_in(v) as usize] = c.clone();
        }
        Some(out)
    }

    pub fn from_dense(ring: R, ns: Namespace, v: usize, coeffs: &[R::Elem]) -> Self {
        Self::from_terms(ring, ns, coeffs.iter().enumerate().map(|(j, c)| (Monomial::var_pow(v, j as u32), c.clone())))
    }

    /// Drops all terms whose degree in `v` exceeds `max`.
    pub fn truncate_in(&self, v: usize, max: u32) -> Self {
        let terms =
            self.terms.iter().filter(|(m, _)| m.degree_in(v) <= max).map(|(m, c)| (m.clone(), c.clone())).collect();
        MultiPoly { ring: self.ring.clone(), ns: self.ns.clone(), terms }
    }
}

impl MultiPoly<FractionField> {
    /// Minimum valuation over the coefficients; `Infinite` for zero. A
    /// polynomial lies in O[vars] iff this is nonnegative.
    pub fn content_valuation(&self) -> Valuation {
        self.terms.values().map(|c| c.valuation()).min().unwrap_or(Valuation::Infinite)
    }

    pub fn is_integral(&self) -> bool {
        self.content_valuation() >= Valuation::Finite(0)
    }
}

impl<R: FormatCoeff> fmt::Display for MultiPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let text = self.ring.format_coeff(c);
            match (i, text.negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mono = format_monomial(&self.ns, m);
            if mono.is_empty() {
                f.write_str(&text.body)?;
            } else if text.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{}*{}", text.body, mono)?;
            }
        }
        Ok(())
    }
}

fn format_monomial(ns: &Namespace, m: &Monomial) -> String {
    m.iter()
        .map(|(v, e)| if e == 1 { ns.name(v).to_string() } else { format!("{}^{}", ns.name(v), e) })
        .collect::<Vec<_>>()
        .join("*")
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a, R: Ring> $tr<&'a MultiPoly<R>> for &'a MultiPoly<R> {
            type Output = MultiPoly<R>;
            fn $method(self, rhs: &MultiPoly<R>) -> MultiPoly<R> {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl<R: Ring> $tr<MultiPoly<R>> for MultiPoly<R> {
            type Output = MultiPoly<R>;
            fn $method(self, rhs: MultiPoly<R>) -> MultiPoly<R> {
                self.$checked(&rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl<R: Ring> Neg for &MultiPoly<R> {
    type Output = MultiPoly<R>;
    fn neg(self) -> MultiPoly<R> {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), self.ring.neg(c))).collect();
        MultiPoly { ring: self.ring.clone(), ns: self.ns.clone(), terms }
    }
}

impl<R: Ring> Neg for MultiPoly<R> {
    type Output = MultiPoly<R>;
    fn neg(self) -> MultiPoly<R> {
        -&self
    }
}
