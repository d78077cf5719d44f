use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::dense::{self, Dense};
use super::residue::ResidueElement;
use super::ring::{format_rational, CoeffText, Field, FormatCoeff, PrimeField, Rationals, Ring};
use super::CoeffConfig;
use crate::error::{Error, Result};

/// The valuation of an element of K; zero has valuation `Infinite`, which
/// compares greater than every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

impl Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

/// An exact element of the fraction field K of one of the three valuation
/// ring models. Elements of O are those with nonnegative valuation.
///
/// Fractions are kept in lowest terms with a monic (polynomial models) or
/// positive (integer model) denominator, so structural equality is equality
/// in K.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DvrElement {
    repr: Repr,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Fp { p: u64, num: Vec<u64>, den: Vec<u64> },
    Q { num: Vec<BigRational>, den: Vec<BigRational> },
    Z { p: u64, value: BigRational },
}

fn normalize_frac<F: Field>(f: &F, num: Dense<F>, den: Dense<F>) -> (Dense<F>, Dense<F>) {
    assert!(!den.is_empty(), "zero denominator");
    if num.is_empty() {
        return (Vec::new(), vec![f.one()]);
    }
    let (num, den) = if den.len() == 1 {
        (num, den)
    } else {
        let g = dense::gcd(f, &num, &den);
        if g.len() > 1 {
            (dense::divrem(f, &num, &g).0, dense::divrem(f, &den, &g).0)
        } else {
            (num, den)
        }
    };
    let lc = den.last().unwrap();
    if f.is_one(lc) {
        (num, den)
    } else {
        let inv = f.inv(lc).unwrap();
        (dense::scale(f, &num, &inv), dense::scale(f, &den, &inv))
    }
}

fn frac_add<F: Field>(
    f: &F,
    (n1, d1): (&[F::Elem], &[F::Elem]),
    (n2, d2): (&[F::Elem], &[F::Elem]),
) -> (Dense<F>, Dense<F>) {
    if d1 == d2 {
        if d1.len() == 1 {
            return (dense::add(f, n1, n2), d1.to_vec());
        }
        return normalize_frac(f, dense::add(f, n1, n2), d1.to_vec());
    }
    // with g = gcd(d1, d2), only factors of g can cancel from the sum
    let g = dense::gcd(f, d1, d2);
    if g.len() == 1 {
        let num = dense::add(f, &dense::mul(f, n1, d2), &dense::mul(f, n2, d1));
        return reduced_frac(f, num, dense::mul(f, d1, d2));
    }
    let (e1, e2) = (dense::divrem(f, d1, &g).0, dense::divrem(f, d2, &g).0);
    let num = dense::add(f, &dense::mul(f, n1, &e2), &dense::mul(f, n2, &e1));
    normalize_frac(f, num, dense::mul(f, &dense::mul(f, &e1, &e2), &g))
}

fn frac_mul<F: Field>(
    f: &F,
    (n1, d1): (&[F::Elem], &[F::Elem]),
    (n2, d2): (&[F::Elem], &[F::Elem]),
) -> (Dense<F>, Dense<F>) {
    if d1.len() == 1 && d2.len() == 1 {
        return (dense::mul(f, n1, n2), vec![f.one()]);
    }
    if n1.is_empty() || n2.is_empty() {
        return (Vec::new(), vec![f.one()]);
    }
    // cross-cancel: both inputs are reduced, so the product of the reduced
    // pieces is reduced
    let cancel = |n: &[F::Elem], d: &[F::Elem]| {
        let g = dense::gcd(f, n, d);
        if g.len() == 1 {
            (n.to_vec(), d.to_vec())
        } else {
            (dense::divrem(f, n, &g).0, dense::divrem(f, d, &g).0)
        }
    };
    let (a1, b2) = cancel(n1, d2);
    let (a2, b1) = cancel(n2, d1);
    reduced_frac(f, dense::mul(f, &a1, &a2), dense::mul(f, &b1, &b2))
}

/// Scales an already coprime fraction to a monic denominator.
fn reduced_frac<F: Field>(f: &F, num: Dense<F>, den: Dense<F>) -> (Dense<F>, Dense<F>) {
    if num.is_empty() {
        return (Vec::new(), vec![f.one()]);
    }
    let lc = den.last().unwrap();
    if f.is_one(lc) {
        (num, den)
    } else {
        let inv = f.inv(lc).unwrap();
        (dense::scale(f, &num, &inv), dense::scale(f, &den, &inv))
    }
}

fn frac_valuation<F: Ring>(f: &F, num: &[F::Elem], den: &[F::Elem]) -> Valuation {
    match dense::low_order(f, num) {
        None => Valuation::Infinite,
        Some(a) => Valuation::Finite(a as i64 - dense::low_order(f, den).unwrap() as i64),
    }
}

fn p_adic_order(n: &BigInt, p: u64) -> i64 {
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut k = 0;
    while !n.is_zero() && n.is_multiple_of(&p) {
        n /= &p;
        k += 1;
    }
    k
}

fn t_pow_dense<F: Ring>(f: &F, k: usize) -> Dense<F> {
    let mut v = vec![f.zero(); k];
    v.push(f.one());
    v
}

impl DvrElement {
    fn fp(p: u64, num: Vec<u64>, den: Vec<u64>) -> Self {
        let (num, den) = normalize_frac(&PrimeField::new(p), num, den);
        DvrElement { repr: Repr::Fp { p, num, den } }
    }

    fn q(num: Vec<BigRational>, den: Vec<BigRational>) -> Self {
        let (num, den) = normalize_frac(&Rationals, num, den);
        DvrElement { repr: Repr::Q { num, den } }
    }

    fn z(p: u64, value: BigRational) -> Self {
        DvrElement { repr: Repr::Z { p, value } }
    }

    pub fn config(&self) -> CoeffConfig {
        match &self.repr {
            Repr::Fp { p, .. } => CoeffConfig::EquicharP { p: *p },
            Repr::Q { .. } => CoeffConfig::Equichar0,
            Repr::Z { p, .. } => CoeffConfig::MixedChar { p: *p },
        }
    }

    pub fn zero(config: CoeffConfig) -> Self {
        Self::from_bigint(config, &BigInt::zero())
    }

    pub fn one(config: CoeffConfig) -> Self {
        Self::from_bigint(config, &BigInt::one())
    }

    pub fn from_int(config: CoeffConfig, n: i64) -> Self {
        Self::from_bigint(config, &BigInt::from(n))
    }

    pub fn from_bigint(config: CoeffConfig, n: &BigInt) -> Self {
        match config {
            CoeffConfig::EquicharP { p } => {
                let f = PrimeField::new(p);
                Self::fp(p, dense::constant(&f, f.from_bigint(n)), vec![1])
            }
            CoeffConfig::Equichar0 => {
                Self::q(dense::constant(&Rationals, Rationals.from_bigint(n)), vec![BigRational::one()])
            }
            CoeffConfig::MixedChar { p } => Self::z(p, BigRational::from_integer(n.clone())),
        }
    }

    /// A rational number viewed in K. Fails when the denominator vanishes in
    /// the model (a multiple of `p` in characteristic `p`).
    pub fn from_rational(config: CoeffConfig, q: &BigRational) -> Result<Self> {
        let num = Self::from_bigint(config, q.numer());
        let den = Self::from_bigint(config, q.denom());
        num.div(&den)
    }

    /// The chosen uniformizer `t` (equal to `p` in the mixed model).
    pub fn uniformizer(config: CoeffConfig) -> Self {
        Self::t_pow(config, 1)
    }

    /// `t^k` for any integer `k`.
    pub fn t_pow(config: CoeffConfig, k: i64) -> Self {
        let m = k.unsigned_abs() as usize;
        match config {
            CoeffConfig::EquicharP { p } => {
                let f = PrimeField::new(p);
                if k >= 0 {
                    Self::fp(p, t_pow_dense(&f, m), vec![1])
                } else {
                    Self::fp(p, vec![1], t_pow_dense(&f, m))
                }
            }
            CoeffConfig::Equichar0 => {
                if k >= 0 {
                    Self::q(t_pow_dense(&Rationals, m), vec![BigRational::one()])
                } else {
                    Self::q(vec![BigRational::one()], t_pow_dense(&Rationals, m))
                }
            }
            CoeffConfig::MixedChar { p } => {
                let pk = BigInt::from(p).pow(m as u32);
                let v = if k >= 0 { BigRational::from_integer(pk) } else { BigRational::new(BigInt::one(), pk) };
                Self::z(p, v)
            }
        }
    }

    /// A polynomial in `t` with coefficients given as integers, little-endian.
    pub fn from_t_poly(config: CoeffConfig, coeffs: &[i64]) -> Self {
        let t = Self::uniformizer(config);
        let mut acc = Self::zero(config);
        for c in coeffs.iter().rev() {
            acc = &(&acc * &t) + &Self::from_int(config, *c);
        }
        acc
    }

    /// Constant lift of a residue: F_p values map to their representative in
    /// `0..p`, rationals to themselves.
    pub fn lift_residue(config: CoeffConfig, r: &ResidueElement) -> Self {
        match r {
            ResidueElement::Fp { value, .. } => Self::from_int(config, *value as i64),
            ResidueElement::Q(q) => Self::from_rational(config, q).expect("rational lift"),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Fp { num, .. } => num.is_empty(),
            Repr::Q { num, .. } => num.is_empty(),
            Repr::Z { value, .. } => value.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one(self.config())
    }

    pub fn valuation(&self) -> Valuation {
        match &self.repr {
            Repr::Fp { p, num, den } => frac_valuation(&PrimeField::new(*p), num, den),
            Repr::Q { num, den } => frac_valuation(&Rationals, num, den),
            Repr::Z { p, value } => {
                if value.is_zero() {
                    Valuation::Infinite
                } else {
                    Valuation::Finite(p_adic_order(value.numer(), *p) - p_adic_order(value.denom(), *p))
                }
            }
        }
    }

    /// Whether the element lies in O.
    pub fn is_integral(&self) -> bool {
        self.valuation() >= Valuation::Finite(0)
    }

    pub fn is_unit_in_o(&self) -> bool {
        self.valuation() == Valuation::Finite(0)
    }

    /// Reduction modulo `t`.
    pub fn residue(&self) -> Result<ResidueElement> {
        match self.valuation() {
            Valuation::Infinite => Ok(ResidueElement::zero_for(self.config())),
            Valuation::Finite(v) if v < 0 => Err(Error::NegativeValuation(v)),
            Valuation::Finite(v) if v > 0 => Ok(ResidueElement::zero_for(self.config())),
            Valuation::Finite(_) => Ok(match &self.repr {
                Repr::Fp { p, num, den } => {
                    let f = PrimeField::new(*p);
                    ResidueElement::Fp { value: f.div(&num[0], &den[0]).unwrap(), p: *p }
                }
                Repr::Q { num, den } => ResidueElement::Q(&num[0] / &den[0]),
                Repr::Z { p, value } => {
                    let f = PrimeField::new(*p);
                    let n = f.from_bigint(value.numer());
                    let d = f.from_bigint(value.denom());
                    ResidueElement::Fp { value: f.div(&n, &d).unwrap(), p: *p }
                }
            }),
        }
    }

    /// Inverse in K.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDivision);
        }
        Ok(match &self.repr {
            Repr::Fp { p, num, den } => Self::fp(*p, den.clone(), num.clone()),
            Repr::Q { num, den } => Self::q(den.clone(), num.clone()),
            Repr::Z { p, value } => Self::z(*p, value.recip()),
        })
    }

    /// Inverse inside O; only units (valuation 0) qualify.
    pub fn invert_in_o(&self) -> Result<Self> {
        match self.valuation() {
            Valuation::Infinite => Err(Error::ZeroDivision),
            Valuation::Finite(0) => self.inv(),
            Valuation::Finite(v) => Err(Error::NotUnitInO(v)),
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let field = FractionField::new(self.config());
        Ok(field.pow(&base, e.unsigned_abs()))
    }

    /// `self / t^v` where `v` is the valuation; a unit of O. Zero maps to zero.
    pub fn unit_part(&self) -> Self {
        match self.valuation() {
            Valuation::Infinite => self.clone(),
            Valuation::Finite(v) => self * &Self::t_pow(self.config(), -v),
        }
    }

    /// `Some(k)` when the element equals `t^k` exactly.
    pub fn as_t_power(&self) -> Option<i64> {
        let v = self.valuation().finite()?;
        (*self == Self::t_pow(self.config(), v)).then_some(v)
    }

    fn zip<R>(
        &self,
        other: &Self,
        fp: impl FnOnce(u64, (&[u64], &[u64]), (&[u64], &[u64])) -> R,
        q: impl FnOnce((&[BigRational], &[BigRational]), (&[BigRational], &[BigRational])) -> R,
        z: impl FnOnce(u64, &BigRational, &BigRational) -> R,
    ) -> R {
        match (&self.repr, &other.repr) {
            (Repr::Fp { p, num: n1, den: d1 }, Repr::Fp { p: p2, num: n2, den: d2 }) if p == p2 => {
                fp(*p, (n1, d1), (n2, d2))
            }
            (Repr::Q { num: n1, den: d1 }, Repr::Q { num: n2, den: d2 }) => q((n1, d1), (n2, d2)),
            (Repr::Z { p, value: a }, Repr::Z { p: p2, value: b }) if p == p2 => z(*p, a, b),
            _ => panic!("arithmetic between different coefficient models"),
        }
    }

    fn add_impl(&self, other: &Self) -> Self {
        self.zip(
            other,
            |p, a, b| {
                let (n, d) = frac_add(&PrimeField::new(p), a, b);
                DvrElement { repr: Repr::Fp { p, num: n, den: d } }
            },
            |a, b| {
                let (n, d) = frac_add(&Rationals, a, b);
                DvrElement { repr: Repr::Q { num: n, den: d } }
            },
            |p, a, b| Self::z(p, a + b),
        )
    }

    fn mul_impl(&self, other: &Self) -> Self {
        self.zip(
            other,
            |p, a, b| {
                let (n, d) = frac_mul(&PrimeField::new(p), a, b);
                DvrElement { repr: Repr::Fp { p, num: n, den: d } }
            },
            |a, b| {
                let (n, d) = frac_mul(&Rationals, a, b);
                DvrElement { repr: Repr::Q { num: n, den: d } }
            },
            |p, a, b| Self::z(p, a * b),
        )
    }

    fn neg_impl(&self) -> Self {
        match &self.repr {
            Repr::Fp { p, num, den } => {
                DvrElement { repr: Repr::Fp { p: *p, num: dense::neg(&PrimeField::new(*p), num), den: den.clone() } }
            }
            Repr::Q { num, den } => DvrElement { repr: Repr::Q { num: dense::neg(&Rationals, num), den: den.clone() } },
            Repr::Z { p, value } => Self::z(*p, -value),
        }
    }

    /// Text form as sign plus a body usable as a multiplicative prefix.
    pub fn format(&self) -> CoeffText {
        match &self.repr {
            Repr::Fp { p, num, den } => format_frac(&PrimeField::new(*p), num, den),
            Repr::Q { num, den } => format_frac(&Rationals, num, den),
            Repr::Z { value, .. } => format_rational(value),
        }
    }
}

fn format_t_term(c: &CoeffText, k: usize) -> String {
    let tpart = match k {
        0 => String::new(),
        1 => "t".to_string(),
        _ => format!("t^{k}"),
    };
    if tpart.is_empty() {
        c.body.clone()
    } else if c.is_one() {
        tpart
    } else {
        format!("{}*{}", c.body, tpart)
    }
}

/// Renders a t-polynomial in ascending degree. Returns the sign (only for a
/// single term), the text, and whether it consists of a single term.
fn format_t_poly<F: FormatCoeff>(f: &F, a: &[F::Elem]) -> (bool, String, bool) {
    let terms: Vec<(usize, CoeffText)> =
        a.iter().enumerate().filter(|(_, c)| !f.is_zero(c)).map(|(k, c)| (k, f.format_coeff(c))).collect();
    if terms.len() == 1 {
        let (k, c) = &terms[0];
        return (c.negative, format_t_term(c, *k), true);
    }
    let mut s = String::new();
    for (i, (k, c)) in terms.iter().enumerate() {
        let body = format_t_term(c, *k);
        match (i, c.negative) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        s.push_str(&body);
    }
    (false, format!("({s})"), false)
}

fn format_frac<F: FormatCoeff>(f: &F, num: &[F::Elem], den: &[F::Elem]) -> CoeffText {
    if num.is_empty() {
        return CoeffText { negative: false, body: "0".to_string() };
    }
    let (negative, ntext, _) = format_t_poly(f, num);
    if den.len() == 1 {
        return CoeffText { negative, body: ntext };
    }
    let (_, dtext, _) = format_t_poly(f, den);
    CoeffText { negative, body: format!("{ntext}/{dtext}") }
}

impl fmt::Display for DvrElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.format();
        if c.negative {
            f.write_str("-")?;
        }
        f.write_str(&c.body)
    }
}

impl<'a> Add<&'a DvrElement> for &'a DvrElement {
    type Output = DvrElement;
    fn add(self, rhs: &DvrElement) -> DvrElement {
        self.add_impl(rhs)
    }
}

impl<'a> Sub<&'a DvrElement> for &'a DvrElement {
    type Output = DvrElement;
    fn sub(self, rhs: &DvrElement) -> DvrElement {
        self.add_impl(&rhs.neg_impl())
    }
}

impl<'a> Mul<&'a DvrElement> for &'a DvrElement {
    type Output = DvrElement;
    fn mul(self, rhs: &DvrElement) -> DvrElement {
        self.mul_impl(rhs)
    }
}

impl Neg for &DvrElement {
    type Output = DvrElement;
    fn neg(self) -> DvrElement {
        self.neg_impl()
    }
}

impl Neg for DvrElement {
    type Output = DvrElement;
    fn neg(self) -> DvrElement {
        self.neg_impl()
    }
}

/// The fraction field K of the configured valuation ring, as a ring context
/// for polynomial coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FractionField {
    config: CoeffConfig,
}

impl FractionField {
    pub fn new(config: CoeffConfig) -> Self {
        FractionField { config }
    }

    pub fn config(&self) -> CoeffConfig {
        self.config
    }

    pub fn uniformizer(&self) -> DvrElement {
        DvrElement::uniformizer(self.config)
    }

    pub fn t_pow(&self, k: i64) -> DvrElement {
        DvrElement::t_pow(self.config, k)
    }
}

impl Ring for FractionField {
    type Elem = DvrElement;

    fn zero(&self) -> DvrElement {
        DvrElement::zero(self.config)
    }
    fn one(&self) -> DvrElement {
        DvrElement::one(self.config)
    }
    fn from_bigint(&self, n: &BigInt) -> DvrElement {
        DvrElement::from_bigint(self.config, n)
    }
    fn is_zero(&self, a: &DvrElement) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &DvrElement, b: &DvrElement) -> DvrElement {
        a + b
    }
    fn neg(&self, a: &DvrElement) -> DvrElement {
        -a
    }
    fn sub(&self, a: &DvrElement, b: &DvrElement) -> DvrElement {
        a - b
    }
    fn mul(&self, a: &DvrElement, b: &DvrElement) -> DvrElement {
        a * b
    }
    fn characteristic(&self) -> u64 {
        match self.config {
            CoeffConfig::EquicharP { p } => p,
            _ => 0,
        }
    }
}

impl Field for FractionField {
    fn inv(&self, a: &DvrElement) -> Option<DvrElement> {
        a.inv().ok()
    }
}

impl FormatCoeff for FractionField {
    fn format_coeff(&self, a: &DvrElement) -> CoeffText {
        a.format()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp2() -> CoeffConfig {
        CoeffConfig::EquicharP { p: 2 }
    }

    #[test]
    fn valuation_examples() {
        let c = fp2();
        assert_eq!(DvrElement::uniformizer(c).valuation(), Valuation::Finite(1));
        assert_eq!(DvrElement::zero(c).valuation(), Valuation::Infinite);
        // t^3 (1 + t) / (1 + t + t^2)
        let a = DvrElement::from_t_poly(c, &[0, 0, 0, 1, 1]);
        let b = DvrElement::from_t_poly(c, &[1, 1, 1]);
        assert_eq!(a.div(&b).unwrap().valuation(), Valuation::Finite(3));
    }

    #[test]
    fn residue_examples() {
        let q = CoeffConfig::Equichar0;
        assert!(DvrElement::uniformizer(q).residue().unwrap().is_zero());
        let a = DvrElement::from_t_poly(q, &[1, 1]).div(&DvrElement::from_t_poly(q, &[1, -1])).unwrap();
        assert_eq!(a.residue().unwrap(), ResidueElement::Q(BigRational::one()));
        let inv_t = DvrElement::t_pow(q, -1);
        assert_eq!(inv_t.residue(), Err(Error::NegativeValuation(-1)));
    }

    #[test]
    fn invert_examples() {
        let c = fp2();
        let a = DvrElement::from_t_poly(c, &[1, 1]);
        let ia = a.invert_in_o().unwrap();
        assert!((&a * &ia).is_one());
        assert_eq!(ia.to_string(), "1/(1 + t)");
        assert_eq!(DvrElement::uniformizer(c).invert_in_o(), Err(Error::NotUnitInO(1)));
        assert_eq!(DvrElement::zero(c).inv(), Err(Error::ZeroDivision));

        let m = CoeffConfig::MixedChar { p: 3 };
        let two = DvrElement::from_int(m, 2);
        let half = two.invert_in_o().unwrap();
        assert_eq!(half.to_string(), "1/2");
        assert_eq!(half.valuation(), Valuation::Finite(0));
    }

    #[test]
    fn canonical_form_fixes_denominator() {
        let q = CoeffConfig::Equichar0;
        // (1 + t)/(1 - t): denominator normalized to t - 1
        let a = DvrElement::from_t_poly(q, &[1, 1]).div(&DvrElement::from_t_poly(q, &[1, -1])).unwrap();
        assert_eq!(a.to_string(), "(-1 - t)/(-1 + t)");
        let b = DvrElement::from_t_poly(q, &[2, 2]).div(&DvrElement::from_t_poly(q, &[2, -2])).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn mixed_uniformizer_is_p() {
        let m = CoeffConfig::MixedChar { p: 5 };
        assert_eq!(DvrElement::uniformizer(m), DvrElement::from_int(m, 5));
        assert_eq!(DvrElement::from_int(m, 50).valuation(), Valuation::Finite(2));
        assert_eq!(DvrElement::t_pow(m, -2).to_string(), "1/25");
    }

    #[test]
    fn t_power_detection() {
        let c = fp2();
        assert_eq!(DvrElement::t_pow(c, 3).as_t_power(), Some(3));
        assert_eq!(DvrElement::from_t_poly(c, &[0, 1, 1]).as_t_power(), None);
        assert_eq!(DvrElement::zero(c).as_t_power(), None);
    }

    #[test]
    fn rational_in_char_p() {
        let c = CoeffConfig::EquicharP { p: 3 };
        let half = DvrElement::from_rational(c, &BigRational::new(1.into(), 2.into())).unwrap();
        assert_eq!(half, DvrElement::from_int(c, 2));
        assert!(DvrElement::from_rational(c, &BigRational::new(1.into(), 3.into())).is_err());
    }
}
