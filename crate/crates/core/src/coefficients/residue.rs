use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ring::{format_rational, CoeffText, Field, FormatCoeff, PrimeField, Rationals, Ring};
use super::CoeffConfig;

/// An element of the residue field k: F_p or Q.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ResidueElement {
    Fp { value: u64, p: u64 },
    Q(BigRational),
}

impl ResidueElement {
    pub fn zero_for(config: CoeffConfig) -> Self {
        ResidueField::of(config).zero()
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ResidueElement::Fp { value, .. } => *value == 0,
            ResidueElement::Q(q) => q.is_zero(),
        }
    }
}

impl fmt::Display for ResidueElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResidueElement::Fp { value, .. } => write!(f, "{value}"),
            ResidueElement::Q(q) => write!(f, "{q}"),
        }
    }
}

/// The residue field k = O/(t) as a ring context.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ResidueField {
    Fp(PrimeField),
    Q,
}

impl ResidueField {
    pub fn of(config: CoeffConfig) -> Self {
        match config {
            CoeffConfig::EquicharP { p } | CoeffConfig::MixedChar { p } => ResidueField::Fp(PrimeField::new(p)),
            CoeffConfig::Equichar0 => ResidueField::Q,
        }
    }

    pub fn prime_field(p: u64) -> Self {
        ResidueField::Fp(PrimeField::new(p))
    }

    fn wrap(&self, value: u64) -> ResidueElement {
        match self {
            ResidueField::Fp(f) => ResidueElement::Fp { value, p: f.modulus() },
            ResidueField::Q => unreachable!(),
        }
    }

    /// Every element of a finite residue field, in increasing order.
    pub fn elements(&self) -> Option<Vec<ResidueElement>> {
        match self {
            ResidueField::Fp(f) => Some((0..f.modulus()).map(|v| self.wrap(v)).collect()),
            ResidueField::Q => None,
        }
    }
}

macro_rules! dispatch2 {
    ($self:ident, $a:ident, $b:ident, $f:ident, $op:ident) => {
        match ($self, $a, $b) {
            (ResidueField::Fp($f), ResidueElement::Fp { value: x, .. }, ResidueElement::Fp { value: y, .. }) => {
                $self.wrap($f.$op(x, y))
            }
            (ResidueField::Q, ResidueElement::Q(x), ResidueElement::Q(y)) => ResidueElement::Q(Rationals.$op(x, y)),
            _ => panic!("residue arithmetic across different fields"),
        }
    };
}

impl Ring for ResidueField {
    type Elem = ResidueElement;

    fn zero(&self) -> ResidueElement {
        match self {
            ResidueField::Fp(_) => self.wrap(0),
            ResidueField::Q => ResidueElement::Q(BigRational::zero()),
        }
    }
    fn one(&self) -> ResidueElement {
        match self {
            ResidueField::Fp(f) => self.wrap(f.one()),
            ResidueField::Q => ResidueElement::Q(BigRational::one()),
        }
    }
    fn from_bigint(&self, n: &BigInt) -> ResidueElement {
        match self {
            ResidueField::Fp(f) => self.wrap(f.from_bigint(n)),
            ResidueField::Q => ResidueElement::Q(Rationals.from_bigint(n)),
        }
    }
    fn is_zero(&self, a: &ResidueElement) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &ResidueElement, b: &ResidueElement) -> ResidueElement {
        dispatch2!(self, a, b, f, add)
    }
    fn sub(&self, a: &ResidueElement, b: &ResidueElement) -> ResidueElement {
        dispatch2!(self, a, b, f, sub)
    }
    fn mul(&self, a: &ResidueElement, b: &ResidueElement) -> ResidueElement {
        dispatch2!(self, a, b, f, mul)
    }
    fn neg(&self, a: &ResidueElement) -> ResidueElement {
        match (self, a) {
            (ResidueField::Fp(f), ResidueElement::Fp { value, .. }) => self.wrap(f.neg(value)),
            (ResidueField::Q, ResidueElement::Q(x)) => ResidueElement::Q(-x),
            _ => panic!("residue arithmetic across different fields"),
        }
    }
    fn characteristic(&self) -> u64 {
        match self {
            ResidueField::Fp(f) => f.modulus(),
            ResidueField::Q => 0,
        }
    }
}

impl Field for ResidueField {
    fn inv(&self, a: &ResidueElement) -> Option<ResidueElement> {
        match (self, a) {
            (ResidueField::Fp(f), ResidueElement::Fp { value, .. }) => f.inv(value).map(|v| self.wrap(v)),
            (ResidueField::Q, ResidueElement::Q(x)) => Rationals.inv(x).map(ResidueElement::Q),
            _ => panic!("residue arithmetic across different fields"),
        }
    }
}

impl FormatCoeff for ResidueField {
    fn format_coeff(&self, a: &ResidueElement) -> CoeffText {
        match a {
            ResidueElement::Fp { value, .. } => CoeffText { negative: false, body: value.to_string() },
            ResidueElement::Q(q) => format_rational(q),
        }
    }
}
