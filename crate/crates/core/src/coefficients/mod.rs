//! Exact arithmetic for the residue field k, the valuation ring O and its
//! fraction field K, in three models:
//!
//! * `EquicharP { p }`: O = F_p[t] localized at (t), k = F_p.
//! * `Equichar0`: O = Q[t] localized at (t), k = Q.
//! * `MixedChar { p }`: O = Z localized at (p), k = F_p, with t = p.

pub mod dense;
mod dvr;
mod residue;
mod ring;

use serde::{Deserialize, Serialize};

pub use dvr::{DvrElement, FractionField, Valuation};
pub use residue::{ResidueElement, ResidueField};
pub use ring::{is_prime, CoeffText, Field, FormatCoeff, PrimeField, Rationals, Ring};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoeffConfig {
    EquicharP { p: u64 },
    Equichar0,
    MixedChar { p: u64 },
}

impl CoeffConfig {
    pub fn equichar_p(p: u64) -> Result<Self> {
        check_prime(p)?;
        Ok(CoeffConfig::EquicharP { p })
    }

    pub fn mixed_char(p: u64) -> Result<Self> {
        check_prime(p)?;
        Ok(CoeffConfig::MixedChar { p })
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            CoeffConfig::EquicharP { p } | CoeffConfig::MixedChar { p } => check_prime(p),
            CoeffConfig::Equichar0 => Ok(()),
        }
    }

    /// Characteristic exponent of K: `p` in equal characteristic `p`, else 1.
    pub fn char_exponent(&self) -> u64 {
        match *self {
            CoeffConfig::EquicharP { p } => p,
            _ => 1,
        }
    }

    /// Characteristic of k (0 for Q).
    pub fn residue_characteristic(&self) -> u64 {
        match *self {
            CoeffConfig::EquicharP { p } | CoeffConfig::MixedChar { p } => p,
            CoeffConfig::Equichar0 => 0,
        }
    }

    pub fn fraction_field(&self) -> FractionField {
        FractionField::new(*self)
    }

    pub fn residue_field(&self) -> ResidueField {
        ResidueField::of(*self)
    }

    /// Short label: `Fp[t]`, `Q[t]` or `Zp`, as used in curve files.
    pub fn label(&self) -> &'static str {
        match self {
            CoeffConfig::EquicharP { .. } => "Fp[t]",
            CoeffConfig::Equichar0 => "Q[t]",
            CoeffConfig::MixedChar { .. } => "Zp",
        }
    }
}

fn check_prime(p: u64) -> Result<()> {
    if p >= (1 << 31) || !is_prime(p) {
        return Err(Error::InvalidPrime(p));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn configs() -> Vec<CoeffConfig> {
        vec![
            CoeffConfig::EquicharP { p: 2 },
            CoeffConfig::EquicharP { p: 3 },
            CoeffConfig::Equichar0,
            CoeffConfig::MixedChar { p: 2 },
        ]
    }

    fn elem(config: CoeffConfig, num: &[i64], den: &[i64], shift: i64) -> DvrElement {
        let d = DvrElement::from_t_poly(config, den);
        let n = DvrElement::from_t_poly(config, num);
        let base = if d.is_zero() { n } else { n.div(&d).unwrap() };
        &base * &DvrElement::t_pow(config, shift)
    }

    #[test]
    fn rejects_composite_modulus() {
        assert_eq!(CoeffConfig::equichar_p(4), Err(Error::InvalidPrime(4)));
        assert!(CoeffConfig::mixed_char(7).is_ok());
    }

    proptest! {
        #[test]
        fn valuation_is_additive(
            ci in 0usize..4,
            n1 in prop::collection::vec(-3i64..4, 1..4), d1 in prop::collection::vec(-3i64..4, 1..3),
            n2 in prop::collection::vec(-3i64..4, 1..4), d2 in prop::collection::vec(-3i64..4, 1..3),
            s1 in -3i64..4, s2 in -3i64..4,
        ) {
            let c = configs()[ci];
            let a = elem(c, &n1, &d1, s1);
            let b = elem(c, &n2, &d2, s2);
            prop_assert_eq!((&a * &b).valuation(), a.valuation() + b.valuation());
            let va = a.valuation();
            let vb = b.valuation();
            let vs = (&a + &b).valuation();
            prop_assert!(vs >= va.min(vb));
            if va != vb {
                prop_assert_eq!(vs, va.min(vb));
            }
        }

        #[test]
        fn residue_is_a_ring_map(
            ci in 0usize..4,
            n1 in prop::collection::vec(-3i64..4, 1..4), n2 in prop::collection::vec(-3i64..4, 1..4),
            d1 in prop::collection::vec(-3i64..4, 1..3),
        ) {
            let c = configs()[ci];
            let a = elem(c, &n1, &d1, 0);
            let b = elem(c, &n2, &[1], 0);
            let k = c.residue_field();
            if let (Ok(ra), Ok(rb)) = (a.residue(), b.residue()) {
                prop_assert_eq!((&a + &b).residue().unwrap(), k.add(&ra, &rb));
                prop_assert_eq!((&a * &b).residue().unwrap(), k.mul(&ra, &rb));
            }
        }

        #[test]
        fn inverse_is_exact(
            ci in 0usize..4,
            n in prop::collection::vec(-3i64..4, 1..4), d in prop::collection::vec(-3i64..4, 1..3),
            s in -3i64..4,
        ) {
            let c = configs()[ci];
            let a = elem(c, &n, &d, s);
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
                // canonical form: rebuilding from the inverse of the inverse is idempotent
                prop_assert_eq!(a.inv().unwrap().inv().unwrap(), a);
            }
        }
    }
}
