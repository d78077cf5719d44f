//! Seeded random instances shared by the self-test, the CLI and the test
//! suites.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::coefficients::{CoeffConfig, DvrElement, FractionField};
use crate::lfihd::{AdditiveSeries, KPoly};
use crate::linalg::DvrMatrix;
use crate::poly::{Monomial, MultiPoly, Namespace};

/// `(a + b t)/(1 + c t)` with `a` nonzero mod p.
pub fn unit(rng: &mut ChaCha8Rng, config: CoeffConfig) -> DvrElement {
    let p = config.residue_characteristic() as i64;
    let a = loop {
        let a = rng.gen_range(1..=3);
        if p == 0 || a % p != 0 {
            break a;
        }
    };
    let num = DvrElement::from_t_poly(config, &[a, rng.gen_range(-2..=2)]);
    let den = DvrElement::from_t_poly(config, &[1, rng.gen_range(-1..=1)]);
    num.div(&den).expect("1 + c t is a unit")
}

/// A unit times `t^v` with `0 <= v <= max_val`, or zero with probability 1/8.
pub fn o_elem(rng: &mut ChaCha8Rng, config: CoeffConfig, max_val: i64) -> DvrElement {
    if rng.gen_range(0..8) == 0 {
        return DvrElement::zero(config);
    }
    &unit(rng, config) * &DvrElement::t_pow(config, rng.gen_range(0..=max_val))
}

/// An additive series with up to `max_terms` terms `u t^v T^{p^s}`, where
/// `p^s <= p^max_frob` and `v <= max_val`. Never zero.
pub fn series(
    rng: &mut ChaCha8Rng,
    config: CoeffConfig,
    max_terms: usize,
    max_frob: u32,
    max_val: i64,
) -> AdditiveSeries {
    let max_frob = if config.char_exponent() == 1 { 0 } else { max_frob };
    loop {
        let k = rng.gen_range(1..=max_terms);
        let terms: Vec<(DvrElement, u32)> = (0..k)
            .map(|_| {
                (
                    &unit(rng, config) * &DvrElement::t_pow(config, rng.gen_range(0..=max_val)),
                    rng.gen_range(0..=max_frob),
                )
            })
            .collect();
        let s = AdditiveSeries::from_frobenius(config, terms).expect("frobenius exponents are small");
        if !s.is_zero() {
            return s;
        }
    }
}

/// Up to `terms` monomials of total degree at most `max_deg`, coefficients
/// `n t^v` with `|n| <= 2` and `min_val <= v <= max_val`.
pub fn poly(
    rng: &mut ChaCha8Rng,
    f: FractionField,
    ns: &Namespace,
    max_deg: u32,
    terms: usize,
    (min_val, max_val): (i64, i64),
) -> KPoly {
    let config = f.config();
    let mut p = MultiPoly::zero(f, ns.clone());
    for _ in 0..terms {
        let mut exps = vec![0u32; ns.len()];
        let mut left = rng.gen_range(0..=max_deg);
        while left > 0 {
            exps[rng.gen_range(0..ns.len())] += 1;
            left -= 1;
        }
        let c = &DvrElement::from_int(config, rng.gen_range(-2..=2))
            * &DvrElement::t_pow(config, rng.gen_range(min_val..=max_val));
        p = &p + &MultiPoly::monomial(f, ns.clone(), Monomial::from_exponents(&exps), c);
    }
    p
}

/// Random `rows x cols` matrix over O.
pub fn matrix(rng: &mut ChaCha8Rng, config: CoeffConfig, rows: usize, cols: usize, max_val: i64) -> DvrMatrix {
    let rows = (0..rows).map(|_| (0..cols).map(|_| o_elem(rng, config, max_val)).collect()).collect();
    DvrMatrix::from_rows(config, rows).expect("entries lie in O")
}

pub fn vector(rng: &mut ChaCha8Rng, config: CoeffConfig, len: usize, max_val: i64) -> Vec<DvrElement> {
    (0..len).map(|_| o_elem(rng, config, max_val)).collect()
}

/// `(A, b, row)` where row `row` of A lies in tO and `b` is a unit there,
/// so that row blocks every solution.
pub fn obstructed_system(
    rng: &mut ChaCha8Rng,
    config: CoeffConfig,
    rows: usize,
    cols: usize,
) -> (DvrMatrix, Vec<DvrElement>, usize) {
    let mut a = matrix(rng, config, rows, cols, 2);
    let y = vector(rng, config, cols, 2);
    let row = rng.gen_range(0..rows);
    let t = DvrElement::uniformizer(config);
    for j in 0..cols {
        let v = &a.get(row, j).clone() * &t;
        a.set(row, j, v).expect("entries lie in O");
    }
    let mut b = a.mul_vec(&y).expect("shapes agree");
    b[row] = &b[row] + &unit(rng, config);
    (a, b, row)
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;

    use super::*;
    use crate::coefficients::Valuation;
    use crate::lfihd::validate_series;

    #[test]
    fn generated_instances_have_the_promised_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for config in [CoeffConfig::EquicharP { p: 3 }, CoeffConfig::Equichar0, CoeffConfig::MixedChar { p: 2 }] {
            for _ in 0..20 {
                assert!(unit(&mut rng, config).is_unit_in_o());
                let s = series(&mut rng, config, 4, 3, 3);
                assert!(validate_series(&s).is_ok());
                assert!(s.min_valuation() >= Valuation::Finite(0));
                let (a, b, row) = obstructed_system(&mut rng, config, 3, 2);
                assert!(a.mul_vec(&vector(&mut rng, config, 2, 1)).is_ok());
                assert!(b[row].is_unit_in_o());
            }
        }
    }
}
