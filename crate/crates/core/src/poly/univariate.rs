//! Gcd computations for polynomials involving a single variable.

use super::MultiPoly;
use crate::coefficients::{dense, Field};

fn dense_of<F: Field>(p: &MultiPoly<F>, v: usize) -> Vec<F::Elem> {
    p.to_dense(v).expect("polynomial is not univariate in the requested variable")
}

/// Monic gcd of two polynomials in variable `v`.
pub fn gcd<F: Field>(a: &MultiPoly<F>, b: &MultiPoly<F>, v: usize) -> MultiPoly<F> {
    let f = a.ring();
    let g = dense::gcd(f, &dense_of(a, v), &dense_of(b, v));
    MultiPoly::from_dense(f.clone(), a.namespace().clone(), v, &g)
}

/// Monic gcd of a list together with cofactors `c_i` such that
/// `sum c_i * polys[i] = g`.
pub fn gcd_with_cofactors<F: Field>(polys: &[MultiPoly<F>], v: usize) -> Option<(MultiPoly<F>, Vec<MultiPoly<F>>)> {
    let first = polys.first()?;
    let f = first.ring().clone();
    let ns = first.namespace().clone();
    let mut g: Vec<F::Elem> = Vec::new();
    let mut cof: Vec<Vec<F::Elem>> = vec![Vec::new(); polys.len()];
    for (i, p) in polys.iter().enumerate() {
        let d = dense_of(p, v);
        let (ng, u, w) = dense::xgcd(&f, &g, &d);
        for c in cof.iter_mut().take(i) {
            *c = dense::mul(&f, c, &u);
        }
        cof[i] = w;
        g = ng;
    }
    let lift = |d: &[F::Elem]| MultiPoly::from_dense(f.clone(), ns.clone(), v, d);
    Some((lift(&g), cof.iter().map(|c| lift(c)).collect()))
}

pub fn is_squarefree<F: Field>(p: &MultiPoly<F>, v: usize) -> bool {
    dense::is_squarefree(p.ring(), &dense_of(p, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::{CoeffConfig, FractionField};
    use crate::poly::{parse_poly, Namespace};

    #[test]
    fn cofactors_reproduce_gcd_over_k() {
        let c = CoeffConfig::EquicharP { p: 2 };
        let ns = Namespace::x();
        let polys: Vec<_> = ["x^2 + x", "t*x", "x^3 + t*x^2"].iter().map(|s| parse_poly(s, &ns, c).unwrap()).collect();
        let (g, cof) = gcd_with_cofactors(&polys, 0).unwrap();
        assert_eq!(g.to_string(), "x");
        let mut acc = MultiPoly::zero(FractionField::new(c), ns);
        for (ci, pi) in cof.iter().zip(&polys) {
            acc = &acc + &(ci * pi);
        }
        assert_eq!(acc, g);
    }
}
