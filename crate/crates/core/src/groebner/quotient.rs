//! The finite-dimensional quotient k[x]/I of a zero-dimensional ideal:
//! standard monomials, eliminants via multiplication operators, the
//! Seidenberg radical test, and inverses.

use std::collections::{BTreeSet, HashMap};

use super::{unit_cofactors, GroebnerBasis};
use crate::coefficients::Field;
use crate::error::{Error, Result};
use crate::poly::{univariate, Monomial, MultiPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientDescription {
    /// Standard monomials in ascending term order.
    pub standard_monomials: Vec<Monomial>,
    pub dimension: usize,
}

/// Zero-dimensionality: every variable has a pure power among the leading
/// monomials. The unit ideal (empty variety) is not zero-dimensional.
pub fn is_zero_dimensional<F: Field>(basis: &GroebnerBasis<F>) -> (bool, Option<QuotientDescription>) {
    if basis.is_unit_ideal() {
        return (false, None);
    }
    let lms = basis.leading_monomials();
    let n = basis.namespace().len();
    let all_bounded = (0..n).all(|v| lms.iter().any(|m| matches!(m.as_pure_power(), Some((w, _)) if w == v)));
    if !all_bounded {
        return (false, None);
    }
    let mut seen: BTreeSet<Monomial> = BTreeSet::new();
    let mut frontier = vec![Monomial::one()];
    while let Some(m) = frontier.pop() {
        if seen.contains(&m) || lms.iter().any(|l| l.divides(&m)) {
            continue;
        }
        for v in 0..n {
            frontier.push(m.mul(&Monomial::var(v)));
        }
        seen.insert(m);
    }
    let standard_monomials: Vec<Monomial> = seen.into_iter().collect();
    let dimension = standard_monomials.len();
    (true, Some(QuotientDescription { standard_monomials, dimension }))
}

fn coordinates<F: Field>(p: &MultiPoly<F>, index: &HashMap<Monomial, usize>, dim: usize) -> Vec<F::Elem> {
    let mut v = vec![p.ring().zero(); dim];
    for (m, c) in p.terms() {
        v[index[m]] = c.clone();
    }
    v
}

/// Pivot column, reduced row, and its combination of inserted vectors.
type EchelonRow<E> = (usize, Vec<E>, Vec<E>);

/// Incremental row echelon form over a field that remembers how each stored
/// row was combined from the inserted vectors.
struct Echelon<F: Field> {
    ring: F,
    rows: Vec<EchelonRow<F::Elem>>,
    inserted: usize,
}

impl<F: Field> Echelon<F> {
    fn new(ring: F) -> Self {
        Echelon { ring, rows: Vec::new(), inserted: 0 }
    }

    /// Inserts vector number `inserted`. On linear dependence returns the
    /// coefficients `c` with `sum c_j v_j = 0` and `c_last = 1`.
    fn insert(&mut self, v: Vec<F::Elem>, max_vectors: usize) -> Option<Vec<F::Elem>> {
        let f = &self.ring;
        let k = self.inserted;
        self.inserted += 1;
        let mut w = v;
        let mut comb = vec![f.zero(); max_vectors];
        comb[k] = f.one();
        for (pivot, row, rcomb) in &self.rows {
            if f.is_zero(&w[*pivot]) {
                continue;
            }
            let c = w[*pivot].clone();
            for (x, y) in w.iter_mut().zip(row) {
                *x = f.sub(x, &f.mul(&c, y));
            }
            for (x, y) in comb.iter_mut().zip(rcomb) {
                *x = f.sub(x, &f.mul(&c, y));
            }
        }
        match w.iter().position(|x| !f.is_zero(x)) {
            None => Some(comb),
            Some(pivot) => {
                let inv = f.inv(&w[pivot]).unwrap();
                let w: Vec<F::Elem> = w.iter().map(|x| f.mul(x, &inv)).collect();
                let comb: Vec<F::Elem> = comb.iter().map(|x| f.mul(x, &inv)).collect();
                // keep earlier rows reduced at the new pivot
                for (_, row, rcomb) in self.rows.iter_mut() {
                    if f.is_zero(&row[pivot]) {
                        continue;
                    }
                    let c = row[pivot].clone();
                    for (x, y) in row.iter_mut().zip(&w) {
                        *x = f.sub(x, &f.mul(&c, y));
                    }
                    for (x, y) in rcomb.iter_mut().zip(&comb) {
                        *x = f.sub(x, &f.mul(&c, y));
                    }
                }
                self.rows.push((pivot, w, comb));
                None
            }
        }
    }
}

/// Monic generator of `I ∩ k[x_v]`, found as the minimal polynomial of
/// multiplication by `x_v` on the quotient (Krylov sequence of `1`).
pub fn eliminant<F: Field>(basis: &GroebnerBasis<F>, desc: &QuotientDescription, v: usize) -> MultiPoly<F> {
    let ring = basis.ring().clone();
    let ns = basis.namespace().clone();
    let index: HashMap<Monomial, usize> =
        desc.standard_monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let dim = desc.dimension;
    let xv = MultiPoly::var(ring.clone(), ns.clone(), v);
    let mut ech = Echelon::new(ring.clone());
    let mut power = basis.normal_form(&MultiPoly::one(ring.clone(), ns.clone()));
    for _ in 0..=dim {
        if let Some(comb) = ech.insert(coordinates(&power, &index, dim), dim + 1) {
            return MultiPoly::from_dense(ring, ns, v, &comb);
        }
        power = basis.normal_form(&(&power * &xv));
    }
    unreachable!("Krylov sequence longer than the quotient dimension")
}

#[derive(Clone, Debug, PartialEq)]
pub struct RadicalVerdict<F: Field> {
    pub radical: bool,
    /// Eliminant of each variable, in variable order.
    pub eliminants: Vec<MultiPoly<F>>,
    /// First variable whose eliminant is not squarefree.
    pub witness: Option<(usize, MultiPoly<F>)>,
}

/// Seidenberg's criterion for a zero-dimensional ideal over a perfect field:
/// radical iff every eliminant is squarefree.
pub fn is_radical_zero_dim<F: Field>(basis: &GroebnerBasis<F>) -> Result<RadicalVerdict<F>> {
    let (zd, desc) = is_zero_dimensional(basis);
    if !zd {
        return Err(Error::NotZeroDimensional);
    }
    let desc = desc.unwrap();
    let mut eliminants = Vec::new();
    let mut witness = None;
    for v in 0..basis.namespace().len() {
        let g = eliminant(basis, &desc, v);
        if witness.is_none() && !univariate::is_squarefree(&g, v) {
            witness = Some((v, g.clone()));
        }
        eliminants.push(g);
    }
    Ok(RadicalVerdict { radical: witness.is_none(), eliminants, witness })
}

#[derive(Clone, Debug, PartialEq)]
pub struct UnitVerdict<F: Field> {
    pub unit: bool,
    /// Reduced `h` with `g*h ≡ 1` when `g` is a unit.
    pub inverse: Option<MultiPoly<F>>,
}

/// Whether `g` is invertible modulo the ideal, with its reduced inverse.
pub fn is_unit_in_quotient<F: Field>(g: &MultiPoly<F>, basis: &GroebnerBasis<F>) -> UnitVerdict<F> {
    let mut gens: Vec<MultiPoly<F>> = basis.gens().to_vec();
    gens.push(g.clone());
    match unit_cofactors(basis.ring(), basis.namespace(), &gens) {
        None => UnitVerdict { unit: false, inverse: None },
        Some(cof) => {
            let h = basis.normal_form(cof.last().unwrap());
            UnitVerdict { unit: true, inverse: Some(h) }
        }
    }
}
