//! Buchberger's algorithm over a field, with graded-lex order. Used for all
//! computations modulo the uniformizer, where coefficients live in k.

mod quotient;

use std::collections::BTreeSet;

pub use quotient::{
    eliminant, is_radical_zero_dim, is_unit_in_quotient, is_zero_dimensional, QuotientDescription, RadicalVerdict,
    UnitVerdict,
};

use crate::coefficients::Field;
use crate::poly::{Monomial, MultiPoly, Namespace};

/// A Gröbner basis for the graded-lex order on its namespace.
#[derive(Clone, Debug, PartialEq)]
pub struct GroebnerBasis<F: Field> {
    ring: F,
    ns: Namespace,
    gens: Vec<MultiPoly<F>>,
    reduced: bool,
}

/// A polynomial together with its expression in terms of the input
/// generators, when tracking is requested.
#[derive(Clone, Debug)]
struct Tracked<F: Field> {
    poly: MultiPoly<F>,
    cof: Option<Vec<MultiPoly<F>>>,
}

impl<F: Field> Tracked<F> {
    fn scale(&mut self, c: &F::Elem) {
        self.poly = self.poly.scale(c);
        if let Some(cof) = &mut self.cof {
            for x in cof.iter_mut() {
                *x = x.scale(c);
            }
        }
    }

    fn make_monic(&mut self) {
        if let Some(lc) = self.poly.leading_coefficient() {
            let inv = self.poly.ring().inv(lc).unwrap();
            self.scale(&inv);
        }
    }

    /// `self -= c * m * other`.
    fn sub_multiple(&mut self, other: &Tracked<F>, m: &Monomial, c: &F::Elem) {
        let neg = self.poly.ring().neg(c);
        for (om, oc) in other.poly.terms() {
            let prod = self.poly.ring().mul(oc, &neg);
            self.poly.add_term(om.mul(m), prod);
        }
        if let (Some(cof), Some(ocof)) = (&mut self.cof, &other.cof) {
            for (x, y) in cof.iter_mut().zip(ocof) {
                *x = &*x + &y.mul_term(m, &neg);
            }
        }
    }
}

/// Fully reduces `p` modulo `basis` (all monic). Divisors are tried in
/// index order.
fn reduce_tracked<F: Field>(mut p: Tracked<F>, basis: &[Tracked<F>]) -> Tracked<F> {
    let ring = p.poly.ring().clone();
    let ns = p.poly.namespace().clone();
    let mut rem = MultiPoly::zero(ring.clone(), ns);
    while let Some((m, c)) = p.poly.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
        let divisor = basis.iter().find_map(|g| {
            let lm = g.poly.leading_monomial()?;
            lm.quotient_of(&m).map(|q| (g, q))
        });
        match divisor {
            Some((g, q)) => p.sub_multiple(g, &q, &c),
            None => {
                p.poly.add_term(m.clone(), ring.neg(&c));
                rem.add_term(m, c);
            }
        }
    }
    Tracked { poly: rem, cof: p.cof }
}

fn s_polynomial<F: Field>(a: &Tracked<F>, b: &Tracked<F>) -> Tracked<F> {
    let (ma, _) = a.poly.leading_term().unwrap();
    let (mb, _) = b.poly.leading_term().unwrap();
    let l = ma.lcm(mb);
    let qa = ma.quotient_of(&l).unwrap();
    let qb = mb.quotient_of(&l).unwrap();
    let one = a.poly.ring().one();
    let mut out = Tracked {
        poly: a.poly.mul_term(&qa, &one),
        cof: a.cof.as_ref().map(|c| c.iter().map(|x| x.mul_term(&qa, &one)).collect()),
    };
    out.sub_multiple(b, &qb, &one);
    out
}

struct Run<F: Field> {
    basis: Vec<Tracked<F>>,
}

fn run_buchberger<F: Field>(ring: &F, ns: &Namespace, gens: &[MultiPoly<F>], track: bool) -> Run<F> {
    let n_in = gens.len();
    let zero = MultiPoly::zero(ring.clone(), ns.clone());
    let mut basis: Vec<Tracked<F>> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        assert_eq!(g.namespace(), ns, "generator outside the namespace");
        let cof = track.then(|| {
            let mut v = vec![zero.clone(); n_in];
            v[i] = MultiPoly::one(ring.clone(), ns.clone());
            v
        });
        let mut t = Tracked { poly: g.clone(), cof };
        if t.poly.is_zero() {
            continue;
        }
        t.make_monic();
        basis.push(t);
    }

    // pairs keyed by (lcm, i, j) so that iteration follows the normal strategy
    let mut pairs: BTreeSet<(Monomial, usize, usize)> = BTreeSet::new();
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
    let lm = |b: &Vec<Tracked<F>>, i: usize| b[i].poly.leading_monomial().unwrap().clone();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.insert((lm(&basis, i).lcm(&lm(&basis, j)), i, j));
        }
    }

    if let Some(pos) = basis.iter().position(|t| t.poly.is_constant()) {
        return Run { basis: vec![basis.swap_remove(pos)] };
    }

    while let Some(pair) = pairs.pop_first() {
        let (l, i, j) = pair;
        done.insert((i, j));
        let (mi, mj) = (lm(&basis, i), lm(&basis, j));
        if mi.is_coprime(&mj) {
            continue;
        }
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        let chain = (0..basis.len()).any(|k| {
            k != i && k != j && lm(&basis, k).divides(&l) && done.contains(&key(i, k)) && done.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j]);
        let mut r = reduce_tracked(s, &basis);
        if r.poly.is_zero() {
            continue;
        }
        r.make_monic();
        if r.poly.is_constant() {
            return Run { basis: vec![r] };
        }
        let new_lm = r.poly.leading_monomial().unwrap().clone();
        let m = basis.len();
        basis.push(r);
        for k in 0..m {
            pairs.insert((lm(&basis, k).lcm(&new_lm), k, m));
        }
    }
    Run { basis }
}

/// Minimalizes and interreduces, then sorts by leading monomial.
fn reduce_basis<F: Field>(basis: Vec<Tracked<F>>) -> Vec<Tracked<F>> {
    let lms: Vec<Monomial> = basis.iter().map(|t| t.poly.leading_monomial().unwrap().clone()).collect();
    let keep: Vec<usize> = (0..basis.len())
        .filter(|&i| !(0..basis.len()).any(|j| j != i && lms[j].divides(&lms[i]) && (lms[j] != lms[i] || j < i)))
        .collect();
    let mut minimal: Vec<Tracked<F>> = keep.into_iter().map(|i| basis[i].clone()).collect();
    minimal.sort_by(|a, b| a.poly.leading_monomial().cmp(&b.poly.leading_monomial()));
    for i in 0..minimal.len() {
        let others: Vec<Tracked<F>> =
            minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, t)| t.clone()).collect();
        let mut t = minimal[i].clone();
        let lead = t.poly.leading_term().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        // keep the leading term, reduce the tail
        t.poly.add_term(lead.0.clone(), t.poly.ring().neg(&lead.1));
        let mut r = reduce_tracked(t, &others);
        r.poly.add_term(lead.0, lead.1);
        minimal[i] = r;
    }
    minimal
}

impl<F: Field> GroebnerBasis<F> {
    pub fn ring(&self) -> &F {
        &self.ring
    }

    pub fn namespace(&self) -> &Namespace {
        &self.ns
    }

    pub fn gens(&self) -> &[MultiPoly<F>] {
        &self.gens
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.gens.iter().any(|g| g.is_constant() && !g.is_zero())
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.gens.iter().filter_map(|g| g.leading_monomial().cloned()).collect()
    }

    /// The unique remainder of `p` modulo the ideal.
    pub fn normal_form(&self, p: &MultiPoly<F>) -> MultiPoly<F> {
        assert_eq!(p.namespace(), &self.ns, "polynomial outside the basis namespace");
        let basis: Vec<Tracked<F>> = self.gens.iter().map(|g| Tracked { poly: g.clone(), cof: None }).collect();
        reduce_tracked(Tracked { poly: p.clone(), cof: None }, &basis).poly
    }

    pub fn contains(&self, p: &MultiPoly<F>) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Checks the Buchberger criterion: every S-polynomial reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let basis: Vec<Tracked<F>> = self.gens.iter().map(|g| Tracked { poly: g.clone(), cof: None }).collect();
        for j in 0..basis.len() {
            for i in 0..j {
                let s = s_polynomial(&basis[i], &basis[j]);
                if !reduce_tracked(s, &basis).poly.is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens` (zero ideal for
/// empty input).
pub fn buchberger<F: Field>(ring: &F, ns: &Namespace, gens: &[MultiPoly<F>]) -> GroebnerBasis<F> {
    let run = run_buchberger(ring, ns, gens, false);
    let gens = reduce_basis(run.basis).into_iter().map(|t| t.poly).collect();
    GroebnerBasis { ring: ring.clone(), ns: ns.clone(), gens, reduced: true }
}

/// When `1` lies in the ideal generated by `gens`, cofactors `c_i` with
/// `sum c_i * gens[i] = 1`.
pub fn unit_cofactors<F: Field>(ring: &F, ns: &Namespace, gens: &[MultiPoly<F>]) -> Option<Vec<MultiPoly<F>>> {
    let run = run_buchberger(ring, ns, gens, true);
    let one = run.basis.into_iter().find(|t| t.poly.is_constant() && !t.poly.is_zero())?;
    debug_assert!(one.poly == MultiPoly::one(ring.clone(), ns.clone()));
    one.cof
}
