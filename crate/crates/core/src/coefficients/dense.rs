//! Dense univariate polynomial arithmetic over a field, little-endian
//! coefficient vectors with no trailing zeros. The zero polynomial is the
//! empty vector.

use super::ring::{Field, Ring};

pub type Dense<F> = Vec<<F as Ring>::Elem>;

pub fn trim<F: Ring>(f: &F, mut a: Dense<F>) -> Dense<F> {
    while a.last().is_some_and(|c| f.is_zero(c)) {
        a.pop();
    }
    a
}

/// Degree, `None` for the zero polynomial.
pub fn degree<F: Ring>(a: &[F::Elem]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn constant<F: Ring>(f: &F, c: F::Elem) -> Dense<F> {
    trim(f, vec![c])
}

pub fn add<F: Ring>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Dense<F> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => f.add(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        });
    }
    trim(f, out)
}

pub fn neg<F: Ring>(f: &F, a: &[F::Elem]) -> Dense<F> {
    a.iter().map(|c| f.neg(c)).collect()
}

pub fn sub<F: Ring>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Dense<F> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => f.sub(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => f.neg(y),
            (None, None) => unreachable!(),
        });
    }
    trim(f, out)
}

pub fn mul<F: Ring>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Dense<F> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let prod = f.mul(x, y);
            out[i + j] = f.add(&out[i + j], &prod);
        }
    }
    trim(f, out)
}

pub fn scale<F: Ring>(f: &F, a: &[F::Elem], c: &F::Elem) -> Dense<F> {
    if f.is_zero(c) {
        return Vec::new();
    }
    trim(f, a.iter().map(|x| f.mul(x, c)).collect())
}

/// Multiply by `X^k`.
pub fn shift<F: Ring>(f: &F, a: &[F::Elem], k: usize) -> Dense<F> {
    if a.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); k];
    out.extend_from_slice(a);
    out
}

/// Number of trailing zero coefficients at the low end (the `X`-adic order).
pub fn low_order<F: Ring>(f: &F, a: &[F::Elem]) -> Option<usize> {
    a.iter().position(|c| !f.is_zero(c))
}

pub fn derivative<F: Ring>(f: &F, a: &[F::Elem]) -> Dense<F> {
    let out = a.iter().enumerate().skip(1).map(|(i, c)| f.mul(c, &f.from_i64(i as i64))).collect();
    trim(f, out)
}

pub fn eval<F: Ring>(f: &F, a: &[F::Elem], x: &F::Elem) -> F::Elem {
    let mut acc = f.zero();
    for c in a.iter().rev() {
        acc = f.add(&f.mul(&acc, x), c);
    }
    acc
}

/// Euclidean division `a = q*b + r` with `deg r < deg b`. Panics if `b = 0`.
pub fn divrem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> (Dense<F>, Dense<F>) {
    let db = degree::<F>(b).expect("division by the zero polynomial");
    let lead_inv = f.inv(&b[db]).unwrap();
    let mut r: Dense<F> = a.to_vec();
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![f.zero(); r.len() - db];
    while let Some(dr) = degree::<F>(&r) {
        if dr < db {
            break;
        }
        let c = f.mul(&r[dr], &lead_inv);
        let k = dr - db;
        for (i, bc) in b.iter().enumerate() {
            let prod = f.mul(&c, bc);
            r[i + k] = f.sub(&r[i + k], &prod);
        }
        q[k] = c;
        r = trim(f, r);
    }
    (trim(f, q), r)
}

pub fn make_monic<F: Field>(f: &F, a: &[F::Elem]) -> Dense<F> {
    match a.last() {
        None => Vec::new(),
        Some(lc) => {
            let inv = f.inv(lc).unwrap();
            a.iter().map(|c| f.mul(c, &inv)).collect()
        }
    }
}

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Dense<F> {
    match (low_order(f, a), low_order(f, b)) {
        (None, _) => make_monic(f, b),
        (_, None) => make_monic(f, a),
        (Some(i), Some(j)) => {
            if a.len() == i + 1 || b.len() == j + 1 {
                // one side is a monomial c X^k
                shift(f, &[f.one()], i.min(j))
            } else {
                f.poly_gcd(a, b)
            }
        }
    }
}

/// Plain Euclidean algorithm.
pub fn euclid_gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Dense<F> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    while !y.is_empty() {
        let (_, r) = divrem(f, &x, &y);
        x = y;
        y = r;
    }
    make_monic(f, &x)
}

/// Extended gcd: returns `(g, u, v)` with `u*a + v*b = g`, `g` monic.
pub fn xgcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> (Dense<F>, Dense<F>, Dense<F>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (constant(f, f.one()), Vec::new());
    let (mut t0, mut t1) = (Vec::new(), constant(f, f.one()));
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1);
        let s2 = sub(f, &s0, &mul(f, &q, &s1));
        let t2 = sub(f, &t0, &mul(f, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    match r0.last() {
        None => (r0, s0, t0),
        Some(lc) => {
            let inv = f.inv(lc).unwrap();
            (scale(f, &r0, &inv), scale(f, &s0, &inv), scale(f, &t0, &inv))
        }
    }
}

/// Squarefree over a perfect field: `gcd(a, a') = 1`. An inseparable `a`
/// (derivative zero, degree positive) is a `p`-th power and fails.
pub fn is_squarefree<F: Field>(f: &F, a: &[F::Elem]) -> bool {
    if a.len() <= 1 {
        return true;
    }
    let g = gcd(f, a, &derivative(f, a));
    g.len() == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::ring::{PrimeField, Rationals};
    use num_rational::BigRational;

    fn q(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
    }

    #[test]
    fn division_identity() {
        let f = Rationals;
        let a = q(&[-1, 0, 0, 1]);
        let b = q(&[1, 1]);
        let (qq, r) = divrem(&f, &a, &b);
        assert_eq!(add(&f, &mul(&f, &qq, &b), &r), a);
        assert!(r.len() < b.len());
    }

    #[test]
    fn xgcd_bezout() {
        let f = PrimeField::new(5);
        let a = vec![1, 0, 1]; // 1 + X^2
        let b = vec![2, 1]; // 2 + X
        let (g, u, v) = xgcd(&f, &a, &b);
        assert_eq!(add(&f, &mul(&f, &u, &a), &mul(&f, &v, &b)), g);
        // 1 + 4 = 0 mod 5 so X = -2 = 3 is a common root
        assert_eq!(g, vec![2, 1]);
    }

    #[test]
    fn gcd_paths_agree() {
        let f = Rationals;
        let a = mul(&f, &q(&[1, 1]), &q(&[3, 0, 2, 5])); // (1 + X)(3 + 2X^2 + 5X^3)
        let b = mul(&f, &q(&[1, 1]), &q(&[-7, 4]));
        let c = mul(&f, &q(&[0, 0, 1]), &q(&[2, 1]));
        for (x, y) in [(&a, &b), (&a, &c), (&c, &b), (&b, &b)] {
            assert_eq!(gcd(&f, x, y), euclid_gcd(&f, x, y));
        }
        assert_eq!(gcd(&f, &a, &b), q(&[1, 1]));
        assert_eq!(gcd(&f, &q(&[0, 0, 3]), &c), q(&[0, 0, 1]));
        assert_eq!(gcd(&f, &q(&[]), &q(&[2, 4])), make_monic(&f, &q(&[2, 4])));
    }

    #[test]
    fn squarefree_char_p() {
        let f = PrimeField::new(2);
        // X^2 + 1 = (X + 1)^2 over F_2, derivative 0
        assert!(!is_squarefree(&f, &[1, 0, 1]));
        assert!(is_squarefree(&f, &[0, 1, 1]));
        assert!(is_squarefree(&f, &[1]));
    }
}
