use std::cmp::Ordering;

/// A power product, stored as `(variable index, exponent)` pairs sorted by
/// variable with no zero exponents.
///
/// The `Ord` instance is graded lexicographic: total degree first, then the
/// exponent of the highest-indexed variable, and so on downwards.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<(u32, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    pub fn var(v: usize) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: usize, e: u32) -> Self {
        if e == 0 {
            Self::one()
        } else {
            Monomial { exps: vec![(v as u32, e)] }
        }
    }

    /// Builds from a dense exponent vector.
    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial { exps: exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(v, &e)| (v as u32, e)).collect() }
    }

    pub fn to_exponents(&self, nvars: usize) -> Vec<u32> {
        let mut out = vec![0; nvars];
        for &(v, e) in &self.exps {
            out[v as usize] = e;
        }
        out
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|&(_, e)| e).sum()
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.exps.binary_search_by_key(&(v as u32), |&(w, _)| w).map(|i| self.exps[i].1).unwrap_or(0)
    }

    /// Iterates `(variable, exponent)` for the variables that occur.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.exps.iter().map(|&(v, e)| (v as usize, e))
    }

    /// Highest variable index that occurs.
    pub fn max_var(&self) -> Option<usize> {
        self.exps.last().map(|&(v, _)| v as usize)
    }

    /// Single variable power `v^e` if the monomial is one.
    pub fn as_pure_power(&self) -> Option<(usize, u32)> {
        match self.exps.as_slice() {
            [(v, e)] => Some((*v as usize, *e)),
            _ => None,
        }
    }

    fn merge(&self, other: &Self, f: impl Fn(u32, u32) -> u32) -> Monomial {
        let mut out = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() || j < other.exps.len() {
            let a = self.exps.get(i);
            let b = other.exps.get(j);
            let (v, e) = match (a, b) {
                (Some(&(va, ea)), Some(&(vb, eb))) if va == vb => {
                    i += 1;
                    j += 1;
                    (va, f(ea, eb))
                }
                (Some(&(va, ea)), Some(&(vb, _))) if va < vb => {
                    i += 1;
                    (va, f(ea, 0))
                }
                (Some(&(va, ea)), None) => {
                    i += 1;
                    (va, f(ea, 0))
                }
                (_, Some(&(vb, eb))) => {
                    j += 1;
                    (vb, f(0, eb))
                }
                (None, None) => unreachable!(),
            };
            if e > 0 {
                out.push((v, e));
            }
        }
        Monomial { exps: out }
    }

    pub fn mul(&self, other: &Self) -> Monomial {
        self.merge(other, |a, b| a + b)
    }

    pub fn lcm(&self, other: &Self) -> Monomial {
        self.merge(other, u32::max)
    }

    pub fn gcd(&self, other: &Self) -> Monomial {
        self.merge(other, u32::min)
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.exps.iter().all(|&(v, e)| other.degree_in(v as usize) >= e)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Self) -> Option<Monomial> {
        self.divides(other).then(|| other.merge(self, |a, b| a - b))
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.gcd(other).is_one()
    }

    pub fn pow(&self, k: u32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial { exps: self.exps.iter().map(|&(v, e)| (v, e * k)).collect() }
    }

    /// Drops variable `v` and shifts the higher indices down by one.
    pub(crate) fn remove_var(&self, v: usize) -> Monomial {
        let v = v as u32;
        Monomial {
            exps: self
                .exps
                .iter()
                .filter(|&&(w, _)| w != v)
                .map(|&(w, e)| if w > v { (w - 1, e) } else { (w, e) })
                .collect(),
        }
    }

    pub(crate) fn remap(&self, map: &[usize]) -> Monomial {
        let mut exps: Vec<(u32, u32)> = self.exps.iter().map(|&(v, e)| (map[v as usize] as u32, e)).collect();
        exps.sort_unstable();
        Monomial { exps }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree().cmp(&other.total_degree()).then_with(|| {
            let mut a = self.exps.iter().rev();
            let mut b = other.exps.iter().rev();
            loop {
                match (a.next(), b.next()) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some(&(va, ea)), Some(&(vb, eb))) => {
                        if va != vb {
                            return va.cmp(&vb);
                        }
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                    }
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn grlex_order() {
        // degree first
        assert!(m(&[3]) > m(&[0, 2]));
        // then higher variable dominates
        assert!(m(&[0, 1]) > m(&[1, 0]));
        assert!(m(&[1, 1]) > m(&[2, 0]));
        assert!(m(&[0, 2]) > m(&[1, 1]));
        assert_eq!(m(&[1, 0, 2]).cmp(&m(&[1, 0, 2])), Ordering::Equal);
    }

    #[test]
    fn division_and_lcm() {
        let a = m(&[2, 1]);
        let b = m(&[1, 3]);
        assert_eq!(a.lcm(&b), m(&[2, 3]));
        assert_eq!(a.gcd(&b), m(&[1, 1]));
        assert!(!a.divides(&b));
        assert_eq!(m(&[1, 1]).quotient_of(&a), Some(m(&[1])));
        assert!(m(&[1]).is_coprime(&m(&[0, 4])));
    }

    #[test]
    fn zero_exponents_not_stored() {
        assert_eq!(m(&[0, 0, 0]), Monomial::one());
        assert_eq!(m(&[0, 2]).iter().collect::<Vec<_>>(), vec![(1, 2)]);
        assert_eq!(m(&[2, 1]).remove_var(0), m(&[1]));
    }
}
