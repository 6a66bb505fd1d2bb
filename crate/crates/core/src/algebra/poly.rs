//! Sparse multivariate integer polynomials, used only for the small fully
//! symbolic determinant checks.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::monomial::{Factorization, Monomial};

/// `sum c_m * m` keyed by [`Monomial`] in graded order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Monomial::one())
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, BigInt::one())
    }

    pub fn term(m: Monomial, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (lm, lc) = d.leading()?;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((m, c)) = rem.leading() {
            let qm = m.div(lm)?;
            if (c % lc) != BigInt::zero() {
                return None;
            }
            let qc = c / lc;
            let t = Self::term(qm, qc);
            rem = rem.sub(&t.mul(d));
            quot = quot.add(&t);
        }
        Some(quot)
    }

    /// Expand `prod (1 - m_i^2)^{e_i}`.
    pub fn from_factorization(f: &Factorization) -> Self {
        f.factors.iter().fold(Self::one(), |acc, x| {
            let base = Self::one().sub(&Self::monomial(x.monomial.pow(2)));
            acc.mul(&base.pow(x.exponent))
        })
    }
}

/// Determinant of a small square matrix of polynomials by Laplace expansion,
/// memoized over column subsets (`O(n 2^n)` polynomial products).
pub fn symbolic_det(matrix: &[Vec<Poly>]) -> Poly {
    let n = matrix.len();
    assert!(n <= 16, "symbolic determinant is for tiny matrices only");
    assert!(matrix.iter().all(|r| r.len() == n));
    // minors[mask] = det of rows n-|mask|.. restricted to the columns in mask.
    let mut minors: Vec<Poly> = vec![Poly::zero(); 1 << n];
    minors[0] = Poly::one();
    for mask in 1usize..(1 << n) {
        let k = mask.count_ones() as usize;
        let row = n - k;
        let mut acc = Poly::zero();
        for (pos, col) in (0..n).filter(|c| mask >> c & 1 == 1).enumerate() {
            let entry = &matrix[row][col];
            if entry.is_zero() {
                continue;
            }
            let term = entry.mul(&minors[mask & !(1 << col)]);
            acc = if pos % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        minors[mask] = acc;
    }
    minors.pop().expect("full mask")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(v: u32) -> Poly {
        Poly::monomial(Monomial::var(v))
    }

    #[test]
    fn two_by_two_symbolic() {
        // det [[1, a], [a, 1]] = 1 - a^2
        let m = vec![vec![Poly::one(), var(0)], vec![var(0), Poly::one()]];
        let d = symbolic_det(&m);
        assert_eq!(d, Poly::one().sub(&var(0).mul(&var(0))));
    }

    #[test]
    fn permutation_matrix_sign() {
        let z = Poly::zero;
        let m = vec![vec![z(), Poly::one(), z()], vec![Poly::one(), z(), z()], vec![z(), z(), Poly::one()]];
        assert_eq!(symbolic_det(&m), Poly::one().neg());
    }

    #[test]
    fn exact_division() {
        let a = var(0);
        let b = var(1);
        let p = a.add(&b).mul(&a.sub(&b)).mul(&Poly::one().sub(&a.mul(&a)));
        let q = p.div_exact(&a.add(&b)).unwrap();
        assert_eq!(q, a.sub(&b).mul(&Poly::one().sub(&a.mul(&a))));
        assert_eq!(p.div_exact(&a.add(&Poly::one()).add(&b)), None);
    }

    #[test]
    fn expand_factorization() {
        let f = Factorization::from_pairs([(Monomial::var(0), 2)]);
        let a2 = var(0).mul(&var(0));
        let expected = Poly::one().sub(&a2).mul(&Poly::one().sub(&a2));
        assert_eq!(Poly::from_factorization(&f), expected);
    }
}
