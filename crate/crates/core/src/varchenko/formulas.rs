//! Closed formulas known for particular families, and the product rule for
//! reducible groups.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{Factorization, Monomial, VarId};
use crate::coxeter::{EnumeratedGroup, ReflId};

use super::VarchenkoError;

const MAX_SUBSET_N: usize = 20;

fn factorial(n: usize) -> Option<u128> {
    (1..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k))
}

fn to_exponent(n: usize, value: Option<u128>) -> Result<u64, VarchenkoError> {
    value.and_then(|v| u64::try_from(v).ok()).ok_or(VarchenkoError::ExponentOverflow(n))
}

/// `prod_{k=1}^{n-1} (1 - q^{k^2+k})^{n!(n-k)/(k^2+k)}` in the variable `0`.
pub fn zagier_formula(n: usize) -> Result<Factorization, VarchenkoError> {
    assert!(n >= 2, "n must be at least 2");
    let fact = factorial(n).ok_or(VarchenkoError::ExponentOverflow(n))?;
    let mut f = Factorization::new();
    for k in 1..n {
        let numerator = fact.checked_mul((n - k) as u128).ok_or(VarchenkoError::ExponentOverflow(n))?;
        let denominator = (k * k + k) as u128;
        if numerator % denominator != 0 {
            return Err(VarchenkoError::NonIntegerExponent { numerator, denominator });
        }
        let e = to_exponent(n, Some(numerator / denominator))?;
        f.push(Monomial::from_pairs([(0, (k * (k + 1) / 2) as u32)]), e);
    }
    Ok(f.normalize())
}

fn subsets(n: usize, min: usize) -> impl Iterator<Item = Vec<usize>> {
    assert!(n <= MAX_SUBSET_N, "subset enumeration limited to n <= {MAX_SUBSET_N}");
    (0u32..1 << n)
        .filter(move |m| m.count_ones() as usize >= min)
        .map(move |m| (1..=n).filter(|&i| m & (1 << (i - 1)) != 0).collect())
}

fn pairs(set: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    set.iter().enumerate().flat_map(move |(a, &i)| set[a + 1..].iter().map(move |&j| (i, j)))
}

/// Type `A_{n-1}` with one variable per pair: the product over `I ⊆ [n]`,
/// `|I| >= 2`, of `(1 - prod_{{i,j} ⊆ I} a_{ij}^2)^{(|I|-2)!(n-|I|+1)!}`.
/// `var(i, j)` receives 1-based `i < j`.
pub fn duchamp_formula_a(n: usize, var: &dyn Fn(usize, usize) -> VarId) -> Result<Factorization, VarchenkoError> {
    assert!(n >= 2, "n must be at least 2");
    let mut f = Factorization::new();
    for set in subsets(n, 2) {
        let k = set.len();
        let e = to_exponent(n, factorial(k - 2).zip(factorial(n - k + 1)).and_then(|(a, b)| a.checked_mul(b)))?;
        f.push(Monomial::product_of(pairs(&set).map(|(i, j)| var(i, j))), e);
    }
    Ok(f.normalize())
}

/// A hyperplane of the `B_n` arrangement, 1-based with `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BHyperplane {
    /// `x_i = 0`
    Coord(usize),
    /// `x_i = x_j`
    Diff(usize, usize),
    /// `x_i = -x_j`
    Sum(usize, usize),
}

impl fmt::Display for BHyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Coord(i) => write!(f, "H_{i}"),
            Self::Diff(i, j) => write!(f, "H_{i},{j}"),
            Self::Sum(i, j) => write!(f, "H_-{i},{j}"),
        }
    }
}

/// The hyperplane `H_{a,b}` for signed indices with distinct magnitudes.
fn signed_pair(a: i64, b: i64) -> BHyperplane {
    let (i, j) = (a.unsigned_abs() as usize, b.unsigned_abs() as usize);
    let (i, j) = (i.min(j), i.max(j));
    if (a > 0) == (b > 0) {
        BHyperplane::Diff(i, j)
    } else {
        BHyperplane::Sum(i, j)
    }
}

/// The `B_n` determinant as a product over signed subsets and over subsets
/// of `[n]`. Each signed class is represented by the member whose entry of
/// smallest magnitude is positive.
pub fn type_b_formula(n: usize, var: &dyn Fn(BHyperplane) -> VarId) -> Result<Factorization, VarchenkoError> {
    assert!(n >= 1, "n must be at least 1");
    let pow2 = |k: usize| 1u128.checked_shl(k as u32);
    let mut f = Factorization::new();
    for set in subsets(n, 2) {
        let k = set.len();
        let e = to_exponent(
            n,
            pow2(n - k + 1)
                .zip(factorial(k - 2))
                .zip(factorial(n - k + 1))
                .and_then(|((a, b), c)| a.checked_mul(b)?.checked_mul(c)),
        )?;
        for signs in 0u32..1 << (k - 1) {
            let signed: Vec<i64> = set
                .iter()
                .enumerate()
                .map(|(r, &i)| if r > 0 && signs & (1 << (r - 1)) != 0 { -(i as i64) } else { i as i64 })
                .collect();
            let m = Monomial::product_of(
                signed.iter().enumerate().flat_map(|(r, &a)| signed[r + 1..].iter().map(move |&b| signed_pair(a, b))).map(var),
            );
            f.push(m, e);
        }
    }
    for set in subsets(n, 1) {
        let k = set.len();
        let e = to_exponent(
            n,
            pow2(n - 1)
                .zip(factorial(k - 1))
                .zip(factorial(n - k))
                .and_then(|((a, b), c)| a.checked_mul(b)?.checked_mul(c)),
        )?;
        let vars = set
            .iter()
            .map(|&i| var(BHyperplane::Coord(i)))
            .chain(pairs(&set).flat_map(|(i, j)| [var(BHyperplane::Diff(i, j)), var(BHyperplane::Sum(i, j))]));
        f.push(Monomial::product_of(vars), e);
    }
    Ok(f.normalize())
}

/// `(det_1)^{|W_2|} (det_2)^{|W_1|}` for factors on disjoint variables.
pub fn reducible_product(
    f1: &Factorization,
    order2: u64,
    f2: &Factorization,
    order1: u64,
) -> Result<Factorization, VarchenkoError> {
    let v2 = f2.variables();
    if let Some(&v) = f1.variables().iter().find(|v| v2.binary_search(v).is_ok()) {
        return Err(VarchenkoError::VariableCollision(v));
    }
    Ok(f1.pow(order2).mul(&f2.pow(order1)))
}

/// Image of each reflection of `factor` in `product`, where the generators of
/// `factor` sit at `offset..offset + rank` in `product`.
pub fn embed_reflections(factor: &EnumeratedGroup, product: &EnumeratedGroup, offset: usize) -> Vec<ReflId> {
    (0..factor.reflection_count() as ReflId)
        .map(|t| {
            let word: Vec<usize> = factor.reduced_word(factor.reflection(t)).iter().map(|&s| s + offset).collect();
            product.reflection_index(product.from_word(&word)).expect("reflections embed as reflections")
        })
        .collect()
}

fn is_path(g: &EnumeratedGroup, last: u32) -> bool {
    let r = g.rank();
    let d = g.diagram();
    (0..r).all(|i| {
        (0..i).all(|j| {
            let expected = if i == j + 1 { if i == r - 1 { last } else { 3 } } else { 2 };
            d.bond(i, j) == expected
        })
    })
}

/// Transposition `(i j)` of each reflection of `A_{n-1}`, 1-based, where
/// `s_k` swaps `k` and `k+1`.
pub fn type_a_pair_dictionary(g: &EnumeratedGroup) -> Result<Vec<(usize, usize)>, VarchenkoError> {
    if !g.diagram().is_irreducible() || !is_path(g, 3) {
        return Err(VarchenkoError::WrongType { expected: "A".into() });
    }
    let n = g.rank() + 1;
    Ok((0..g.reflection_count() as ReflId)
        .map(|t| {
            let mut perm: Vec<usize> = (1..=n).collect();
            for s in g.reduced_word(g.reflection(t)) {
                perm.swap(s, s + 1);
            }
            let moved: Vec<usize> = (1..=n).filter(|&i| perm[i - 1] != i).collect();
            assert_eq!(moved.len(), 2, "reflection is not a transposition");
            (moved[0], moved[1])
        })
        .collect())
}

/// Hyperplane of each reflection of `B_n` under the signed permutation
/// action: `s_k` swaps `k` and `k+1` for `k < n`, and `s_n` negates `n`.
pub fn b_hyperplane_dictionary(g: &EnumeratedGroup) -> Result<Vec<BHyperplane>, VarchenkoError> {
    let n = g.rank();
    let ok = g.diagram().is_irreducible() && (n == 1 || is_path(g, 4));
    if !ok {
        return Err(VarchenkoError::WrongType { expected: "B".into() });
    }
    Ok((0..g.reflection_count() as ReflId)
        .map(|t| {
            let mut img: Vec<i64> = (1..=n as i64).collect();
            for s in g.reduced_word(g.reflection(t)) {
                for x in img.iter_mut() {
                    let a = x.unsigned_abs() as usize;
                    if s + 1 == n {
                        if a == n {
                            *x = -*x;
                        }
                    } else if a == s + 1 {
                        *x = x.signum() * (s + 2) as i64;
                    } else if a == s + 2 {
                        *x = x.signum() * (s + 1) as i64;
                    }
                }
            }
            let moved: Vec<usize> = (1..=n).filter(|&i| img[i - 1] != i as i64).collect();
            match moved[..] {
                [i] => {
                    assert_eq!(img[i - 1], -(i as i64));
                    BHyperplane::Coord(i)
                }
                [i, _] => signed_pair(i as i64, img[i - 1]),
                _ => panic!("reflection is not a signed transposition"),
            }
        })
        .collect())
}
