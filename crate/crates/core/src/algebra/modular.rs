//! Prime-field arithmetic and the dense determinant kernel.

use std::fmt;

use rayon::prelude::*;

/// A prime field `Z/pZ` with `p` odd and below `2^63`.
///
/// Multiplication uses Montgomery reduction internally; the public API always
/// speaks in ordinary residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
    /// `-p^-1 mod 2^64`
    p_neg_inv: u64,
    /// `2^128 mod p`
    r2: u64,
}

impl PrimeField {
    /// Panics unless `p` is an odd prime below `2^63`.
    pub fn new(p: u64) -> Self {
        assert!(p > 2 && p < (1 << 63) && is_prime(p), "{p} is not an odd prime below 2^63");
        let mut inv: u64 = 1;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = ((r as u128 * r as u128) % p as u128) as u64;
        Self { p, p_neg_inv: inv.wrapping_neg(), r2 }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.p_neg_inv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline]
    fn to_mont(&self, a: u64) -> u64 {
        self.redc(a as u128 * self.r2 as u128)
    }

    #[inline]
    fn from_mont(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }

    #[inline]
    fn mont_mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    pub fn reduce_i64(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = self.to_mont(a % self.p);
        let mut acc = self.to_mont(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mont_mul(acc, base);
            }
            base = self.mont_mul(base, base);
            e >>= 1;
        }
        self.from_mont(acc)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u64) -> Option<u64> {
        let a = a % self.p;
        (a != 0).then(|| self.pow(a, self.p - 2))
    }

    pub fn element(&self, value: u64) -> ModScalar {
        ModScalar { value: value % self.p, modulus: self.p }
    }
}

/// A residue tagged with its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModScalar {
    pub value: u64,
    pub modulus: u64,
}

impl ModScalar {
    fn field(&self, o: &Self) -> PrimeField {
        assert_eq!(self.modulus, o.modulus, "residues from different fields");
        PrimeField::new(self.modulus)
    }

    pub fn add(self, o: Self) -> Self {
        let f = self.field(&o);
        f.element(f.add(self.value, o.value))
    }

    pub fn sub(self, o: Self) -> Self {
        let f = self.field(&o);
        f.element(f.sub(self.value, o.value))
    }

    pub fn mul(self, o: Self) -> Self {
        let f = self.field(&o);
        f.element(f.mul(self.value, o.value))
    }
}

impl fmt::Display for ModScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

/// Determinant of a square matrix over the field, by Gaussian elimination
/// with row pivoting. Entries must already be reduced below `p`.
///
/// Row updates below the pivot run in parallel; each row's update is
/// independent, so the result does not depend on the worker count.
pub fn det_mod_p(field: &PrimeField, mut rows: Vec<Vec<u64>>) -> u64 {
    let n = rows.len();
    assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
    for row in rows.iter_mut() {
        for x in row.iter_mut() {
            debug_assert!(*x < field.p);
            *x = field.to_mont(*x);
        }
    }
    let mut det = field.to_mont(1);
    let mut negate = false;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| rows[r][col] != 0) else {
            return 0;
        };
        if piv != col {
            rows.swap(piv, col);
            negate = !negate;
        }
        let (top, rest) = rows.split_at_mut(col + 1);
        let pivot_row = &top[col];
        let pivot = pivot_row[col];
        det = field.mont_mul(det, pivot);
        let inv = field.to_mont(field.inv(field.from_mont(pivot)).expect("nonzero pivot"));
        let eliminate = |row: &mut Vec<u64>| {
            let x = row[col];
            if x == 0 {
                return;
            }
            let f = field.mont_mul(x, inv);
            for j in col..n {
                let v = pivot_row[j];
                if v != 0 {
                    row[j] = field.sub(row[j], field.mont_mul(f, v));
                }
            }
        };
        if (n - col) * (n - col) > 1 << 14 {
            rest.par_iter_mut().for_each(eliminate);
        } else {
            rest.iter_mut().for_each(eliminate);
        }
    }
    let d = field.from_mont(det);
    if negate {
        field.sub(0, d)
    } else {
        d
    }
}

/// Determinant of a matrix of [`ModScalar`]s sharing one modulus.
pub fn det_mod_scalars(matrix: &[Vec<ModScalar>]) -> ModScalar {
    let p = matrix.first().and_then(|r| r.first()).map(|x| x.modulus);
    let Some(p) = p else {
        // The empty determinant is 1 in every field; modulus is unknown here.
        return ModScalar { value: 1, modulus: 0 };
    };
    let field = PrimeField::new(p);
    let rows = matrix
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    assert_eq!(x.modulus, p, "entries must share one modulus");
                    x.value
                })
                .collect()
        })
        .collect();
    field.element(det_mod_p(&field, rows))
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The largest prime strictly below `2^62`.
pub const DEFAULT_PRIME: u64 = 4_611_686_018_427_387_847;

/// The `count` largest primes strictly below `bound`, descending.
pub fn primes_below(bound: u64, count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut n = bound - 1;
    while out.len() < count && n > 2 {
        if is_prime(n) {
            out.push(n);
        }
        n -= 1;
    }
    out
}

/// `count` distinct verification primes, starting from [`DEFAULT_PRIME`].
pub fn default_primes(count: usize) -> Vec<u64> {
    primes_below(1 << 62, count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cofactor_det(f: &PrimeField, m: &[Vec<u64>]) -> u64 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        let mut acc = 0;
        for j in 0..n {
            let minor: Vec<Vec<u64>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect())
                .collect();
            let term = f.mul(m[0][j], cofactor_det(f, &minor));
            acc = if j % 2 == 0 { f.add(acc, term) } else { f.sub(acc, term) };
        }
        acc
    }

    #[test]
    fn default_prime_is_largest_below_2_62() {
        assert!(is_prime(DEFAULT_PRIME));
        assert!(((DEFAULT_PRIME + 1)..(1 << 62)).all(|n| !is_prime(n)));
        let ps = default_primes(3);
        assert_eq!(ps[0], DEFAULT_PRIME);
        assert_eq!(ps.len(), 3);
        assert!(ps.iter().all(|&p| p > 1 << 61));
    }

    #[test]
    fn small_determinants() {
        let f = PrimeField::new(7);
        assert_eq!(det_mod_p(&f, vec![vec![1, 0], vec![0, 1]]), 1);
        assert_eq!(det_mod_p(&f, vec![vec![1, 3], vec![3, 1]]), 6);
        assert_eq!(det_mod_p(&f, vec![vec![0, 1], vec![1, 0]]), 6);
        assert_eq!(det_mod_p(&f, vec![vec![2, 4], vec![1, 2]]), 0);
        assert_eq!(det_mod_p(&f, vec![]), 1);
    }

    #[test]
    fn scalar_wrapper_matches_kernel() {
        let f = PrimeField::new(7);
        let m = vec![vec![f.element(1), f.element(3)], vec![f.element(3), f.element(1)]];
        assert_eq!(det_mod_scalars(&m), f.element(6));
        assert_eq!(f.element(3).mul(f.element(5)), f.element(1));
        assert_eq!(f.element(3).sub(f.element(5)), f.element(5));
    }

    #[test]
    fn exhaustive_2x2_mod_5_matches_cofactor() {
        let f = PrimeField::new(5);
        for code in 0..5u64.pow(4) {
            let e: Vec<u64> = (0..4).map(|k| (code / 5u64.pow(k)) % 5).collect();
            let m = vec![vec![e[0], e[1]], vec![e[2], e[3]]];
            assert_eq!(det_mod_p(&f, m.clone()), cofactor_det(&f, &m));
        }
    }

    #[test]
    fn exhaustive_3x3_binary_entries_match_cofactor() {
        let f = PrimeField::new(3);
        for code in 0..(1u32 << 9) {
            let m: Vec<Vec<u64>> =
                (0..3).map(|i| (0..3).map(|j| ((code >> (3 * i + j)) & 1) as u64).collect()).collect();
            assert_eq!(det_mod_p(&f, m.clone()), cofactor_det(&f, &m));
        }
    }

    #[test]
    fn random_matrices_match_cofactor() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for &p in &[DEFAULT_PRIME, 1_000_000_007, 13] {
            let f = PrimeField::new(p);
            for _ in 0..100 {
                let n = rng.random_range(1..=4);
                let m: Vec<Vec<u64>> =
                    (0..n).map(|_| (0..n).map(|_| rng.random_range(0..p)).collect()).collect();
                assert_eq!(det_mod_p(&f, m.clone()), cofactor_det(&f, &m));
            }
        }
    }

    #[test]
    fn parallel_path_is_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = PrimeField::new(DEFAULT_PRIME);
        let n = 160;
        let m: Vec<Vec<u64>> =
            (0..n).map(|_| (0..n).map(|_| rng.random_range(0..DEFAULT_PRIME)).collect()).collect();
        let a = det_mod_p(&f, m.clone());
        let b = det_mod_p(&f, m.clone());
        assert_eq!(a, b);
        // Multilinearity in the first row: det with row0 scaled by 3 is 3*det.
        let mut m3 = m.clone();
        for x in m3[0].iter_mut() {
            *x = f.mul(*x, 3);
        }
        assert_eq!(det_mod_p(&f, m3), f.mul(a, 3));
    }

    #[test]
    fn inverse_and_pow() {
        let f = PrimeField::new(DEFAULT_PRIME);
        for a in [1u64, 2, 12345, DEFAULT_PRIME - 1] {
            let i = f.inv(a).unwrap();
            assert_eq!(f.mul(a, i), 1);
        }
        assert_eq!(f.inv(0), None);
        assert_eq!(f.pow(3, 4), 81);
    }
}
