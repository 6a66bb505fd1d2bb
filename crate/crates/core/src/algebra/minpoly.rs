//! Integer polynomials needed to pin down `2cos(pi/m)` exactly.
//!
//! Coefficient vectors are in ascending degree order.

use num_bigint::BigInt;
use num_traits::{One, Zero};

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

/// Exact quotient of `a` by a monic `b`; panics if the division leaves a remainder.
fn div_exact_monic(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    trim(&mut r);
    assert!(b.last().is_some_and(One::is_one), "divisor must be monic");
    if r.len() < b.len() {
        assert!(r.is_empty(), "inexact polynomial division");
        return Vec::new();
    }
    let mut q = vec![BigInt::zero(); r.len() - b.len() + 1];
    for shift in (0..q.len()).rev() {
        let f = r[shift + b.len() - 1].clone();
        if f.is_zero() {
            continue;
        }
        for (k, c) in b.iter().enumerate() {
            r[shift + k] -= &f * c;
        }
        q[shift] = f;
    }
    trim(&mut r);
    assert!(r.is_empty(), "inexact polynomial division");
    q
}

/// The `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n >= 1);
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = -BigInt::one();
    p[n as usize] = BigInt::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        p = div_exact_monic(&p, &cyclotomic_polynomial(d));
    }
    p
}

/// `C_k` with `C_k(x + 1/x) = x^k + x^-k`; so `C_k(2cos a) = 2cos(k a)`.
pub fn chebyshev_c(k: u32) -> Vec<BigInt> {
    let mut prev = vec![BigInt::from(2)];
    if k == 0 {
        return prev;
    }
    let mut cur = vec![BigInt::zero(), BigInt::one()];
    for _ in 1..k {
        // C_{j+1} = x C_j - C_{j-1}
        let mut next = vec![BigInt::zero(); cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        trim(&mut next);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Monic minimal polynomial of `2cos(pi/m)` over the rationals, for `m >= 2`.
///
/// `2cos(pi/m) = z + 1/z` with `z` a primitive `2m`-th root of unity, so the
/// palindromic cyclotomic polynomial `Phi_2m` rewritten through `C_k` gives it;
/// its degree is `phi(2m)/2`.
pub fn minimal_polynomial_2cos(m: u32) -> Vec<BigInt> {
    assert!(m >= 2, "2cos(pi/m) needs m >= 2");
    let phi = cyclotomic_polynomial(2 * m);
    let d = (phi.len() - 1) / 2;
    let mut out = vec![BigInt::zero(); d + 1];
    out[0] += &phi[d];
    for k in 1..=d {
        let a = &phi[d + k];
        if a.is_zero() {
            continue;
        }
        for (i, c) in chebyshev_c(k as u32).iter().enumerate() {
            out[i] += a * c;
        }
    }
    trim(&mut out);
    out
}

/// Euler's totient, for sizing checks.
pub fn euler_phi(mut n: u32) -> u32 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn eval_f64(p: &[BigInt], x: f64) -> f64 {
        p.iter().rev().fold(0.0, |acc, c| acc * x + c.to_string().parse::<f64>().unwrap())
    }

    #[test]
    fn small_cases() {
        assert_eq!(minimal_polynomial_2cos(3), ints(&[-1, 1]));
        assert_eq!(minimal_polynomial_2cos(4), ints(&[-2, 0, 1]));
        assert_eq!(minimal_polynomial_2cos(5), ints(&[-1, -1, 1]));
    }

    #[test]
    fn golden_ratio_oracle() {
        // x^2 - x - 1 vanishes at phi numerically and leaves no remainder on division.
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((2.0 * (std::f64::consts::PI / 5.0).cos() - phi).abs() < 1e-12);
        let p = minimal_polynomial_2cos(5);
        assert!(eval_f64(&p, phi).abs() < 1e-12);
        // (x^2 - x - 1) * (x + 3) / (x^2 - x - 1) = x + 3
        let prod = ints(&[-3, -4, 2, 1]);
        assert_eq!(div_exact_monic(&prod, &p), ints(&[3, 1]));
    }

    #[test]
    fn degree_and_root_for_many_m() {
        for m in 2..=30u32 {
            let p = minimal_polynomial_2cos(m);
            assert_eq!(p.len() - 1, (euler_phi(2 * m) / 2) as usize, "m = {m}");
            assert!(p.last().unwrap().is_one());
            let theta = 2.0 * (std::f64::consts::PI / m as f64).cos();
            assert!(eval_f64(&p, theta).abs() < 1e-6, "m = {m}");
        }
    }

    #[test]
    fn chebyshev_doubles_angles() {
        let a = 0.37f64;
        for k in 0..8 {
            let v = eval_f64(&chebyshev_c(k), 2.0 * a.cos());
            assert!((v - 2.0 * (k as f64 * a).cos()).abs() < 1e-9);
        }
    }
}
