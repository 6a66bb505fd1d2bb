//! Exact scalars for the geometric representation of a Coxeter group.
//!
//! Four rings are supported: the integers, the rationals, the golden field
//! `Q(phi)` with `phi^2 = phi + 1`, and real cyclotomic fields `Q(2cos(pi/m))`.
//! Arithmetic never rounds; every value is kept in a canonical form so that
//! structural equality is ring equality.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::minpoly::{chebyshev_c, minimal_polynomial_2cos};
use super::AlgebraError;

/// `a + b*phi` with `phi` the golden ratio.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GoldenElement {
    pub a: BigRational,
    pub b: BigRational,
}

impl GoldenElement {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Self { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        Self::new(BigRational::from_integer(a.into()), BigRational::from_integer(b.into()))
    }

    pub fn phi() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&self.a + &o.a, &self.b + &o.b)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&self.a - &o.a, &self.b - &o.b)
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.a, -&self.b)
    }

    pub fn mul(&self, o: &Self) -> Self {
        // (a + b phi)(c + d phi) = (ac + bd) + (ad + bc + bd) phi
        let bd = &self.b * &o.b;
        Self::new(&self.a * &o.a + &bd, &self.a * &o.b + &self.b * &o.a + bd)
    }

    /// Galois conjugate `phi -> 1 - phi`.
    pub fn conjugate(&self) -> Self {
        Self::new(&self.a + &self.b, -&self.b)
    }

    /// Field norm `a^2 + ab - b^2`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a + &self.a * &self.b - &self.b * &self.b
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let c = self.conjugate();
        Some(Self::new(c.a / &n, c.b / n))
    }
}

/// A real cyclotomic field `Q(theta)` with `theta = 2cos(pi/m)`.
#[derive(Debug, PartialEq, Eq)]
pub struct CyclotomicField {
    m: u32,
    /// Monic minimal polynomial of `theta`, coefficients in ascending degree.
    minpoly: Vec<BigInt>,
}

impl CyclotomicField {
    pub fn new(m: u32) -> Arc<Self> {
        Arc::new(Self { m, minpoly: minimal_polynomial_2cos(m) })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn minpoly(&self) -> &[BigInt] {
        &self.minpoly
    }

    /// `theta` itself.
    pub fn generator(self: &Arc<Self>) -> CyclotomicReal {
        CyclotomicReal::from_poly(self.clone(), vec![BigRational::zero(), BigRational::one()])
    }

    /// `2cos(pi/k)` inside this field; requires `k | m` (or `k == 2`).
    pub fn two_cos_pi_over(self: &Arc<Self>, k: u32) -> Option<CyclotomicReal> {
        if k == 2 {
            return Some(CyclotomicReal::zero(self.clone()));
        }
        if k == 0 || !self.m.is_multiple_of(k) {
            return None;
        }
        // 2cos(j*pi/m) = C_j(2cos(pi/m)) with C_j the Chebyshev-type polynomial.
        let c = chebyshev_c(self.m / k);
        let coeffs = c.into_iter().map(BigRational::from_integer).collect();
        Some(CyclotomicReal::from_poly(self.clone(), coeffs))
    }
}

/// Element of a [`CyclotomicField`], stored as a reduced polynomial in `theta`.
#[derive(Clone, Debug)]
pub struct CyclotomicReal {
    field: Arc<CyclotomicField>,
    /// Ascending coefficients, degree below the field degree, no trailing zeros.
    coeffs: Vec<BigRational>,
}

impl PartialEq for CyclotomicReal {
    fn eq(&self, other: &Self) -> bool {
        self.field.m == other.field.m && self.coeffs == other.coeffs
    }
}

impl Eq for CyclotomicReal {}

impl Hash for CyclotomicReal {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.m.hash(state);
        self.coeffs.hash(state);
    }
}

impl PartialOrd for CyclotomicReal {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CyclotomicReal {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.field.m, &self.coeffs).cmp(&(other.field.m, &other.coeffs))
    }
}

fn trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Remainder of `a` modulo a monic integer polynomial.
fn poly_rem_monic(mut a: Vec<BigRational>, modulus: &[BigInt]) -> Vec<BigRational> {
    let d = modulus.len() - 1;
    trim(&mut a);
    while a.len() > d {
        let top = a.pop().expect("nonempty");
        let shift = a.len() - d;
        for (k, c) in modulus[..d].iter().enumerate() {
            a[shift + k] -= &top * BigRational::from_integer(c.clone());
        }
        trim(&mut a);
    }
    a
}

/// Polynomial division over Q: returns (quotient, remainder).
fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead = b.last().expect("nonzero divisor").clone();
    let mut q = vec![BigRational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let f = r.last().expect("nonempty") / &lead;
        for (k, c) in b.iter().enumerate() {
            r[shift + k] -= &f * c;
        }
        q[shift] = f;
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out: Vec<BigRational> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            match b.get(i) {
                Some(y) => x - y,
                None => x,
            }
        })
        .collect();
    trim(&mut out);
    out
}

impl CyclotomicReal {
    pub fn from_poly(field: Arc<CyclotomicField>, coeffs: Vec<BigRational>) -> Self {
        let coeffs = poly_rem_monic(coeffs, &field.minpoly);
        Self { field, coeffs }
    }

    pub fn zero(field: Arc<CyclotomicField>) -> Self {
        Self { field, coeffs: Vec::new() }
    }

    pub fn from_integer(field: Arc<CyclotomicField>, n: i64) -> Self {
        Self::from_poly(field, vec![BigRational::from_integer(n.into())])
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn same_field(&self, o: &Self) -> Result<(), AlgebraError> {
        if Arc::ptr_eq(&self.field, &o.field) || *self.field == *o.field {
            Ok(())
        } else {
            Err(AlgebraError::MixedRings)
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self, AlgebraError> {
        self.same_field(o)?;
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut c: Vec<BigRational> = (0..n)
            .map(|i| match (self.coeffs.get(i), o.coeffs.get(i)) {
                (Some(x), Some(y)) => x + y,
                (Some(x), None) | (None, Some(x)) => x.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        trim(&mut c);
        Ok(Self { field: self.field.clone(), coeffs: c })
    }

    pub fn neg(&self) -> Self {
        Self { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, o: &Self) -> Result<Self, AlgebraError> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Result<Self, AlgebraError> {
        self.same_field(o)?;
        Ok(Self::from_poly(self.field.clone(), poly_mul(&self.coeffs, &o.coeffs)))
    }

    /// Inverse via the extended Euclidean algorithm against the minimal polynomial.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let modulus: Vec<BigRational> =
            self.field.minpoly.iter().cloned().map(BigRational::from_integer).collect();
        // Invariant: s_i * self == r_i (mod minpoly).
        let (mut r0, mut r1) = (modulus, self.coeffs.clone());
        let (mut s0, mut s1) = (Vec::<BigRational>::new(), vec![BigRational::one()]);
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r0 is a nonzero constant because the minimal polynomial is irreducible.
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].clone();
        let coeffs = s0.into_iter().map(|x| x / &c).collect();
        Some(Self::from_poly(self.field.clone(), coeffs))
    }
}

/// An exact scalar from one of the supported rings.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExactScalar {
    Integer(BigInt),
    Rational(Box<BigRational>),
    Golden(Box<GoldenElement>),
    Cyclotomic(CyclotomicReal),
}

/// Which ring an [`ExactScalar`] lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingKind {
    Integer,
    Rational,
    Golden,
    Cyclotomic(u32),
}

impl ExactScalar {
    pub fn int(n: i64) -> Self {
        Self::Integer(n.into())
    }

    pub fn rational(num: i64, den: i64) -> Self {
        Self::Rational(Box::new(BigRational::new(num.into(), den.into())))
    }

    pub fn golden(g: GoldenElement) -> Self {
        Self::Golden(Box::new(g))
    }

    pub fn kind(&self) -> RingKind {
        match self {
            Self::Integer(_) => RingKind::Integer,
            Self::Rational(_) => RingKind::Rational,
            Self::Golden(_) => RingKind::Golden,
            Self::Cyclotomic(c) => RingKind::Cyclotomic(c.field.m),
        }
    }

    /// The zero of the same ring as `self`.
    pub fn zero_like(&self) -> Self {
        match self {
            Self::Integer(_) => Self::Integer(BigInt::zero()),
            Self::Rational(_) => Self::Rational(Box::new(BigRational::zero())),
            Self::Golden(_) => Self::golden(GoldenElement::from_ints(0, 0)),
            Self::Cyclotomic(c) => Self::Cyclotomic(CyclotomicReal::zero(c.field.clone())),
        }
    }

    /// The one of the same ring as `self`.
    pub fn one_like(&self) -> Self {
        match self {
            Self::Integer(_) => Self::Integer(BigInt::one()),
            Self::Rational(_) => Self::Rational(Box::new(BigRational::one())),
            Self::Golden(_) => Self::golden(GoldenElement::from_ints(1, 0)),
            Self::Cyclotomic(c) => Self::Cyclotomic(CyclotomicReal::from_integer(c.field.clone(), 1)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Self::Integer(x) => x.is_zero(),
            Self::Rational(x) => x.is_zero(),
            Self::Golden(x) => x.is_zero(),
            Self::Cyclotomic(x) => x.is_zero(),
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self, AlgebraError> {
        Ok(match (self, o) {
            (Self::Integer(a), Self::Integer(b)) => Self::Integer(a + b),
            (Self::Rational(a), Self::Rational(b)) => Self::Rational(Box::new(&**a + &**b)),
            (Self::Golden(a), Self::Golden(b)) => Self::golden(a.add(b)),
            (Self::Cyclotomic(a), Self::Cyclotomic(b)) => Self::Cyclotomic(a.add(b)?),
            _ => return Err(AlgebraError::MixedRings),
        })
    }

    pub fn sub(&self, o: &Self) -> Result<Self, AlgebraError> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        match self {
            Self::Integer(a) => Self::Integer(-a),
            Self::Rational(a) => Self::Rational(Box::new(-&**a)),
            Self::Golden(a) => Self::golden(a.neg()),
            Self::Cyclotomic(a) => Self::Cyclotomic(a.neg()),
        }
    }

    pub fn mul(&self, o: &Self) -> Result<Self, AlgebraError> {
        Ok(match (self, o) {
            (Self::Integer(a), Self::Integer(b)) => Self::Integer(a * b),
            (Self::Rational(a), Self::Rational(b)) => Self::Rational(Box::new(&**a * &**b)),
            (Self::Golden(a), Self::Golden(b)) => Self::golden(a.mul(b)),
            (Self::Cyclotomic(a), Self::Cyclotomic(b)) => Self::Cyclotomic(a.mul(b)?),
            _ => return Err(AlgebraError::MixedRings),
        })
    }

    pub fn div(&self, o: &Self) -> Result<Self, AlgebraError> {
        if self.kind() != o.kind() {
            return Err(AlgebraError::MixedRings);
        }
        if o.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        match o {
            Self::Integer(_) => Err(AlgebraError::NotAField),
            Self::Rational(b) => self.mul(&Self::Rational(Box::new(b.recip()))),
            Self::Golden(b) => self.mul(&Self::golden(b.inv().ok_or(AlgebraError::DivisionByZero)?)),
            Self::Cyclotomic(b) => {
                self.mul(&Self::Cyclotomic(b.inv().ok_or(AlgebraError::DivisionByZero)?))
            }
        }
    }

    /// Ring equality; fails on mixed rings instead of answering `false`.
    pub fn try_eq(&self, o: &Self) -> Result<bool, AlgebraError> {
        if self.kind() != o.kind() {
            return Err(AlgebraError::MixedRings);
        }
        Ok(self == o)
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Integer(a) => write!(f, "{a}"),
            Self::Rational(a) => write!(f, "{}", fmt_rational(a)),
            Self::Golden(g) => {
                if g.b.is_zero() {
                    write!(f, "{}", fmt_rational(&g.a))
                } else if g.a.is_zero() {
                    write!(f, "{}*phi", fmt_rational(&g.b))
                } else {
                    let sign = if g.b.is_negative() { "-" } else { "+" };
                    write!(f, "{} {sign} {}*phi", fmt_rational(&g.a), fmt_rational(&g.b.abs()))
                }
            }
            Self::Cyclotomic(c) => {
                if c.coeffs.is_empty() {
                    return write!(f, "0");
                }
                let terms: Vec<String> = c
                    .coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(i, x)| match i {
                        0 => fmt_rational(x),
                        1 => format!("{}*t", fmt_rational(x)),
                        _ => format!("{}*t^{i}", fmt_rational(x)),
                    })
                    .collect();
                write!(f, "{}", terms.join(" + "))
            }
        }
    }
}
