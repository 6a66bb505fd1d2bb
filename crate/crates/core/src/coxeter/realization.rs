//! Faithful realizations used to tell group elements apart during enumeration.
//!
//! The geometric realization identifies `x` with the orbit point `x^-1(rho)`
//! of a regular vector, written in coordinates dual to the simple roots. Right
//! multiplication by a generator is then a single reflection applied to that
//! point. The dihedral realization stores rotation/flip pairs directly.

use std::hash::Hash;
use std::sync::Arc;

use num_integer::Integer;

use crate::algebra::{CyclotomicField, CyclotomicReal, ExactScalar, GoldenElement, RingKind};

use super::CoxeterDiagram;

/// A faithful model of a Coxeter group in which right multiplication by a
/// generator is computable.
pub trait Realization {
    type Elem: Clone + Eq + Hash;

    fn rank(&self) -> usize;
    fn identity(&self) -> Self::Elem;
    fn right_mul_generator(&self, x: &Self::Elem, s: usize) -> Self::Elem;
}

/// Exact geometric realization over the smallest suitable ring.
#[derive(Clone, Debug)]
pub struct GeometricRealization {
    /// `coupling[i][j]` is the coefficient `k_ij` in `s_i(c)_j = c_j + k_ij c_i`;
    /// `k_ij k_ji = 4cos^2(pi/m_ij)`.
    coupling: Vec<Vec<ExactScalar>>,
    rho: Vec<ExactScalar>,
    ring: RingKind,
}

fn lcm_of(ms: impl Iterator<Item = u32>) -> u32 {
    ms.fold(1, |acc, m| acc.lcm(&m))
}

impl GeometricRealization {
    /// Choose the ring from the bond labels: integers when every label is
    /// crystallographic, the golden field when 5 also occurs, and a real
    /// cyclotomic field otherwise.
    pub fn new(d: &CoxeterDiagram) -> Self {
        let labels: Vec<u32> = (0..d.rank())
            .flat_map(|i| (0..d.rank()).map(move |j| (i, j)))
            .filter(|&(i, j)| i < j)
            .map(|(i, j)| d.bond(i, j))
            .collect();
        if labels.iter().all(|m| matches!(m, 2 | 3 | 4 | 6)) {
            Self::build(d, RingKind::Integer, None)
        } else if labels.iter().all(|m| matches!(m, 2..=6)) {
            Self::build(d, RingKind::Golden, None)
        } else {
            Self::cyclotomic(d)
        }
    }

    /// Symmetric realization over `Q(2cos(pi/L))`, `L` the lcm of all labels.
    pub fn cyclotomic(d: &CoxeterDiagram) -> Self {
        let l = lcm_of(
            (0..d.rank())
                .flat_map(|i| (0..d.rank()).map(move |j| (i, j)))
                .filter(|&(i, j)| i < j)
                .map(|(i, j)| d.bond(i, j))
                .filter(|&m| m >= 3),
        );
        let l = l.max(3);
        let field = CyclotomicField::new(l);
        Self::build(d, RingKind::Cyclotomic(l), Some(field))
    }

    fn build(d: &CoxeterDiagram, ring: RingKind, field: Option<Arc<CyclotomicField>>) -> Self {
        let n = d.rank();
        let int = |k: i64| -> ExactScalar {
            match ring {
                RingKind::Integer => ExactScalar::int(k),
                RingKind::Golden => ExactScalar::golden(GoldenElement::from_ints(k, 0)),
                RingKind::Cyclotomic(_) => {
                    ExactScalar::Cyclotomic(CyclotomicReal::from_integer(field.clone().expect("field"), k))
                }
                RingKind::Rational => unreachable!("rationals are not used for realizations"),
            }
        };
        let mut coupling = vec![vec![int(0); n]; n];
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let m = d.bond(i, j);
                let forward = i < j;
                coupling[i][j] = match ring {
                    RingKind::Cyclotomic(_) => ExactScalar::Cyclotomic(
                        field.as_ref().expect("field").two_cos_pi_over(m).expect("label divides lcm"),
                    ),
                    _ => match m {
                        2 => int(0),
                        3 => int(1),
                        4 => int(if forward { 1 } else { 2 }),
                        6 => int(if forward { 1 } else { 3 }),
                        5 => ExactScalar::golden(GoldenElement::phi()),
                        _ => unreachable!("label {m} needs a cyclotomic ring"),
                    },
                };
            }
        }
        let rho = vec![int(1); n];
        Self { coupling, rho, ring }
    }

    pub fn ring(&self) -> RingKind {
        self.ring
    }

    /// Apply `s_i` to weight coordinates.
    pub fn reflect(&self, c: &[ExactScalar], i: usize) -> Vec<ExactScalar> {
        let ci = &c[i];
        c.iter()
            .enumerate()
            .map(|(j, cj)| {
                if j == i {
                    cj.neg()
                } else if self.coupling[i][j].is_zero() {
                    cj.clone()
                } else {
                    cj.add(&self.coupling[i][j].mul(ci).expect("same ring")).expect("same ring")
                }
            })
            .collect()
    }
}

impl Realization for GeometricRealization {
    type Elem = Vec<ExactScalar>;

    fn rank(&self) -> usize {
        self.rho.len()
    }

    fn identity(&self) -> Self::Elem {
        self.rho.clone()
    }

    fn right_mul_generator(&self, x: &Self::Elem, s: usize) -> Self::Elem {
        // (x s)^-1 rho = s (x^-1 rho)
        self.reflect(x, s)
    }
}

/// `I2(m)` as pairs `(k, f)` meaning `r^k f^flip` with `s1 = f`, `s2 = r f`.
#[derive(Clone, Copy, Debug)]
pub struct DihedralRealization {
    pub m: u32,
}

impl Realization for DihedralRealization {
    type Elem = (u32, bool);

    fn rank(&self) -> usize {
        2
    }

    fn identity(&self) -> Self::Elem {
        (0, false)
    }

    fn right_mul_generator(&self, &(k, flip): &Self::Elem, s: usize) -> Self::Elem {
        // (r^k f^a)(r^j f) = r^{k + (-1)^a j} f^{a+1}
        let j = s as u32;
        let k = if flip { (k + self.m - j) % self.m } else { (k + j) % self.m };
        (k, !flip)
    }
}
