//! The Varchenko matrix `B(C, D) = prod_{H separating C, D} a_H`.

use rayon::prelude::*;

use crate::algebra::{Monomial, Poly, PrimeField};
use crate::arrangement::separating_set;
use crate::coxeter::{ElemId, EnumeratedGroup};

use super::{VarchenkoError, WeightAssignment};

/// Largest group for which the full monomial matrix is materialized.
pub const FULL_MATRIX_CAP: usize = 1152;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarchenkoMatrix {
    order: usize,
    entries: Vec<Monomial>,
}

impl VarchenkoMatrix {
    pub fn build(g: &EnumeratedGroup, w: &WeightAssignment) -> Result<Self, VarchenkoError> {
        Self::build_capped(g, w, FULL_MATRIX_CAP)
    }

    pub fn build_capped(g: &EnumeratedGroup, w: &WeightAssignment, cap: usize) -> Result<Self, VarchenkoError> {
        let n = g.order();
        if n > cap {
            return Err(VarchenkoError::MatrixTooLarge { order: n, cap });
        }
        let entries = (0..n as ElemId)
            .into_par_iter()
            .flat_map_iter(|x| {
                (0..n as ElemId).map(move |y| {
                    Monomial::product_of(separating_set(g, x, y).ones().map(|t| w.var_of[t]))
                })
            })
            .collect();
        Ok(Self { order: n, entries })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entry(&self, x: ElemId, y: ElemId) -> &Monomial {
        &self.entries[x as usize * self.order + y as usize]
    }

    pub fn row(&self, x: ElemId) -> &[Monomial] {
        let start = x as usize * self.order;
        &self.entries[start..start + self.order]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.order as ElemId).all(|x| (0..x).all(|y| self.entry(x, y) == self.entry(y, x)))
    }

    pub fn has_unit_diagonal(&self) -> bool {
        (0..self.order as ElemId).all(|x| self.entry(x, x).is_one())
    }

    pub fn to_polys(&self) -> Vec<Vec<Poly>> {
        (0..self.order as ElemId).map(|x| self.row(x).iter().cloned().map(Poly::monomial).collect()).collect()
    }
}

/// Matrix entries evaluated in `F_p`, generated row by row without building
/// monomials. `values[v]` is the value of variable `v`.
pub fn eval_matrix_mod_p(
    g: &EnumeratedGroup,
    w: &WeightAssignment,
    field: &PrimeField,
    values: &[u64],
) -> Vec<Vec<u64>> {
    let per_refl: Vec<u64> = w.var_of.iter().map(|&v| values[v as usize]).collect();
    let n = g.order() as ElemId;
    (0..n)
        .into_par_iter()
        .map(|x| {
            let nx = g.inversion_set(x);
            (0..n)
                .map(|y| nx.symmetric_difference(g.inversion_set(y)).fold(1u64, |acc, t| field.mul(acc, per_refl[t])))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{build_group, parse_group_spec};

    fn group(spec: &str) -> EnumeratedGroup {
        build_group(&parse_group_spec(spec).unwrap()).unwrap()
    }

    #[test]
    fn a1_matrix() {
        let g = group("A1");
        let m = VarchenkoMatrix::build(&g, &WeightAssignment::per_hyperplane(&g)).unwrap();
        assert_eq!(m.order(), g.order());
        assert_eq!(m.entry(0, 0), &Monomial::one());
        assert_eq!(m.entry(0, 1), &Monomial::var(0));
        assert_eq!(m.entry(1, 0), &Monomial::var(0));
    }

    #[test]
    fn a2_single_q_corner() {
        let g = group("A2");
        let m = VarchenkoMatrix::build(&g, &WeightAssignment::single_q(&g)).unwrap();
        assert_eq!(m.entry(0, g.longest_element()), &Monomial::from_pairs([(0, 3)]));
    }

    #[test]
    fn structure() {
        for spec in ["A3", "B3", "H3", "I2(4)", "A2xA1"] {
            let g = group(spec);
            let w = WeightAssignment::per_hyperplane(&g);
            let m = VarchenkoMatrix::build(&g, &w).unwrap();
            assert!(m.is_symmetric() && m.has_unit_diagonal());
            for x in g.elements() {
                for y in g.elements() {
                    assert_eq!(m.entry(x, y).degree() as usize, separating_set(&g, x, y).count_ones(..));
                }
            }
            let f = PrimeField::new(1_000_000_007);
            let values: Vec<u64> = (0..w.var_count() as u64).map(|v| 3 + 7 * v).collect();
            let fast = eval_matrix_mod_p(&g, &w, &f, &values);
            for x in g.elements() {
                for y in g.elements() {
                    let slow = m.entry(x, y).eval_mod_p(&f, &|v| values.get(v as usize).copied()).unwrap();
                    assert_eq!(fast[x as usize][y as usize], slow);
                }
            }
        }
    }

    #[test]
    fn cap() {
        let g = group("A3");
        let w = WeightAssignment::per_hyperplane(&g);
        assert_eq!(
            VarchenkoMatrix::build_capped(&g, &w, 10),
            Err(VarchenkoError::MatrixTooLarge { order: 24, cap: 10 })
        );
    }
}
