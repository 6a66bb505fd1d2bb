//! Sparse monomials in hyperplane variables and products of `(1 - m^2)^e`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::modular::PrimeField;
use super::AlgebraError;

/// Variable identifier; one per hyperplane (or per orbit, or a single `q`).
pub type VarId = u32;

/// A monomial with positive exponents, sorted by variable id.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial {
    exps: Vec<(VarId, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: VarId) -> Self {
        Self { exps: vec![(v, 1)] }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (VarId, u32)>) -> Self {
        let mut map = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_insert(0) += e;
        }
        Self { exps: map.into_iter().filter(|&(_, e)| e > 0).collect() }
    }

    /// Product of the given variables, with repetition.
    pub fn product_of(vars: impl IntoIterator<Item = VarId>) -> Self {
        Self::from_pairs(vars.into_iter().map(|v| (v, 1)))
    }

    pub fn exps(&self) -> &[(VarId, u32)] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&(_, e)| e as u64).sum()
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::from_pairs(self.exps.iter().chain(o.exps.iter()).copied())
    }

    pub fn pow(&self, k: u32) -> Self {
        Self { exps: self.exps.iter().map(|&(v, e)| (v, e * k)).filter(|&(_, e)| e > 0).collect() }
    }

    /// Substitute every variable through `f`; exponents of merged variables add.
    pub fn substitute(&self, f: impl Fn(VarId) -> VarId) -> Self {
        Self::from_pairs(self.exps.iter().map(|&(v, e)| (f(v), e)))
    }

    /// `self / o` when `o` divides `self`.
    pub fn div(&self, o: &Self) -> Option<Self> {
        let mut map: BTreeMap<VarId, u32> = self.exps.iter().copied().collect();
        for &(v, e) in &o.exps {
            let slot = map.get_mut(&v)?;
            *slot = slot.checked_sub(e)?;
        }
        Some(Self::from_pairs(map))
    }

    pub fn eval_mod_p(&self, field: &PrimeField, point: &dyn Fn(VarId) -> Option<u64>) -> Result<u64, AlgebraError> {
        let mut acc = 1u64 % field.modulus();
        for &(v, e) in &self.exps {
            let x = point(v).ok_or(AlgebraError::UnassignedVariable(v))?;
            acc = field.mul(acc, field.pow(x, e as u64));
        }
        Ok(acc)
    }

    /// `a1^2a3` style rendering; the empty monomial renders as `1`.
    pub fn render(&self, names: &dyn Fn(VarId) -> String) -> String {
        if self.exps.is_empty() {
            return "1".to_string();
        }
        let mut s = String::new();
        for &(v, e) in &self.exps {
            s.push_str(&names(v));
            if e != 1 {
                let _ = write!(s, "^{e}");
            }
        }
        s
    }
}

impl Ord for Monomial {
    /// Graded lexicographic order with higher variable ids more significant,
    /// so `a1 < a2 < a1a2`. It is a monomial order (compatible with products).
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let (mut i, mut j) = (self.exps.len(), other.exps.len());
            while i > 0 && j > 0 {
                let (va, ea) = self.exps[i - 1];
                let (vb, eb) = other.exps[j - 1];
                match va.cmp(&vb) {
                    Ordering::Greater => return Ordering::Greater,
                    Ordering::Less => return Ordering::Less,
                    Ordering::Equal => match ea.cmp(&eb) {
                        Ordering::Equal => {
                            i -= 1;
                            j -= 1;
                        }
                        ord => return ord,
                    },
                }
            }
            i.cmp(&j)
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// One factor `(1 - monomial^2)^exponent`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factor {
    /// The edge weight itself; it is squared only when rendered or evaluated.
    pub monomial: Monomial,
    pub exponent: u64,
}

/// A product `prod (1 - m_i^2)^{e_i}` with constant `+1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factorization {
    pub factors: Vec<Factor>,
}

impl Factorization {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Monomial, u64)>) -> Self {
        Self { factors: pairs.into_iter().map(|(monomial, exponent)| Factor { monomial, exponent }).collect() }
    }

    pub fn push(&mut self, monomial: Monomial, exponent: u64) {
        self.factors.push(Factor { monomial, exponent });
    }

    /// Sort by monomial, merge equal monomials, drop zero exponents.
    pub fn normalize(&self) -> Self {
        let mut map: BTreeMap<Monomial, u64> = BTreeMap::new();
        for f in &self.factors {
            *map.entry(f.monomial.clone()).or_insert(0) += f.exponent;
        }
        Self::from_pairs(map.into_iter().filter(|&(_, e)| e > 0))
    }

    pub fn is_normalized(&self) -> bool {
        self.factors.windows(2).all(|w| w[0].monomial < w[1].monomial)
            && self.factors.iter().all(|f| f.exponent > 0)
    }

    /// Raise the whole product to the power `k`.
    pub fn pow(&self, k: u64) -> Self {
        Self::from_pairs(self.factors.iter().map(|f| (f.monomial.clone(), f.exponent * k))).normalize()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.factors.extend(o.factors.iter().cloned());
        out.normalize()
    }

    pub fn substitute(&self, f: impl Fn(VarId) -> VarId) -> Self {
        Self::from_pairs(self.factors.iter().map(|x| (x.monomial.substitute(&f), x.exponent))).normalize()
    }

    pub fn variables(&self) -> Vec<VarId> {
        let mut v: Vec<VarId> =
            self.factors.iter().flat_map(|f| f.monomial.exps().iter().map(|&(v, _)| v)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Total degree of the expanded product: `sum e_i * 2 deg(m_i)`.
    pub fn total_degree(&self) -> u64 {
        self.factors.iter().map(|f| f.exponent * 2 * f.monomial.degree()).sum()
    }

    /// `prod (1 - m_i(point)^2)^{e_i}` in the prime field.
    pub fn eval_mod_p(&self, field: &PrimeField, point: &dyn Fn(VarId) -> Option<u64>) -> Result<u64, AlgebraError> {
        let mut acc = 1u64;
        for f in &self.factors {
            let m = f.monomial.eval_mod_p(field, point)?;
            let base = field.sub(1, field.mul(m, m));
            acc = field.mul(acc, field.pow(base, f.exponent));
        }
        Ok(acc)
    }

    /// `(1-a1^2)^2 (1-a1^2a2^2a3^2)^1`
    pub fn render(&self, names: &dyn Fn(VarId) -> String) -> String {
        if self.factors.is_empty() {
            return "1".to_string();
        }
        self.factors
            .iter()
            .map(|f| format!("(1-{})^{}", f.monomial.pow(2).render(names), f.exponent))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn names(v: VarId) -> String {
        format!("a{}", v + 1)
    }

    #[test]
    fn merge_equal_factors() {
        let f = Factorization::from_pairs([(Monomial::var(0), 1), (Monomial::var(0), 1)]);
        assert_eq!(f.normalize(), Factorization::from_pairs([(Monomial::var(0), 2)]));
        assert_eq!(Factorization::new().normalize(), Factorization::new());
    }

    #[test]
    fn a2_shape_sorted_form() {
        let center = Monomial::product_of([2, 0, 1]);
        let f = Factorization::from_pairs([
            (center.clone(), 1),
            (Monomial::var(2), 2),
            (Monomial::var(0), 2),
            (Monomial::var(1), 2),
        ]);
        let n = f.normalize();
        assert_eq!(n.render(&names), "(1-a1^2)^2 (1-a2^2)^2 (1-a3^2)^2 (1-a1^2a2^2a3^2)^1");
        assert_eq!(n.total_degree(), 18);
    }

    #[test]
    fn evaluation_examples() {
        let f7 = PrimeField::new(7);
        let at = |x: u64| move |_: VarId| Some(x);
        assert_eq!(Factorization::new().eval_mod_p(&f7, &at(4)).unwrap(), 1);
        let one = Factorization::from_pairs([(Monomial::var(0), 1)]);
        assert_eq!(one.eval_mod_p(&f7, &at(0)).unwrap(), 1);
        let sq = Factorization::from_pairs([(Monomial::var(0), 2)]);
        assert_eq!(sq.eval_mod_p(&f7, &at(3)).unwrap(), 1);
        let none = |_: VarId| None;
        assert_eq!(sq.eval_mod_p(&f7, &none), Err(AlgebraError::UnassignedVariable(0)));
    }

    #[test]
    fn monomial_division() {
        let a = Monomial::from_pairs([(0, 2), (1, 1)]);
        assert_eq!(a.div(&Monomial::var(0)), Some(Monomial::from_pairs([(0, 1), (1, 1)])));
        assert_eq!(a.div(&Monomial::var(2)), None);
        assert_eq!(a.div(&a), Some(Monomial::one()));
    }

    fn arb_factorization() -> impl Strategy<Value = Factorization> {
        let mono = prop::collection::vec((0u32..5, 1u32..3), 1..4).prop_map(Monomial::from_pairs);
        prop::collection::vec((mono, 0u64..4), 0..8).prop_map(Factorization::from_pairs)
    }

    proptest! {
        #[test]
        fn normalize_is_idempotent_and_order_insensitive(f in arb_factorization(), seed in any::<u64>()) {
            let n = f.normalize();
            prop_assert!(n.is_normalized());
            prop_assert_eq!(n.normalize(), n.clone());
            let mut shuffled = f.clone();
            let len = shuffled.factors.len();
            if len > 1 {
                let mut s = seed;
                for i in (1..len).rev() {
                    s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    shuffled.factors.swap(i, (s >> 33) as usize % (i + 1));
                }
            }
            prop_assert_eq!(shuffled.normalize(), n);
        }

        #[test]
        fn normalize_preserves_value(f in arb_factorization(), vals in prop::collection::vec(1u64..1_000_000, 5)) {
            let field = PrimeField::new(1_000_000_007);
            let point = |v: VarId| vals.get(v as usize).copied();
            prop_assert_eq!(f.eval_mod_p(&field, &point).unwrap(), f.normalize().eval_mod_p(&field, &point).unwrap());
        }
    }
}
