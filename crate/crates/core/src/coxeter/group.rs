//! Exact enumeration of a finite Coxeter group into dense multiplication
//! tables.
//!
//! Elements are numbered in breadth-first order from the identity using right
//! multiplication by `s1, ..., sn` in that order, so element ids grow with
//! length and every non-identity element has a parent `x = parent * s`.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use super::realization::{DihedralRealization, GeometricRealization, Realization};
use super::{CoxeterDiagram, CoxeterError, CoxeterType, GenSet};

pub type ElemId = u32;
pub type ReflId = u16;

pub const DEFAULT_ORDER_LIMIT: usize = 1_000_000;

const NO_REFL: ReflId = ReflId::MAX;

#[derive(Clone, Copy, Debug)]
pub struct BuildOptions {
    pub order_limit: usize,
    /// Use rotation/flip pairs for `I2(m)` instead of the geometric model.
    pub dihedral_fast_path: bool,
    /// Realize over `Q(2cos(pi/L))` even when a smaller ring would do.
    pub force_cyclotomic: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self { order_limit: DEFAULT_ORDER_LIMIT, dihedral_fast_path: true, force_cyclotomic: false }
    }
}

/// A finite Coxeter group with all tables needed downstream.
#[derive(Clone, Debug)]
pub struct EnumeratedGroup {
    diagram: CoxeterDiagram,
    rank: usize,
    right: Vec<ElemId>,
    left: Vec<ElemId>,
    parent: Vec<(ElemId, u8)>,
    length: Vec<u32>,
    support: Vec<GenSet>,
    inverse: Vec<ElemId>,
    reflections: Vec<ElemId>,
    refl_index: Vec<ReflId>,
    /// `refl_conj[t * n + s]` is the index of `s t s`.
    refl_conj: Vec<ReflId>,
    /// `conj[x * |T| + t]` is the index of `x^-1 t x`.
    conj: Vec<ReflId>,
    inversions: Vec<FixedBitSet>,
}

pub fn build_group(diagram: &CoxeterDiagram) -> Result<EnumeratedGroup, CoxeterError> {
    build_group_with(diagram, &BuildOptions::default())
}

pub fn build_group_with(diagram: &CoxeterDiagram, opts: &BuildOptions) -> Result<EnumeratedGroup, CoxeterError> {
    let limit = opts.order_limit;
    let order = diagram.known_order();
    if order > limit as u128 {
        return Err(CoxeterError::OrderLimitExceeded { order, limit });
    }
    let dihedral = match diagram.components() {
        [(CoxeterType::I2(m), idx)] if opts.dihedral_fast_path && idx == &[0, 1] => Some(*m),
        _ => None,
    };
    let bfs = match dihedral {
        Some(m) => enumerate(&DihedralRealization { m }, limit),
        None if opts.force_cyclotomic => enumerate(&GeometricRealization::cyclotomic(diagram), limit),
        None => enumerate(&GeometricRealization::new(diagram), limit),
    }
    .map_err(|count| CoxeterError::OrderLimitExceeded { order: count as u128, limit })?;
    Ok(EnumeratedGroup::from_bfs(diagram.clone(), bfs))
}

struct Bfs {
    rank: usize,
    right: Vec<ElemId>,
    parent: Vec<(ElemId, u8)>,
    length: Vec<u32>,
}

/// Layered breadth-first search. Since `l(xs) = l(x) +- 1`, only the previous
/// and next layers have to be kept in memory to recognise elements.
fn enumerate<R: Realization>(r: &R, limit: usize) -> Result<Bfs, usize> {
    let n = r.rank();
    let mut right: Vec<ElemId> = Vec::new();
    let mut parent = vec![(0, u8::MAX)];
    let mut length = vec![0u32];
    let mut prev: HashMap<R::Elem, ElemId> = HashMap::new();
    let mut layer: Vec<R::Elem> = vec![r.identity()];
    let mut layer_start: ElemId = 0;
    let mut total = 1usize;
    while !layer.is_empty() {
        let depth = length[layer_start as usize];
        let mut next: HashMap<R::Elem, ElemId> = HashMap::new();
        let mut next_layer: Vec<R::Elem> = Vec::new();
        for (off, key) in layer.iter().enumerate() {
            let x = layer_start + off as ElemId;
            for s in 0..n {
                let y = r.right_mul_generator(key, s);
                let id = if let Some(&id) = prev.get(&y) {
                    id
                } else if let Some(&id) = next.get(&y) {
                    id
                } else {
                    if total >= limit {
                        return Err(total + 1);
                    }
                    let id = total as ElemId;
                    total += 1;
                    parent.push((x, s as u8));
                    length.push(depth + 1);
                    next_layer.push(y.clone());
                    next.insert(y, id);
                    id
                };
                right.push(id);
            }
        }
        prev = layer.into_iter().enumerate().map(|(off, k)| (k, layer_start + off as ElemId)).collect();
        layer_start += prev.len() as ElemId;
        layer = next_layer;
    }
    Ok(Bfs { rank: n, right, parent, length })
}

impl EnumeratedGroup {
    fn from_bfs(diagram: CoxeterDiagram, bfs: Bfs) -> Self {
        let Bfs { rank: n, right, parent, length } = bfs;
        let order = length.len();

        let mut support = vec![GenSet::empty(); order];
        for x in 1..order {
            let (p, s) = parent[x];
            support[x] = support[p as usize].union(GenSet::singleton(s as usize));
        }

        // s * x: with x = p * g, s * x = (s * p) * g.
        let mut left = vec![0 as ElemId; order * n];
        for s in 0..n {
            left[s] = right[s];
        }
        for x in 1..order {
            let (p, g) = parent[x];
            for s in 0..n {
                let sp = left[p as usize * n + s];
                left[x * n + s] = right[sp as usize * n + g as usize];
            }
        }

        // (p g)^-1 = g p^-1
        let mut inverse = vec![0 as ElemId; order];
        for x in 1..order {
            let (p, g) = parent[x];
            inverse[x] = left[inverse[p as usize] as usize * n + g as usize];
        }

        let mut reflections: Vec<ElemId> = (0..n).map(|s| right[s]).collect();
        let mut seen = vec![false; order];
        for &t in &reflections {
            seen[t as usize] = true;
        }
        let mut i = 0;
        while i < reflections.len() {
            let t = reflections[i] as usize;
            for s in 0..n {
                let u = left[right[t * n + s] as usize * n + s] as usize;
                if !seen[u] {
                    seen[u] = true;
                    reflections.push(u as ElemId);
                }
            }
            i += 1;
        }
        reflections.sort_unstable();
        assert!(reflections.len() < NO_REFL as usize, "too many reflections");
        let mut refl_index = vec![NO_REFL; order];
        for (i, &t) in reflections.iter().enumerate() {
            refl_index[t as usize] = i as ReflId;
        }
        let nt = reflections.len();

        let mut refl_conj = vec![NO_REFL; nt * n];
        for (i, &t) in reflections.iter().enumerate() {
            for s in 0..n {
                let u = left[right[t as usize * n + s] as usize * n + s];
                refl_conj[i * n + s] = refl_index[u as usize];
            }
        }

        // (p g)^-1 t (p g) = g (p^-1 t p) g
        let mut conj = vec![NO_REFL; order * nt];
        for t in 0..nt {
            conj[t] = t as ReflId;
        }
        for x in 1..order {
            let (p, g) = parent[x];
            for t in 0..nt {
                let c = conj[p as usize * nt + t] as usize;
                conj[x * nt + t] = refl_conj[c * n + g as usize];
            }
        }

        // N(p g) = N(p) + {p g p^-1}
        let mut inversions = Vec::with_capacity(order);
        inversions.push(FixedBitSet::with_capacity(nt));
        for x in 1..order {
            let (p, g) = parent[x];
            let mut set = inversions[p as usize].clone();
            let new = conj[inverse[p as usize] as usize * nt + g as usize];
            set.insert(new as usize);
            inversions.push(set);
        }

        Self { diagram, rank: n, right, left, parent, length, support, inverse, reflections, refl_index, refl_conj, conj, inversions }
    }

    pub fn diagram(&self) -> &CoxeterDiagram {
        &self.diagram
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.length.len()
    }

    pub fn identity(&self) -> ElemId {
        0
    }

    pub fn elements(&self) -> impl Iterator<Item = ElemId> {
        0..self.order() as ElemId
    }

    pub fn generator(&self, s: usize) -> ElemId {
        self.right[s]
    }

    /// `x * s`
    pub fn right_mul(&self, x: ElemId, s: usize) -> ElemId {
        self.right[x as usize * self.rank + s]
    }

    /// `s * x`
    pub fn left_mul(&self, s: usize, x: ElemId) -> ElemId {
        self.left[x as usize * self.rank + s]
    }

    pub fn length(&self, x: ElemId) -> u32 {
        self.length[x as usize]
    }

    pub fn inverse(&self, x: ElemId) -> ElemId {
        self.inverse[x as usize]
    }

    /// Generators occurring in any (equivalently every) reduced word of `x`.
    pub fn support(&self, x: ElemId) -> GenSet {
        self.support[x as usize]
    }

    /// `(parent, s)` with `x = parent * s`, or `None` for the identity.
    pub fn parent(&self, x: ElemId) -> Option<(ElemId, usize)> {
        (x != 0).then(|| {
            let (p, s) = self.parent[x as usize];
            (p, s as usize)
        })
    }

    /// The reduced word found by the enumeration, as 0-based generator indices.
    pub fn reduced_word(&self, mut x: ElemId) -> Vec<usize> {
        let mut w = Vec::with_capacity(self.length(x) as usize);
        while let Some((p, s)) = self.parent(x) {
            w.push(s);
            x = p;
        }
        w.reverse();
        w
    }

    pub fn from_word(&self, word: &[usize]) -> ElemId {
        word.iter().fold(0, |x, &s| self.right_mul(x, s))
    }

    pub fn mul(&self, x: ElemId, y: ElemId) -> ElemId {
        self.reduced_word(y).into_iter().fold(x, |acc, s| self.right_mul(acc, s))
    }

    /// `y^-1 x y`
    pub fn conjugate(&self, x: ElemId, y: ElemId) -> ElemId {
        self.mul(self.mul(self.inverse(y), x), y)
    }

    pub fn longest_element(&self) -> ElemId {
        (self.order() - 1) as ElemId
    }

    pub fn reflection_count(&self) -> usize {
        self.reflections.len()
    }

    /// Reflections sorted by element id; index `i < rank` is the generator `s_{i+1}`.
    pub fn reflections(&self) -> &[ElemId] {
        &self.reflections
    }

    pub fn reflection(&self, t: ReflId) -> ElemId {
        self.reflections[t as usize]
    }

    pub fn reflection_index(&self, x: ElemId) -> Option<ReflId> {
        let i = self.refl_index[x as usize];
        (i != NO_REFL).then_some(i)
    }

    pub fn is_reflection(&self, x: ElemId) -> bool {
        self.reflection_index(x).is_some()
    }

    /// Index of `s t s`.
    pub fn refl_conj(&self, t: ReflId, s: usize) -> ReflId {
        self.refl_conj[t as usize * self.rank + s]
    }

    /// Index of `x^-1 t x`.
    pub fn conj_refl(&self, x: ElemId, t: ReflId) -> ReflId {
        self.conj[x as usize * self.reflections.len() + t as usize]
    }

    /// Index of `x t x^-1`.
    pub fn conj_refl_inv(&self, x: ElemId, t: ReflId) -> ReflId {
        self.conj_refl(self.inverse(x), t)
    }

    /// Support of the reflection `t`.
    pub fn refl_support(&self, t: ReflId) -> GenSet {
        self.support(self.reflection(t))
    }

    /// `N(x) = { t : l(t x) < l(x) }`, the reflections separating the
    /// fundamental chamber from `x C`.
    pub fn inversion_set(&self, x: ElemId) -> &FixedBitSet {
        &self.inversions[x as usize]
    }

    /// Left descent test `l(s x) < l(x)`.
    pub fn is_left_descent(&self, s: usize, x: ElemId) -> bool {
        self.length(self.left_mul(s, x)) < self.length(x)
    }

    pub fn is_right_descent(&self, x: ElemId, s: usize) -> bool {
        self.length(self.right_mul(x, s)) < self.length(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::parse_group_spec;

    fn group(spec: &str) -> EnumeratedGroup {
        build_group(&parse_group_spec(spec).unwrap()).unwrap()
    }

    #[test]
    fn orders_and_reflection_counts() {
        for (spec, order, refl) in [
            ("A1", 2, 1),
            ("A2", 6, 3),
            ("A3", 24, 6),
            ("B3", 48, 9),
            ("D4", 192, 12),
            ("F4", 1152, 24),
            ("H3", 120, 15),
            ("H4", 14400, 60),
            ("I2(5)", 10, 5),
            ("I2(7)", 14, 7),
            ("E6", 51840, 36),
            ("A2xA1", 12, 4),
            ("I2(7)xA1", 28, 8),
        ] {
            let g = group(spec);
            assert_eq!(g.order(), order, "{spec}");
            assert_eq!(g.reflection_count(), refl, "{spec}");
        }
    }

    #[test]
    fn tables_are_consistent() {
        for spec in ["A3", "B3", "H3", "I2(6)", "D4"] {
            let g = group(spec);
            let w0 = g.longest_element();
            assert_eq!(g.length(w0) as usize, g.reflection_count());
            for x in g.elements() {
                assert_eq!(g.mul(x, g.inverse(x)), 0);
                assert_eq!(g.inversion_set(x).count_ones(..), g.length(x) as usize);
                assert_eq!(g.reduced_word(x).len(), g.length(x) as usize);
                assert_eq!(g.from_word(&g.reduced_word(x)), x);
                for s in 0..g.rank() {
                    assert_eq!(g.left_mul(s, x), g.mul(g.generator(s), x));
                    assert_ne!(g.length(g.right_mul(x, s)), g.length(x));
                }
                for t in 0..g.reflection_count() as ReflId {
                    let direct = g.conjugate(g.reflection(t), x);
                    assert_eq!(g.reflection(g.conj_refl(x, t)), direct);
                    let below = g.length(g.mul(g.reflection(t), x)) < g.length(x);
                    assert_eq!(g.inversion_set(x).contains(t as usize), below);
                }
            }
        }
    }

    #[test]
    fn generators_come_first_among_reflections() {
        let g = group("F4");
        for s in 0..4 {
            assert_eq!(g.reflection(s as ReflId), g.generator(s));
        }
    }

    #[test]
    fn dihedral_paths_agree() {
        for m in 3..=8u32 {
            let d = parse_group_spec(&format!("I2({m})")).unwrap();
            let fast = build_group_with(&d, &BuildOptions { dihedral_fast_path: true, ..Default::default() }).unwrap();
            let slow = build_group_with(&d, &BuildOptions { dihedral_fast_path: false, force_cyclotomic: true, ..Default::default() })
                .unwrap();
            assert_eq!(fast.order(), slow.order());
            for x in fast.elements() {
                assert_eq!(fast.reduced_word(x), slow.reduced_word(x));
                for s in 0..2 {
                    assert_eq!(fast.right_mul(x, s), slow.right_mul(x, s));
                }
            }
        }
    }

    #[test]
    fn order_limit_is_enforced() {
        let d = parse_group_spec("E8").unwrap();
        let err = build_group(&d).unwrap_err();
        assert!(matches!(err, CoxeterError::OrderLimitExceeded { order: 696729600, .. }));
        let d = parse_group_spec("A4").unwrap();
        let err = build_group_with(&d, &BuildOptions { order_limit: 100, ..Default::default() }).unwrap_err();
        assert!(matches!(err, CoxeterError::OrderLimitExceeded { .. }));
    }
}
