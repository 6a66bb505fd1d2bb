//! Parabolic subgroups `W_J`, minimal coset representatives, Coxeter classes
//! and the complements `X(J,K)` appearing in normalizers.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{CoxeterError, ElemId, EnumeratedGroup, GenSet, ReflId};

/// Everything downstream needs to know about one subset `J` of `S`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParabolicData {
    pub j: GenSet,
    /// Elements of `W_J`, in increasing id order.
    pub w_j: Vec<ElemId>,
    /// `T ∩ W_J`, sorted.
    pub t_j: Vec<ReflId>,
    /// Minimal length representatives of the right cosets `W_J x`.
    pub x_j: Vec<ElemId>,
    pub irreducible: bool,
    /// Subsets `K` of `S` conjugate to `J`, each with `c` such that `K^c = J`.
    pub coxeter_class: Vec<(GenSet, ElemId)>,
    /// `X(S,J) = { x in X_J : J^x = J }`.
    pub x_sj: Vec<ElemId>,
    /// `|N_W(W_J)| = |W_J| |X(S,J)|`.
    pub normalizer_order: usize,
}

impl ParabolicData {
    pub fn new(g: &EnumeratedGroup, j: GenSet) -> Self {
        let w_j = closure(g, j);
        let t_j: Vec<ReflId> = (0..g.reflection_count() as ReflId)
            .filter(|&t| g.refl_support(t).is_subset(j))
            .collect();
        let x_j: Vec<ElemId> = g.elements().filter(|&x| j.iter().all(|s| !g.is_left_descent(s, x))).collect();
        let irreducible = g.diagram().is_connected(j);

        let mut class: BTreeMap<GenSet, ElemId> = BTreeMap::new();
        for w in g.elements() {
            if let Some(k) = conjugate_subset(g, j, w) {
                // K = J^w, hence K^{w^-1} = J.
                class.entry(k).or_insert_with(|| g.inverse(w));
            }
        }
        let coxeter_class: Vec<(GenSet, ElemId)> = class.into_iter().collect();

        let x_sj: Vec<ElemId> = x_j.iter().copied().filter(|&x| conjugate_subset(g, j, x) == Some(j)).collect();
        let normalizer_order = w_j.len() * x_sj.len();
        Self { j, w_j, t_j, x_j, irreducible, coxeter_class, x_sj, normalizer_order }
    }

    pub fn class_size(&self) -> usize {
        self.coxeter_class.len()
    }

    /// Number of cosets of `N_W(W_J)` in `W`, i.e. the number of edges of this class.
    pub fn coset_count(&self, order: usize) -> usize {
        order / self.normalizer_order
    }

    pub fn contains(&self, x: ElemId) -> bool {
        self.w_j.binary_search(&x).is_ok()
    }
}

/// `W_J` by closure under right multiplication with the generators in `J`.
pub fn closure(g: &EnumeratedGroup, j: GenSet) -> Vec<ElemId> {
    let mut seen = vec![false; g.order()];
    let mut out = vec![g.identity()];
    seen[0] = true;
    let mut i = 0;
    while i < out.len() {
        let x = out[i];
        for s in j.iter() {
            let y = g.right_mul(x, s);
            if !seen[y as usize] {
                seen[y as usize] = true;
                out.push(y);
            }
        }
        i += 1;
    }
    out.sort_unstable();
    out
}

/// `J^w = w^-1 J w` when it is again a set of simple reflections.
pub fn conjugate_subset(g: &EnumeratedGroup, j: GenSet, w: ElemId) -> Option<GenSet> {
    let mut k = GenSet::empty();
    for s in j.iter() {
        let u = g.conj_refl(w, s as ReflId) as usize;
        if u >= g.rank() {
            return None;
        }
        k.insert(u);
    }
    Some(k)
}

/// `X(J,K) = { w in W_J ∩ X_K ∩ X_K^-1 : K^w = K }`, straight from the definition.
pub fn x_j_k(g: &EnumeratedGroup, j: GenSet, k: GenSet) -> Vec<ElemId> {
    closure(g, j)
        .into_iter()
        .filter(|&w| k.iter().all(|s| !g.is_left_descent(s, w) && !g.is_right_descent(w, s)))
        .filter(|&w| conjugate_subset(g, k, w) == Some(k))
        .collect()
}

/// `|X(J,{s})|`, as half the order of the normaliser of `<s>` in `W_J`.
/// The definition of `X(J,{s})` is evaluated as well and must agree.
pub fn x_j_s(g: &EnumeratedGroup, j: GenSet, s: usize) -> Result<usize, CoxeterError> {
    if !j.contains(s) {
        return Err(CoxeterError::GeneratorNotInJ(s, j));
    }
    let w_j = closure(g, j);
    let normalizer = w_j.iter().filter(|&&w| g.conj_refl(w, s as ReflId) as usize == s).count();
    let direct = x_j_k(g, j, GenSet::singleton(s)).len();
    assert_eq!(normalizer, 2 * direct, "normaliser of <s{}> in W_J is not W_s X(J,{{s}})", s + 1);
    Ok(direct)
}

/// `N_W(W_J) = { w : W_J^w = W_J }` by scanning all of `W`.
pub fn normalizer_brute_force(g: &EnumeratedGroup, j: GenSet) -> Vec<ElemId> {
    g.elements()
        .filter(|&w| j.iter().all(|s| g.refl_support(g.conj_refl(w, s as ReflId)).is_subset(j)))
        .collect()
}
