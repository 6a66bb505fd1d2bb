//! The reflection arrangement of a finite Coxeter group, treated purely
//! combinatorially.
//!
//! Chambers are group elements and hyperplanes are reflections. An edge is
//! stored as the closed set of reflections whose hyperplanes contain it, so no
//! linear algebra is ever needed. Group elements act on the right: the edge
//! with reflection set `T_J` translated by `w` has reflections `T_J^w`, where
//! `t^w = w^-1 t w`.

mod multiplicity;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coxeter::{ElemId, EnumeratedGroup, GenSet, ParabolicData, ReflId};

pub use multiplicity::{
    count_l, decompose_l, l_set, multiplicity_formula, multiplicity_formula_for, multiplicity_oracle, Decomposition,
    DecompositionBlock, FormulaResult, Ingredients, MultiplicityReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrangementError {
    #[error("reflection {0} does not contain the edge")]
    ReflectionNotOnEdge(ReflId),
    #[error("chamber counts differ between hyperplanes of one edge: {0:?}")]
    InvarianceViolation(Vec<(ReflId, usize)>),
    #[error("no reflection of W_J has full support J = {0}")]
    NoFullSupportReflection(GenSet),
    #[error("blocks of the decomposition overlap at element {0}")]
    BlocksOverlap(ElemId),
    #[error("J = {0} is not irreducible")]
    ReducibleClass(GenSet),
}

/// An edge `E_U` with `U` closed, i.e. `U = { t : E_U ⊆ H_t }`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Edge {
    /// Sorted reflection indices.
    pub reflections: Vec<ReflId>,
    /// Irreducible `J` with `reflections = T_J^witness_w`.
    pub class_j: GenSet,
    pub witness_w: ElemId,
    /// Position of the coset of `N_W(W_J)` among those of its class, when known.
    pub coset_id: Option<usize>,
}

impl Edge {
    pub fn contains(&self, t: ReflId) -> bool {
        self.reflections.binary_search(&t).is_ok()
    }

    pub fn dimension_drop(&self) -> usize {
        self.class_j.len()
    }
}

impl PartialEq for Edge {
    fn eq(&self, other: &Self) -> bool {
        self.reflections == other.reflections
    }
}

impl Eq for Edge {}

impl Hash for Edge {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.reflections.hash(state);
    }
}

impl PartialOrd for Edge {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Edge {
    /// Hyperplanes first, then by size, then lexicographically.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.reflections.len(), &self.reflections).cmp(&(other.reflections.len(), &other.reflections))
    }
}

/// Hyperplanes separating the chambers of `x` and `y`: `N(x) Δ N(y)`.
pub fn separating_set(g: &EnumeratedGroup, x: ElemId, y: ElemId) -> FixedBitSet {
    let mut out = g.inversion_set(x).clone();
    out.symmetric_difference_with(g.inversion_set(y));
    out
}

/// `T_J` as sorted indices.
pub fn parabolic_reflections(g: &EnumeratedGroup, j: GenSet) -> Vec<ReflId> {
    (0..g.reflection_count() as ReflId).filter(|&t| g.refl_support(t).is_subset(j)).collect()
}

/// `T_J^w = { w^-1 u w : u in T_J }`, sorted.
pub fn translate(g: &EnumeratedGroup, t_j: &[ReflId], w: ElemId) -> Vec<ReflId> {
    let mut out: Vec<ReflId> = t_j.iter().map(|&u| g.conj_refl(w, u)).collect();
    out.sort_unstable();
    out
}

/// The edge spanned by `C̄_x ∩ H_t`: reflections `T_K^x` with `K = J(t^{x^-1})`.
pub fn minimal_edge_through_chamber_face(g: &EnumeratedGroup, x: ElemId, t: ReflId) -> Edge {
    let k = g.refl_support(g.conj_refl_inv(x, t));
    Edge { reflections: translate(g, &parabolic_reflections(g, k), x), class_j: k, witness_w: x, coset_id: None }
}

/// Reflections of the subgroup generated by `u`, i.e. the closure of an
/// arbitrary reflection set.
pub fn reflection_closure(g: &EnumeratedGroup, u: &[ReflId]) -> Vec<ReflId> {
    let mut seen = vec![false; g.order()];
    let mut elems = vec![g.identity()];
    seen[0] = true;
    let gens: Vec<ElemId> = u.iter().map(|&t| g.reflection(t)).collect();
    let mut i = 0;
    while i < elems.len() {
        let x = elems[i];
        for &r in &gens {
            let y = g.mul(x, r);
            if !seen[y as usize] {
                seen[y as usize] = true;
                elems.push(y);
            }
        }
        i += 1;
    }
    let mut out: Vec<ReflId> = elems.into_iter().filter_map(|x| g.reflection_index(x)).collect();
    out.sort_unstable();
    out
}

/// One Coxeter class of irreducible subsets together with its edges.
#[derive(Clone, Debug)]
pub struct EdgeClass {
    /// Representative: the smallest member of the class by size, then bitmask.
    pub j: GenSet,
    pub parabolic: ParabolicData,
    /// Indices into [`Arrangement::edges`], in coset order.
    pub edges: Vec<usize>,
}

/// All relevant edges of a group, grouped by Coxeter class.
#[derive(Clone, Debug)]
pub struct Arrangement {
    edges: Vec<Edge>,
    classes: Vec<EdgeClass>,
    index: HashMap<Vec<ReflId>, usize>,
}

impl Arrangement {
    pub fn new(g: &EnumeratedGroup) -> Self {
        let mut subsets = g.diagram().irreducible_subsets();
        subsets.sort_by_key(|j| (j.len(), j.0));
        let mut assigned: HashMap<GenSet, usize> = HashMap::new();
        let mut raw: Vec<(GenSet, ParabolicData, Vec<Edge>)> = Vec::new();
        for j in subsets {
            if assigned.contains_key(&j) {
                continue;
            }
            let p = ParabolicData::new(g, j);
            for &(k, _) in &p.coxeter_class {
                assigned.insert(k, raw.len());
            }
            let t_j = parabolic_reflections(g, j);
            let mut seen: HashMap<Vec<ReflId>, ()> = HashMap::new();
            let mut edges = Vec::new();
            for w in g.elements() {
                let set = translate(g, &t_j, w);
                if seen.insert(set.clone(), ()).is_none() {
                    let coset_id = Some(edges.len());
                    edges.push(Edge { reflections: set, class_j: j, witness_w: w, coset_id });
                }
            }
            assert_eq!(edges.len(), p.coset_count(g.order()), "class {j}: edges do not match cosets of the normaliser");
            raw.push((j, p, edges));
        }

        let mut all: Vec<(Edge, usize)> =
            raw.iter().enumerate().flat_map(|(c, (_, _, es))| es.iter().cloned().map(move |e| (e, c))).collect();
        all.sort_by(|a, b| a.0.cmp(&b.0));
        let mut classes: Vec<EdgeClass> =
            raw.into_iter().map(|(j, parabolic, _)| EdgeClass { j, parabolic, edges: Vec::new() }).collect();
        let mut edges = Vec::with_capacity(all.len());
        let mut index = HashMap::with_capacity(all.len());
        for (i, (e, c)) in all.into_iter().enumerate() {
            classes[c].edges.push(i);
            let prev = index.insert(e.reflections.clone(), i);
            assert!(prev.is_none(), "edge emitted twice");
            edges.push(e);
        }
        for c in &mut classes {
            c.edges.sort_by_key(|&i| edges[i].coset_id);
        }
        Self { edges, classes, index }
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn classes(&self) -> &[EdgeClass] {
        &self.classes
    }

    pub fn find(&self, reflections: &[ReflId]) -> Option<&Edge> {
        self.index.get(reflections).map(|&i| &self.edges[i])
    }

    pub fn class_of(&self, edge: &Edge) -> Option<&EdgeClass> {
        self.classes.iter().find(|c| c.j == edge.class_j)
    }

    /// The class edge `E_{T_J}` itself.
    pub fn base_edge(&self, class: &EdgeClass) -> &Edge {
        &self.edges[class.edges[0]]
    }
}

/// Relevant edges `E_{T_J^w}`, one per coset of `N_W(W_J)` per class,
/// sorted globally.
pub fn enumerate_relevant_edges(g: &EnumeratedGroup) -> Vec<Edge> {
    Arrangement::new(g).edges
}
