//! Edge multiplicities: counted from chambers, and from the product formula
//! over parabolic data.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::coxeter::parabolic::x_j_s;
use crate::coxeter::reflections::{floor_class, palindromic_decomposition, reflections_with_support};
use crate::coxeter::{ElemId, EnumeratedGroup, FloorAmbient, GenSet, ParabolicData, ReflId};

use super::{ArrangementError, Edge};

/// Largest `|W_J|` for which every choice of `t_J` is tried.
const CHOICE_CHECK_LIMIT: usize = 1152;

/// `L(E, t) = { x : <C̄_x ∩ H_t> = E }`, sorted.
pub fn l_set(g: &EnumeratedGroup, e: &Edge, t: ReflId) -> Result<Vec<ElemId>, ArrangementError> {
    if !e.contains(t) {
        return Err(ArrangementError::ReflectionNotOnEdge(t));
    }
    let mut t_count: HashMap<GenSet, usize> = HashMap::new();
    let nt = g.reflection_count() as ReflId;
    let mut out = Vec::new();
    for x in g.elements() {
        // The face spans T_K^x, which equals E iff T_K = x E x^-1.
        let k = g.refl_support(g.conj_refl_inv(x, t));
        let size = *t_count.entry(k).or_insert_with(|| (0..nt).filter(|&u| g.refl_support(u).is_subset(k)).count());
        if size != e.reflections.len() {
            continue;
        }
        if e.reflections.iter().all(|&u| g.refl_support(g.conj_refl_inv(x, u)).is_subset(k)) {
            out.push(x);
        }
    }
    Ok(out)
}

pub fn count_l(g: &EnumeratedGroup, e: &Edge, t: ReflId) -> Result<usize, ArrangementError> {
    l_set(g, e, t).map(|v| v.len())
}

/// `l(E)` as half the number of chambers in `L(E, t)`. Every hyperplane
/// through `E` is tried and the counts must agree.
pub fn multiplicity_oracle(g: &EnumeratedGroup, e: &Edge) -> Result<u64, ArrangementError> {
    let counts: Vec<(ReflId, usize)> =
        e.reflections.iter().map(|&t| count_l(g, e, t).map(|c| (t, c))).collect::<Result<_, _>>()?;
    let first = counts[0].1;
    if counts.iter().any(|&(_, c)| c != first) {
        return Err(ArrangementError::InvarianceViolation(counts));
    }
    assert_eq!(first % 2, 0, "odd chamber count");
    Ok(first as u64 / 2)
}

/// The four factors of the multiplicity formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ingredients {
    /// `|⌊t_J⌉|`
    pub floor: u64,
    /// `|[J]|`
    pub class_size: u64,
    /// `|X(S,J)|`
    pub x_sj: u64,
    /// `|X(J,{s_J})|`
    pub x_js: u64,
}

impl Ingredients {
    pub fn product(&self) -> u64 {
        self.floor * self.class_size * self.x_sj * self.x_js
    }

    pub fn as_array(&self) -> [u64; 4] {
        [self.floor, self.class_size, self.x_sj, self.x_js]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaResult {
    pub j: GenSet,
    pub ambient: FloorAmbient,
    /// Smallest reflection with support `J`.
    pub t_j: ReflId,
    /// `t_J = v^-1 s_J v`
    pub s_j: usize,
    pub v: ElemId,
    pub ingredients: Ingredients,
    pub l: u64,
    /// `(t, ingredients)` for every reflection with support `J`, when `W_J` is small enough.
    pub choices: Vec<(ReflId, Ingredients)>,
}

impl FormulaResult {
    pub fn choice_independent(&self) -> bool {
        self.choices.iter().all(|(_, i)| i.product() == self.l)
    }
}

pub fn multiplicity_formula(
    g: &EnumeratedGroup,
    j: GenSet,
    ambient: FloorAmbient,
) -> Result<FormulaResult, ArrangementError> {
    multiplicity_formula_for(g, &ParabolicData::new(g, j), ambient)
}

pub fn multiplicity_formula_for(
    g: &EnumeratedGroup,
    p: &ParabolicData,
    ambient: FloorAmbient,
) -> Result<FormulaResult, ArrangementError> {
    let j = p.j;
    if !p.irreducible {
        return Err(ArrangementError::ReducibleClass(j));
    }
    let full = reflections_with_support(g, j);
    if full.is_empty() {
        return Err(ArrangementError::NoFullSupportReflection(j));
    }
    let mut x_js_cache: HashMap<usize, u64> = HashMap::new();
    let mut ingredients_of = |t: ReflId| {
        let (s, v) = palindromic_decomposition(g, t);
        let x_js = *x_js_cache.entry(s).or_insert_with(|| x_j_s(g, j, s).expect("s lies in J(t)") as u64);
        let ing = Ingredients {
            floor: floor_class(g, t, ambient).len() as u64,
            class_size: p.coxeter_class.len() as u64,
            x_sj: p.x_sj.len() as u64,
            x_js,
        };
        (s, v, ing)
    };
    let t_j = full[0];
    let (s_j, v, ingredients) = ingredients_of(t_j);
    let choices = if p.w_j.len() <= CHOICE_CHECK_LIMIT {
        full.iter().map(|&t| (t, ingredients_of(t).2)).collect()
    } else {
        vec![(t_j, ingredients)]
    };
    Ok(FormulaResult { j, ambient, t_j, s_j, v, ingredients, l: ingredients.product(), choices })
}

/// Formula and oracle side by side for one edge.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MultiplicityReport {
    pub edge: Edge,
    pub formula: FormulaResult,
    pub l_formula: u64,
    pub l_oracle: Option<u64>,
}

impl MultiplicityReport {
    pub fn new(edge: Edge, formula: FormulaResult, l_oracle: Option<u64>) -> Self {
        Self { edge, l_formula: formula.l, formula, l_oracle }
    }

    pub fn ingredients(&self) -> Ingredients {
        self.formula.ingredients
    }

    /// False only when an oracle value is present and disagrees.
    pub fn matches(&self) -> bool {
        self.l_oracle.is_none_or(|l| l == self.l_formula)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionBlock {
    pub k: GenSet,
    /// `c_{K,J}`
    pub c_kj: ElemId,
    /// Element of `X(S,J)`.
    pub z: ElemId,
    /// Member of `⌊t⌉`.
    pub u: ReflId,
    /// `c_{u,t}`, an element of `W_J` conjugating `t` to `u`.
    pub c_ut: ElemId,
    pub elements: Vec<ElemId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub blocks: Vec<DecompositionBlock>,
    /// Union of all blocks, sorted.
    pub elements: Vec<ElemId>,
}

/// Builds `L(E_{T_J}, t)` as the disjoint union of the blocks
/// `c_{K,J} z c_{u,t} C_{W_J}(t)` over `K in [J]`, `z in X(S,J)`, `u in ⌊t⌉`.
pub fn decompose_l(g: &EnumeratedGroup, p: &ParabolicData, t: ReflId) -> Result<Decomposition, ArrangementError> {
    let j = p.j;
    if g.refl_support(t) != j {
        return Err(ArrangementError::NoFullSupportReflection(j));
    }
    // C_{W_J}(t) is the normaliser of W_{s} conjugated by v.
    let centralizer: Vec<ElemId> = p.w_j.iter().copied().filter(|&n| g.conj_refl(n, t) == t).collect();
    let floor = floor_class(g, t, FloorAmbient::WJ);
    let c_ut: Vec<(ReflId, ElemId)> = floor
        .iter()
        .map(|&u| {
            let c = p.w_j.iter().copied().find(|&y| g.conj_refl_inv(y, t) == u).expect("u is W_J-conjugate to t");
            (u, c)
        })
        .collect();

    let mut seen = vec![false; g.order()];
    let mut blocks = Vec::new();
    let mut all = Vec::new();
    for &(k, c_kj) in &p.coxeter_class {
        for &z in &p.x_sj {
            let head = g.mul(c_kj, z);
            for &(u, c) in &c_ut {
                let base = g.mul(head, c);
                let elements: Vec<ElemId> = centralizer.iter().map(|&n| g.mul(base, n)).collect();
                for &x in &elements {
                    if std::mem::replace(&mut seen[x as usize], true) {
                        return Err(ArrangementError::BlocksOverlap(x));
                    }
                }
                all.extend_from_slice(&elements);
                blocks.push(DecompositionBlock { k, c_kj, z, u, c_ut: c, elements });
            }
        }
    }
    all.sort_unstable();
    Ok(Decomposition { blocks, elements: all })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{minimal_edge_through_chamber_face, Arrangement};
    use crate::coxeter::reflections::full_support_reflections;
    use crate::coxeter::{build_group, parse_group_spec};

    fn group(spec: &str) -> EnumeratedGroup {
        build_group(&parse_group_spec(spec).unwrap()).unwrap()
    }

    #[test]
    fn count_examples() {
        let g = group("A2");
        let a = Arrangement::new(&g);
        let h1 = a.find(&[0]).unwrap();
        assert_eq!(count_l(&g, h1, 0).unwrap(), 4);
        assert_eq!(multiplicity_oracle(&g, h1).unwrap(), 2);
        let center = a.find(&[0, 1, 2]).unwrap();
        let t = full_support_reflections(&g)[0];
        assert_eq!(count_l(&g, center, t).unwrap(), 2);
        assert_eq!(count_l(&g, h1, 1), Err(ArrangementError::ReflectionNotOnEdge(1)));

        let g = group("H3");
        let a = Arrangement::new(&g);
        for e in a.edges().iter().filter(|e| e.reflections.len() == 1) {
            assert_eq!(count_l(&g, e, e.reflections[0]).unwrap(), 24);
        }
        let center = a.edges().last().unwrap();
        assert_eq!(multiplicity_oracle(&g, center).unwrap(), 32);

        let g = group("B2");
        let a = Arrangement::new(&g);
        assert_eq!(multiplicity_oracle(&g, a.edges().last().unwrap()).unwrap(), 2);
    }

    #[test]
    fn formula_examples() {
        let g = group("A3");
        let r = multiplicity_formula(&g, GenSet::from_indices([0, 1]), FloorAmbient::WJ).unwrap();
        assert_eq!(r.ingredients.as_array(), [1, 2, 1, 1]);
        assert_eq!(r.l, 2);

        let g = group("H3");
        let r = multiplicity_formula(&g, GenSet::full(3), FloorAmbient::WJ).unwrap();
        assert_eq!(r.ingredients.as_array(), [8, 1, 1, 4]);
        assert!(r.choice_independent());

        let g = group("A1xA1");
        assert_eq!(
            multiplicity_formula(&g, GenSet::full(2), FloorAmbient::WJ).unwrap_err(),
            ArrangementError::ReducibleClass(GenSet::full(2))
        );
    }

    #[test]
    fn f4_b3_classes_give_sixteen() {
        let g = group("F4");
        for j in [GenSet::from_indices([0, 1, 2]), GenSet::from_indices([1, 2, 3])] {
            let r = multiplicity_formula(&g, j, FloorAmbient::WJ).unwrap();
            assert_eq!(r.l, 16, "{j}");
            assert!(r.choice_independent());
            let mut seen: Vec<[u64; 4]> = r.choices.iter().map(|(_, i)| i.as_array()).collect();
            seen.sort_unstable();
            seen.dedup();
            assert_eq!(seen.len(), 2, "{j}: {seen:?}");
        }
    }

    fn formula_matches_oracle(spec: &str) {
        let g = group(spec);
        let a = Arrangement::new(&g);
        for class in a.classes() {
            let f = multiplicity_formula_for(&g, &class.parabolic, FloorAmbient::WJ).unwrap();
            assert!(f.choice_independent(), "{spec} {}", class.j);
            for &i in &class.edges {
                assert_eq!(multiplicity_oracle(&g, &a.edges()[i]).unwrap(), f.l, "{spec} {}", class.j);
            }
        }
    }

    #[test]
    fn formula_matches_oracle_small() {
        for spec in ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "D4", "H3", "I2(5)", "I2(6)", "I2(8)", "A2xA1"] {
            formula_matches_oracle(spec);
        }
    }

    #[test]
    fn decomposition_matches_l_set() {
        for spec in ["A2", "B2", "A3", "B3", "H3", "D4", "I2(6)"] {
            let g = group(spec);
            let a = Arrangement::new(&g);
            for class in a.classes() {
                let base = a.base_edge(class);
                assert_eq!(base.witness_w, 0);
                for t in reflections_with_support(&g, class.j) {
                    let d = decompose_l(&g, &class.parabolic, t).unwrap();
                    assert_eq!(d.elements, l_set(&g, base, t).unwrap(), "{spec} {} t={t}", class.j);
                }
            }
        }
        let g = group("B2");
        let p = ParabolicData::new(&g, GenSet::full(2));
        let t = g.reflection_index(g.from_word(&[0, 1, 0])).unwrap();
        assert_eq!(decompose_l(&g, &p, t).unwrap().elements.len(), 4);
    }

    #[test]
    fn translation_of_l_sets() {
        let g = group("B3");
        let a = Arrangement::new(&g);
        for class in a.classes() {
            let base = a.base_edge(class);
            let t = reflections_with_support(&g, class.j)[0];
            let l0 = l_set(&g, base, t).unwrap();
            for &i in &class.edges {
                let e = &a.edges()[i];
                let w = e.witness_w;
                let mut moved: Vec<ElemId> = l0.iter().map(|&x| g.mul(x, w)).collect();
                moved.sort_unstable();
                assert_eq!(l_set(&g, e, g.conj_refl(w, t)).unwrap(), moved);
            }
        }
    }

    #[test]
    fn every_chamber_face_is_counted_once() {
        let g = group("B3");
        let a = Arrangement::new(&g);
        for t in 0..g.reflection_count() as ReflId {
            let total: usize = a.edges().iter().filter(|e| e.contains(t)).map(|e| count_l(&g, e, t).unwrap()).sum();
            assert_eq!(total, g.order());
            let e = minimal_edge_through_chamber_face(&g, 0, t);
            assert!(l_set(&g, a.find(&e.reflections).unwrap(), t).unwrap().contains(&0));
        }
    }

    #[test]
    fn reports_and_rejected_inputs() {
        let g = group("A3");
        let a = Arrangement::new(&g);
        let class = &a.classes()[0];
        let edge = a.base_edge(class).clone();
        let f = multiplicity_formula(&g, class.j, FloorAmbient::WJ).unwrap();
        let l = f.l;
        let r = MultiplicityReport::new(edge.clone(), f.clone(), Some(l));
        assert!(r.matches());
        assert_eq!(r.ingredients(), f.ingredients);
        assert!(!MultiplicityReport::new(edge.clone(), f.clone(), Some(l + 1)).matches());
        assert!(MultiplicityReport::new(edge, f, None).matches());

        let reducible = GenSet::from_indices([0, 2]);
        assert_eq!(
            multiplicity_formula(&g, reducible, FloorAmbient::WJ).unwrap_err(),
            ArrangementError::ReducibleClass(reducible)
        );
        let p = ParabolicData::new(&g, GenSet::singleton(0));
        assert_eq!(
            decompose_l(&g, &p, 1).unwrap_err(),
            ArrangementError::NoFullSupportReflection(GenSet::singleton(0))
        );
    }
}
