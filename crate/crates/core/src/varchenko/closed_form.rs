//! The determinant as a product over relevant edges.

use serde::{Deserialize, Serialize};

use crate::algebra::{Factorization, Monomial};
use crate::arrangement::{multiplicity_formula_for, Arrangement, FormulaResult};
use crate::coxeter::{EnumeratedGroup, FloorAmbient, GenSet, ReflId};

use super::{VarchenkoError, WeightAssignment};

/// The factor `(1 - a(E)^2)^{l(E)}` of one relevant edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeFactor {
    pub monomial: Monomial,
    pub multiplicity: u64,
    /// Representative `J` of the edge's Coxeter class.
    pub class: GenSet,
    pub class_label: String,
    /// Number of hyperplanes containing the edge.
    pub size: usize,
    pub coset: usize,
    pub reflections: Vec<ReflId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedForm {
    /// One entry per relevant edge, in global edge order.
    pub edges: Vec<EdgeFactor>,
    /// Formula data, one per class.
    pub classes: Vec<FormulaResult>,
    pub factorization: Factorization,
}

pub fn class_label(g: &EnumeratedGroup, j: GenSet) -> String {
    g.diagram().subdiagram_type(j).map_or_else(|| j.to_string(), |t| t.to_string())
}

pub fn closed_form(
    g: &EnumeratedGroup,
    w: &WeightAssignment,
    ambient: FloorAmbient,
) -> Result<ClosedForm, VarchenkoError> {
    closed_form_with(g, &Arrangement::new(g), w, ambient)
}

pub fn closed_form_with(
    g: &EnumeratedGroup,
    arrangement: &Arrangement,
    w: &WeightAssignment,
    ambient: FloorAmbient,
) -> Result<ClosedForm, VarchenkoError> {
    let classes: Vec<FormulaResult> = arrangement
        .classes()
        .iter()
        .map(|c| multiplicity_formula_for(g, &c.parabolic, ambient))
        .collect::<Result<_, _>>()?;
    let mut edges = Vec::with_capacity(arrangement.edges().len());
    for e in arrangement.edges() {
        let c = arrangement.classes().iter().position(|c| c.j == e.class_j).expect("edge belongs to a class");
        edges.push(EdgeFactor {
            monomial: w.monomial_of(&e.reflections),
            multiplicity: classes[c].l,
            class: e.class_j,
            class_label: class_label(g, e.class_j),
            size: e.reflections.len(),
            coset: e.coset_id.unwrap_or(0),
            reflections: e.reflections.clone(),
        });
    }
    let factorization =
        Factorization::from_pairs(edges.iter().map(|e| (e.monomial.clone(), e.multiplicity))).normalize();
    Ok(ClosedForm { edges, classes, factorization })
}

/// The normalized factorization with the default `⌊t⌉` ambient.
pub fn closed_form_factorization(g: &EnumeratedGroup, w: &WeightAssignment) -> Result<Factorization, VarchenkoError> {
    Ok(closed_form(g, w, FloorAmbient::default())?.factorization)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::VarId;
    use crate::coxeter::{build_group, parse_group_spec};

    fn group(spec: &str) -> EnumeratedGroup {
        build_group(&parse_group_spec(spec).unwrap()).unwrap()
    }

    fn a_names(v: VarId) -> String {
        format!("a{}", v + 1)
    }

    #[test]
    fn a2_per_hyperplane() {
        let g = group("A2");
        let f = closed_form_factorization(&g, &WeightAssignment::per_hyperplane(&g)).unwrap();
        let expected = Factorization::from_pairs([
            (Monomial::var(0), 2),
            (Monomial::var(1), 2),
            (Monomial::var(2), 2),
            (Monomial::product_of([0, 1, 2]), 1),
        ]);
        assert_eq!(f, expected.normalize());
        assert_eq!(f.render(&a_names), "(1-a1^2)^2 (1-a2^2)^2 (1-a3^2)^2 (1-a1^2a2^2a3^2)^1");
        assert_eq!(f.total_degree(), 18);
    }

    #[test]
    fn b2_per_hyperplane() {
        let g = group("B2");
        let f = closed_form_factorization(&g, &WeightAssignment::per_hyperplane(&g)).unwrap();
        let expected = Factorization::from_pairs(
            (0..4).map(|v| (Monomial::var(v), 2)).chain([(Monomial::product_of([0, 1, 2, 3]), 2)]),
        );
        assert_eq!(f, expected.normalize());
    }

    #[test]
    fn a3_single_q() {
        let g = group("A3");
        let f = closed_form_factorization(&g, &WeightAssignment::single_q(&g)).unwrap();
        assert_eq!(f.render(&|_| "q".into()), "(1-q^2)^36 (1-q^6)^8 (1-q^12)^2");
    }

    #[test]
    fn edge_metadata() {
        let g = group("H3");
        let cf = closed_form(&g, &WeightAssignment::per_hyperplane(&g), FloorAmbient::WJ).unwrap();
        assert_eq!(cf.edges.len(), 15 + 10 + 6 + 1);
        let center = cf.edges.last().unwrap();
        assert_eq!((center.size, center.multiplicity, center.class_label.as_str()), (15, 32, "H3"));
        let mut labels: Vec<&str> = cf.edges.iter().map(|e| e.class_label.as_str()).collect();
        labels.dedup();
        assert_eq!(labels, ["A1", "A2", "I2(5)", "H3"]);
    }

    #[test]
    fn ambient_does_not_change_products() {
        for spec in ["B3", "F4", "I2(6)"] {
            let g = group(spec);
            let w = WeightAssignment::per_orbit(&g);
            let a = closed_form(&g, &w, FloorAmbient::WJ).unwrap();
            let b = closed_form(&g, &w, FloorAmbient::W).unwrap();
            assert_eq!(a.factorization, b.factorization, "{spec}");
        }
    }
}
