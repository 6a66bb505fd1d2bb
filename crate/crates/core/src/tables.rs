//! Published tables of full support reflections and class multiplicities,
//! and their recomputation from an enumerated group.

use serde::{Deserialize, Serialize};

use crate::arrangement::{multiplicity_formula_for, multiplicity_oracle, Arrangement, FormulaResult, Ingredients};
use crate::coxeter::reflections::{full_support_reflections, reflection_class_ids, reflections_with_support};
use crate::coxeter::{CoxeterType, EnumeratedGroup, FloorAmbient, GenSet};
use crate::varchenko::VarchenkoError;

/// Marker attached to rows that cannot be recomputed here.
pub const UNVERIFIED: &str = "published value, unverified";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FullSupportRow {
    pub group: String,
    pub reflections: u64,
    pub classes: u64,
    /// Full support reflections in each conjugacy class.
    pub full_support: Vec<u64>,
}

/// The published counts for an irreducible type.
pub fn full_support_published(t: CoxeterType) -> FullSupportRow {
    let (reflections, full_support) = match t {
        CoxeterType::A(n) => ((n * (n + 1) / 2) as u64, vec![1]),
        CoxeterType::B(n) => ((n * n) as u64, vec![1, n as u64 - 1]),
        CoxeterType::D(n) => ((n * (n - 1)) as u64, vec![n as u64 - 2]),
        CoxeterType::E(6) => (36, vec![7]),
        CoxeterType::E(7) => (63, vec![16]),
        CoxeterType::E(8) => (120, vec![44]),
        CoxeterType::E(_) => unreachable!("only E6, E7, E8 exist"),
        CoxeterType::F4 => (24, vec![5, 5]),
        CoxeterType::H(3) => (15, vec![8]),
        CoxeterType::H(4) => (60, vec![42]),
        CoxeterType::H(_) => unreachable!("only H3, H4 exist"),
        CoxeterType::I2(m) if m % 2 == 1 => (m as u64, vec![m as u64 - 2]),
        CoxeterType::I2(m) => (m as u64, vec![(m as u64 - 2) / 2; 2]),
    };
    FullSupportRow { group: t.to_string(), reflections, classes: full_support.len() as u64, full_support }
}

/// The same counts taken from the group.
pub fn full_support_computed(g: &EnumeratedGroup) -> FullSupportRow {
    let ids = reflection_class_ids(g);
    let classes = ids.iter().max().map_or(0, |m| m + 1);
    let mut full_support = vec![0u64; classes];
    for t in full_support_reflections(g) {
        full_support[ids[t as usize]] += 1;
    }
    FullSupportRow {
        group: g.diagram().label(),
        reflections: g.reflection_count() as u64,
        classes: classes as u64,
        full_support,
    }
}

impl FullSupportRow {
    /// Equal up to the order of the conjugacy classes.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let sorted = |v: &[u64]| {
            let mut v = v.to_vec();
            v.sort_unstable();
            v
        };
        self.reflections == other.reflections
            && self.classes == other.classes
            && sorted(&self.full_support) == sorted(&other.full_support)
    }
}

/// A row of the multiplicity table. Split entries `a | b` become separate
/// alternatives, each a full `(|⌊t⌉|, |[J]|, |X(S,J)|, |X(J,s)|)` tuple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PublishedRow {
    pub group: String,
    pub class: String,
    pub alternatives: Vec<[u64; 4]>,
    /// False for rows out of reach of enumeration.
    pub verified: bool,
    /// Only the product is compared.
    pub product_only: bool,
}

impl PublishedRow {
    fn new(group: &str, class: impl Into<String>, alternatives: Vec<[u64; 4]>) -> Self {
        Self { group: group.into(), class: class.into(), alternatives, verified: true, product_only: false }
    }

    pub fn product(&self) -> u64 {
        self.alternatives[0].iter().product()
    }
}

fn fact(n: u64) -> u64 {
    (1..=n).product()
}

fn literal(group: &str, rows: &[(&str, [u64; 4])]) -> Vec<PublishedRow> {
    rows.iter().map(|&(c, a)| PublishedRow::new(group, c, vec![a])).collect()
}

/// The published multiplicity table for an irreducible type.
pub fn multiplicities_published(t: CoxeterType) -> Vec<PublishedRow> {
    let g = t.to_string();
    let g = g.as_str();
    match t {
        CoxeterType::A(r) => {
            let n = r as u64 + 1;
            (1..n).map(|i| PublishedRow::new(g, format!("A{i}"), vec![[1, n - i, fact(n - i - 1), fact(i - 1)]])).collect()
        }
        CoxeterType::B(r) => {
            let n = r as u64;
            let mut rows: Vec<PublishedRow> = (1..n)
                .map(|i| PublishedRow::new(g, format!("A{i}"), vec![[1, n - i, (1 << (n - i)) * fact(n - i - 1), fact(i - 1)]]))
                .collect();
            for j in 1..=n {
                let x = (1 << (n - 1)) * fact(n - j);
                let mut alts = vec![[1, 1, x, fact(j - 1)]];
                if j >= 2 {
                    alts.push([j - 1, 1, x, fact(j - 2)]);
                }
                rows.push(PublishedRow::new(g, format!("B{j}"), alts));
            }
            rows
        }
        CoxeterType::D(r) => {
            let n = r as u64;
            let mut rows: Vec<PublishedRow> = (1..n)
                .map(|i| {
                    PublishedRow::new(g, format!("A{i}"), vec![[1, n - i + 1, (1 << (n - i - 1)) * fact(n - i - 1), fact(i - 1)]])
                })
                .collect();
            rows.extend((4..=n).map(|j| {
                PublishedRow::new(g, format!("D{j}"), vec![[j - 2, 1, (1 << (n - j)) * fact(n - j), (1 << (j - 2)) * fact(j - 2)]])
            }));
            rows
        }
        CoxeterType::E(6) => literal(
            g,
            &[
                ("A1", [1, 6, 720, 1]),
                ("A2", [1, 5, 72, 1]),
                ("A3", [1, 5, 8, 2]),
                ("A4", [1, 4, 2, 6]),
                ("D4", [2, 1, 6, 8]),
                ("A5", [1, 1, 2, 24]),
                ("D5", [3, 2, 1, 48]),
                ("E6", [7, 1, 1, 720]),
            ],
        ),
        CoxeterType::E(7) => unverified(literal(
            g,
            &[
                ("A1", [1, 7, 23040, 1]),
                ("A2", [1, 6, 1440, 1]),
                ("A3", [1, 6, 96, 2]),
                ("A4", [1, 5, 12, 6]),
                ("D4", [2, 1, 48, 8]),
                ("A5'", [1, 1, 12, 24]),
                ("A5''", [1, 1, 4, 24]),
                ("D5", [3, 2, 4, 48]),
                ("A6", [1, 1, 2, 120]),
                ("D6", [4, 1, 2, 384]),
                ("E6", [7, 1, 2, 720]),
                ("E7", [16, 1, 1, 23040]),
            ],
        )),
        CoxeterType::E(8) => unverified(literal(
            g,
            &[
                ("A1", [1, 8, 2903040, 1]),
                ("A2", [1, 7, 103680, 1]),
                ("A3", [1, 7, 3840, 2]),
                ("A4", [1, 6, 240, 6]),
                ("D4", [2, 1, 1154, 8]),
                ("A5", [1, 4, 24, 24]),
                ("D5", [3, 2, 48, 48]),
                ("A6", [1, 3, 4, 120]),
                ("D6", [4, 1, 8, 384]),
                ("E6", [7, 1, 12, 720]),
                ("A7", [1, 1, 2, 720]),
                ("D7", [5, 1, 2, 3840]),
                ("E7", [16, 1, 2, 23040]),
                ("E8", [44, 1, 1, 2903040]),
            ],
        )),
        CoxeterType::E(_) => unreachable!("only E6, E7, E8 exist"),
        CoxeterType::F4 => {
            let mut rows = literal(
                g,
                &[
                    ("A1'", [1, 2, 48, 1]),
                    ("A1''", [1, 2, 48, 1]),
                    ("A2'", [1, 1, 12, 1]),
                    ("A2''", [1, 1, 12, 1]),
                    ("B2", [2, 1, 8, 2]),
                ],
            );
            for c in ["B3'", "B3''"] {
                rows.push(PublishedRow::new(g, c, vec![[1, 1, 2, 8], [2, 1, 2, 4]]));
            }
            rows.push(PublishedRow::new(g, "F4", vec![[10, 1, 1, 48]]));
            rows
        }
        CoxeterType::H(3) => literal(
            g,
            &[("A1", [1, 3, 4, 1]), ("A2", [1, 1, 2, 1]), ("I2(5)", [3, 1, 2, 1]), ("H3", [8, 1, 1, 4])],
        ),
        CoxeterType::H(4) => literal(
            g,
            &[
                ("A1", [1, 4, 120, 1]),
                ("A2", [1, 2, 12, 1]),
                ("I2(5)", [3, 1, 20, 1]),
                ("A3", [1, 1, 2, 2]),
                ("H3", [8, 1, 2, 4]),
                ("H4", [42, 1, 1, 120]),
            ],
        ),
        CoxeterType::H(_) => unreachable!("only H3, H4 exist"),
        CoxeterType::I2(m) => {
            let m = m as u64;
            let mut a1 = if m % 2 == 1 {
                PublishedRow::new(g, "A1", vec![[1, 2, 1, 1]])
            } else {
                PublishedRow::new(g, "A1", vec![[2, 1, 1, 1]])
            };
            a1.product_only = m.is_multiple_of(2);
            vec![a1, PublishedRow::new(g, g, vec![[m - 2, 1, 1, 1]])]
        }
    }
}

fn unverified(mut rows: Vec<PublishedRow>) -> Vec<PublishedRow> {
    for r in &mut rows {
        r.verified = false;
    }
    rows
}

/// Name of the row under which a class `J` of type `sub` inside an
/// irreducible group of type `t` is listed.
pub fn published_class_label(t: CoxeterType, sub: CoxeterType, j: GenSet) -> String {
    match t {
        CoxeterType::B(r) if j.contains(r - 1) => format!("B{}", j.len()),
        CoxeterType::I2(_) if j.len() == 2 => t.to_string(),
        CoxeterType::F4 if matches!(sub, CoxeterType::A(_) | CoxeterType::B(3)) => {
            let prime = if j.contains(0) || j == GenSet::singleton(1) { "'" } else { "''" };
            format!("{sub}{prime}")
        }
        _ => sub.to_string(),
    }
}

/// One Coxeter class: formula, oracle, and the matching published row.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassRow {
    pub j: GenSet,
    pub label: String,
    pub edges: usize,
    pub formula: FormulaResult,
    pub oracle: Option<u64>,
    pub published: Option<PublishedRow>,
}

impl ClassRow {
    pub fn ingredients(&self) -> Ingredients {
        self.formula.ingredients
    }

    /// Distinct ingredient tuples over the tried choices of `t_J`.
    pub fn choice_tuples(&self) -> Vec<[u64; 4]> {
        let mut v: Vec<[u64; 4]> = self.formula.choices.iter().map(|(_, i)| i.as_array()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn oracle_matches(&self) -> Option<bool> {
        self.oracle.map(|l| l == self.formula.l)
    }

    pub fn product_matches(&self) -> Option<bool> {
        self.published.as_ref().map(|p| p.product() == self.formula.l)
    }

    /// Every tuple met among the choices is listed, and when all choices
    /// were tried every listed tuple is met. `None` without a row or for
    /// rows compared by product only.
    pub fn ingredients_match(&self, exhaustive: bool) -> Option<bool> {
        let p = self.published.as_ref()?;
        if p.product_only {
            return None;
        }
        let seen = self.choice_tuples();
        let listed_covers = seen.iter().all(|a| p.alternatives.contains(a));
        let seen_covers = !exhaustive || p.alternatives.iter().all(|a| seen.contains(a));
        Some(listed_covers && seen_covers)
    }
}

/// Recompute the multiplicity table. The oracle runs on the base edge of
/// each class when `with_oracle` is set.
pub fn multiplicities_computed(
    g: &EnumeratedGroup,
    arrangement: &Arrangement,
    ambient: FloorAmbient,
    with_oracle: bool,
) -> Result<Vec<ClassRow>, VarchenkoError> {
    let irreducible = g.diagram().is_irreducible();
    let t = g.diagram().components()[0].0;
    let published = if irreducible { multiplicities_published(t) } else { Vec::new() };
    arrangement
        .classes()
        .iter()
        .map(|c| {
            let formula = multiplicity_formula_for(g, &c.parabolic, ambient)?;
            let oracle = if with_oracle { Some(multiplicity_oracle(g, arrangement.base_edge(c))?) } else { None };
            let sub = g.diagram().subdiagram_type(c.j).expect("classes are irreducible");
            let label = if irreducible { published_class_label(t, sub, c.j) } else { sub.to_string() };
            let published = published.iter().find(|r| r.class == label).cloned();
            Ok(ClassRow { j: c.j, label, edges: c.edges.len(), formula, oracle, published })
        })
        .collect()
}

/// Whether all reflections with support `J` were tried for this row.
pub fn choices_exhaustive(g: &EnumeratedGroup, row: &ClassRow) -> bool {
    row.formula.choices.len() == reflections_with_support(g, row.j).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{build_group, parse_group_spec};

    fn group(spec: &str) -> EnumeratedGroup {
        build_group(&parse_group_spec(spec).unwrap()).unwrap()
    }

    #[test]
    fn full_support_small() {
        for spec in ["A4", "B3", "D5", "F4", "H3", "I2(7)", "I2(8)"] {
            let g = group(spec);
            let t = g.diagram().components()[0].0;
            assert!(full_support_computed(&g).agrees_with(&full_support_published(t)), "{spec}");
        }
    }

    #[test]
    fn labels_cover_published_rows() {
        for spec in ["A4", "B4", "D4", "F4", "H3", "H4", "I2(6)", "I2(7)"] {
            let g = group(spec);
            let a = Arrangement::new(&g);
            let rows = multiplicities_computed(&g, &a, FloorAmbient::WJ, false).unwrap();
            for r in &rows {
                assert!(r.published.is_some(), "{spec}: no row named {}", r.label);
            }
            let t = g.diagram().components()[0].0;
            for p in multiplicities_published(t) {
                assert!(rows.iter().any(|r| r.label == p.class), "{spec}: row {} unmatched", p.class);
            }
        }
    }

    #[test]
    fn h3_rows_match() {
        let g = group("H3");
        let a = Arrangement::new(&g);
        for r in multiplicities_computed(&g, &a, FloorAmbient::WJ, true).unwrap() {
            assert_eq!(r.ingredients_match(choices_exhaustive(&g, &r)), Some(true), "{}", r.label);
            assert_eq!(r.product_matches(), Some(true));
            assert_eq!(r.oracle_matches(), Some(true));
        }
    }

    #[test]
    fn split_rows_are_consistent() {
        for t in [CoxeterType::B(4), CoxeterType::F4, CoxeterType::D(6), CoxeterType::E(8)] {
            for r in multiplicities_published(t) {
                assert!(r.alternatives.iter().all(|a| a.iter().product::<u64>() == r.product()), "{t} {}", r.class);
            }
        }
    }

    #[test]
    fn unverified_rows() {
        assert!(multiplicities_published(CoxeterType::E(8)).iter().all(|r| !r.verified));
        let d4 = multiplicities_published(CoxeterType::E(8)).into_iter().find(|r| r.class == "D4").unwrap();
        assert_eq!(d4.alternatives, [[2, 1, 1154, 8]]);
        assert!(multiplicities_published(CoxeterType::E(6)).iter().all(|r| r.verified));
    }
}
