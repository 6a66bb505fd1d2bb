//! Machine-readable output schemas.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use varchenko_core::algebra::Monomial;
use varchenko_core::varchenko::{Verdict, VerifyRecord, WeightAssignment};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariableJson {
    pub id: u32,
    pub name: String,
    /// Conjugacy class shared by every hyperplane carrying the variable.
    pub orbit: Option<usize>,
}

pub fn variables(w: &WeightAssignment) -> Vec<VariableJson> {
    (0..w.var_count())
        .map(|v| {
            let mut orbits = w.var_of.iter().zip(&w.orbit_of).filter(|(&x, _)| x as usize == v).map(|(_, &o)| o);
            let first = orbits.next();
            let orbit = if orbits.all(|o| Some(o) == first) { first } else { None };
            VariableJson { id: v as u32, name: w.var_names[v].clone(), orbit }
        })
        .collect()
}

pub fn monomial_map(m: &Monomial, w: &WeightAssignment) -> BTreeMap<String, u32> {
    m.exps().iter().map(|&(v, e)| (w.var_names[v as usize].clone(), e)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub class: String,
    pub size: usize,
    pub coset: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorJson {
    pub monomial: BTreeMap<String, u32>,
    pub multiplicity: u64,
    pub edge: EdgeJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetJson {
    pub group: String,
    pub weight_mode: String,
    pub variables: Vec<VariableJson>,
    pub factors: Vec<FactorJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub group: String,
    pub weight_mode: String,
    pub variables: Vec<VariableJson>,
    /// Reduced word of each row's chamber, `e` for the identity.
    pub rows: Vec<String>,
    pub entries: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConcordanceJson {
    pub check: String,
    pub group: String,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyJson {
    pub group: String,
    pub weight_mode: String,
    pub seed: u64,
    pub primes: Vec<u64>,
    pub trials: usize,
    pub records: Vec<VerifyRecord>,
    pub concordance: Vec<ConcordanceJson>,
    pub passed: usize,
    pub total: usize,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IngredientsJson {
    pub floor: u64,
    pub class_size: u64,
    pub x_sj: u64,
    pub x_js: u64,
}

impl From<[u64; 4]> for IngredientsJson {
    fn from(a: [u64; 4]) -> Self {
        Self { floor: a[0], class_size: a[1], x_sj: a[2], x_js: a[3] }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityJson {
    pub class: String,
    pub j: String,
    pub edges: usize,
    pub t_j: usize,
    pub s_j: String,
    pub ingredients: IngredientsJson,
    /// Distinct ingredient tuples over all reflections with support `J` that were tried.
    pub choices: Vec<IngredientsJson>,
    pub l_formula: u64,
    pub l_oracle: Option<u64>,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityReportJson {
    pub group: String,
    pub floor_ambient: String,
    pub classes: Vec<MultiplicityJson>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PublishedJson {
    pub class: String,
    pub alternatives: Vec<IngredientsJson>,
    pub l: u64,
    pub status: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FullSupportJson {
    pub reflections: u64,
    pub classes: u64,
    pub full_support: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityRowJson {
    pub computed: Option<MultiplicityJson>,
    pub published: Option<PublishedJson>,
    pub published_product_match: Option<bool>,
    pub published_ingredients_match: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TablesJson {
    pub group: String,
    pub full_support_computed: Option<FullSupportJson>,
    pub full_support_published: Option<FullSupportJson>,
    pub multiplicities: Vec<MultiplicityRowJson>,
}
