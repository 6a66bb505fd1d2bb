//! Assignment of formal variables to hyperplanes.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{Monomial, VarId};
use crate::coxeter::reflections::reflection_class_ids;
use crate::coxeter::{EnumeratedGroup, ReflId};

use super::VarchenkoError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeightMode {
    /// One variable `a{k}` per hyperplane.
    PerHyperplane,
    /// One variable `b{c}` per conjugacy class of reflections.
    PerOrbit,
    /// A single variable `q`.
    SingleQ,
    /// User supplied map.
    Explicit,
}

impl fmt::Display for WeightMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::PerHyperplane => "per-hyperplane",
            Self::PerOrbit => "per-orbit",
            Self::SingleQ => "q",
            Self::Explicit => "explicit",
        })
    }
}

impl FromStr for WeightMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "per-hyperplane" => Ok(Self::PerHyperplane),
            "per-orbit" => Ok(Self::PerOrbit),
            "q" => Ok(Self::SingleQ),
            "explicit" => Ok(Self::Explicit),
            other => Err(format!("unknown weight mode {other:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightAssignment {
    pub mode: WeightMode,
    /// Variable of each reflection, by reflection index.
    pub var_of: Vec<VarId>,
    pub var_names: Vec<String>,
    /// Conjugacy class of each reflection.
    pub orbit_of: Vec<usize>,
}

impl WeightAssignment {
    pub fn new(g: &EnumeratedGroup, mode: WeightMode) -> Result<Self, VarchenkoError> {
        match mode {
            WeightMode::PerHyperplane => Ok(Self::per_hyperplane(g)),
            WeightMode::PerOrbit => Ok(Self::per_orbit(g)),
            WeightMode::SingleQ => Ok(Self::single_q(g)),
            WeightMode::Explicit => Err(VarchenkoError::ExplicitWeights { line: 0, message: "no weight file given".into() }),
        }
    }

    pub fn per_hyperplane(g: &EnumeratedGroup) -> Self {
        let n = g.reflection_count();
        Self {
            mode: WeightMode::PerHyperplane,
            var_of: (0..n as VarId).collect(),
            var_names: (1..=n).map(|k| format!("a{k}")).collect(),
            orbit_of: reflection_class_ids(g),
        }
    }

    pub fn per_orbit(g: &EnumeratedGroup) -> Self {
        let orbit_of = reflection_class_ids(g);
        let classes = orbit_of.iter().max().map_or(0, |m| m + 1);
        Self {
            mode: WeightMode::PerOrbit,
            var_of: orbit_of.iter().map(|&c| c as VarId).collect(),
            var_names: (1..=classes).map(|c| format!("b{c}")).collect(),
            orbit_of,
        }
    }

    pub fn single_q(g: &EnumeratedGroup) -> Self {
        Self {
            mode: WeightMode::SingleQ,
            var_of: vec![0; g.reflection_count()],
            var_names: vec!["q".into()],
            orbit_of: reflection_class_ids(g),
        }
    }

    /// Variables named by the user; equal names share a variable. Variable ids
    /// follow first appearance in reflection order.
    pub fn explicit(g: &EnumeratedGroup, names: &[(ReflId, String)]) -> Result<Self, VarchenkoError> {
        let n = g.reflection_count();
        let mut slot: Vec<Option<&str>> = vec![None; n];
        for (t, name) in names {
            let t = *t as usize;
            if t >= n {
                return Err(VarchenkoError::ExplicitWeights {
                    line: 0,
                    message: format!("reflection {} out of range 1..={n}", t + 1),
                });
            }
            if slot[t].replace(name).is_some() {
                return Err(VarchenkoError::ExplicitWeights {
                    line: 0,
                    message: format!("reflection {} assigned twice", t + 1),
                });
            }
        }
        let mut ids: HashMap<&str, VarId> = HashMap::new();
        let mut var_names = Vec::new();
        let mut var_of = Vec::with_capacity(n);
        for (t, s) in slot.iter().enumerate() {
            let name = s.ok_or(VarchenkoError::UnassignedReflection(t + 1))?;
            let id = *ids.entry(name).or_insert_with(|| {
                var_names.push(name.to_string());
                (var_names.len() - 1) as VarId
            });
            var_of.push(id);
        }
        Ok(Self { mode: WeightMode::Explicit, var_of, var_names, orbit_of: reflection_class_ids(g) })
    }

    /// Parse lines `reflection_index variable_name` with 1-based indices.
    /// Blank lines and lines starting with `#` are skipped.
    pub fn parse_explicit(g: &EnumeratedGroup, text: &str) -> Result<Self, VarchenkoError> {
        let mut names = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| VarchenkoError::ExplicitWeights { line: i + 1, message };
            let mut parts = line.split_whitespace();
            let (Some(idx), Some(name), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(err(format!("expected `index name`, got {line:?}")));
            };
            let idx: usize = idx.parse().map_err(|_| err(format!("bad reflection index {idx:?}")))?;
            if idx == 0 || idx > g.reflection_count() {
                return Err(err(format!("reflection {idx} out of range 1..={}", g.reflection_count())));
            }
            if !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(err(format!("bad variable name {name:?}")));
            }
            names.push(((idx - 1) as ReflId, name.to_string()));
        }
        Self::explicit(g, &names)
    }

    pub fn var_count(&self) -> usize {
        self.var_names.len()
    }

    pub fn var(&self, t: ReflId) -> VarId {
        self.var_of[t as usize]
    }

    pub fn name(&self, v: VarId) -> String {
        self.var_names[v as usize].clone()
    }

    /// `a(E) = prod a_{H_t}` over the given reflections.
    pub fn monomial_of(&self, reflections: &[ReflId]) -> Monomial {
        Monomial::product_of(reflections.iter().map(|&t| self.var(t)))
    }
}
