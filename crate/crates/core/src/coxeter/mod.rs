//! Finite Coxeter groups: diagrams, exact enumeration, parabolic subgroups and
//! reflection combinatorics.

pub mod diagram;
pub mod group;
pub mod parabolic;
pub mod realization;
pub mod reflections;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use diagram::{parse_group_spec, parse_group_spec_with, CoxeterDiagram, CoxeterType, ParseLimits};
pub use group::{build_group, build_group_with, BuildOptions, ElemId, EnumeratedGroup, ReflId, DEFAULT_ORDER_LIMIT};
pub use parabolic::ParabolicData;
pub use reflections::FloorAmbient;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoxeterError {
    #[error("cannot parse group spec: {0}")]
    Parse(String),
    #[error("unsupported Coxeter type {0}")]
    UnsupportedType(String),
    #[error("rank or parameter {0} is out of the configured range")]
    RankOutOfRange(usize),
    #[error("invalid bond matrix: {0}")]
    InvalidBonds(String),
    #[error("diagram is not of finite type")]
    NonFiniteDiagram,
    #[error("group order {order} exceeds the enumeration limit {limit}")]
    OrderLimitExceeded { order: u128, limit: usize },
    #[error("generator s{} is not in J = {}", .0 + 1, .1)]
    GeneratorNotInJ(usize, GenSet),
}

/// A subset of the simple reflections, as a bitmask over generator indices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GenSet(pub u64);

impl GenSet {
    pub fn empty() -> Self {
        Self(0)
    }

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            Self(u64::MAX)
        } else {
            Self((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        Self(1 << i)
    }

    pub fn from_indices(idx: impl IntoIterator<Item = usize>) -> Self {
        Self(idx.into_iter().fold(0, |acc, i| acc | 1 << i))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn union(self, o: Self) -> Self {
        Self(self.0 | o.0)
    }

    pub fn is_subset(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.contains(i))
    }
}

impl fmt::Display for GenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|i| format!("s{}", i + 1)).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}
