//! Coxeter diagrams: parsing, validation against the finite classification,
//! and type recognition for subdiagrams.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{CoxeterError, GenSet};

/// An irreducible finite Coxeter type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CoxeterType {
    A(usize),
    B(usize),
    D(usize),
    E(usize),
    F4,
    H(usize),
    I2(u32),
}

impl CoxeterType {
    pub fn rank(&self) -> usize {
        match *self {
            Self::A(n) | Self::B(n) | Self::D(n) | Self::E(n) | Self::H(n) => n,
            Self::F4 => 4,
            Self::I2(_) => 2,
        }
    }

    /// Group order from the classification.
    pub fn order(&self) -> u128 {
        let fact = |n: usize| (1..=n as u128).product::<u128>();
        match *self {
            Self::A(n) => fact(n + 1),
            Self::B(n) => (1u128 << n) * fact(n),
            Self::D(n) => (1u128 << (n - 1)) * fact(n),
            Self::E(6) => 51_840,
            Self::E(7) => 2_903_040,
            Self::E(8) => 696_729_600,
            Self::E(_) => unreachable!("only E6, E7, E8 exist"),
            Self::F4 => 1152,
            Self::H(3) => 120,
            Self::H(4) => 14_400,
            Self::H(_) => unreachable!("only H3, H4 exist"),
            Self::I2(m) => 2 * m as u128,
        }
    }

    /// Number of reflections.
    pub fn reflection_count(&self) -> usize {
        match *self {
            Self::A(n) => n * (n + 1) / 2,
            Self::B(n) => n * n,
            Self::D(n) => n * (n - 1),
            Self::E(6) => 36,
            Self::E(7) => 63,
            Self::E(8) => 120,
            Self::E(_) => unreachable!(),
            Self::F4 => 24,
            Self::H(3) => 15,
            Self::H(4) => 60,
            Self::H(_) => unreachable!(),
            Self::I2(m) => m as usize,
        }
    }

    /// Standard bond labels on `rank` nodes (Bourbaki numbering, 0-based).
    fn bonds(&self) -> Vec<(usize, usize, u32)> {
        let path = |n: usize| (0..n.saturating_sub(1)).map(|i| (i, i + 1, 3)).collect::<Vec<_>>();
        match *self {
            Self::A(n) => path(n),
            Self::B(n) => {
                let mut b = path(n);
                b.last_mut().expect("rank >= 2").2 = 4;
                b
            }
            Self::D(n) => {
                let mut b = path(n - 1);
                b.push((n - 3, n - 1, 3));
                b
            }
            Self::E(n) => {
                let mut b = vec![(0, 2, 3), (1, 3, 3)];
                b.extend((2..n - 1).map(|i| (i, i + 1, 3)));
                b
            }
            Self::F4 => vec![(0, 1, 3), (1, 2, 4), (2, 3, 3)],
            Self::H(n) => {
                let mut b = path(n);
                b[0].2 = 5;
                b
            }
            Self::I2(m) => vec![(0, 1, m)],
        }
    }

    /// Whether every bond label on the diagram is odd (reflections then form one class).
    pub fn all_bonds_odd(&self) -> bool {
        self.bonds().iter().all(|&(_, _, m)| m % 2 == 1)
    }
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::A(n) => write!(f, "A{n}"),
            Self::B(n) => write!(f, "B{n}"),
            Self::D(n) => write!(f, "D{n}"),
            Self::E(n) => write!(f, "E{n}"),
            Self::F4 => write!(f, "F4"),
            Self::H(n) => write!(f, "H{n}"),
            Self::I2(m) => write!(f, "I2({m})"),
        }
    }
}

/// Limits applied while parsing a group spec.
#[derive(Clone, Copy, Debug)]
pub struct ParseLimits {
    pub max_rank: usize,
    pub max_dihedral: u32,
}

impl Default for ParseLimits {
    fn default() -> Self {
        Self { max_rank: 32, max_dihedral: 10_000 }
    }
}

/// A (possibly reducible) finite Coxeter diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoxeterDiagram {
    bonds: Vec<Vec<u32>>,
    components: Vec<(CoxeterType, Vec<usize>)>,
}

impl CoxeterDiagram {
    /// Build from a symmetric bond matrix, validating finiteness.
    pub fn from_bonds(bonds: Vec<Vec<u32>>) -> Result<Self, CoxeterError> {
        let n = bonds.len();
        if n == 0 || n > 64 {
            return Err(CoxeterError::RankOutOfRange(n));
        }
        for i in 0..n {
            if bonds[i].len() != n || bonds[i][i] != 1 {
                return Err(CoxeterError::InvalidBonds(format!("row {i} malformed")));
            }
            for j in 0..n {
                if i != j && (bonds[i][j] < 2 || bonds[i][j] != bonds[j][i]) {
                    return Err(CoxeterError::InvalidBonds(format!("m[{i}][{j}] = {}", bonds[i][j])));
                }
            }
        }
        let all = GenSet::full(n);
        let mut components = Vec::new();
        for comp in connected_components(&bonds, all) {
            let ty = classify(&bonds, comp).ok_or(CoxeterError::NonFiniteDiagram)?;
            components.push((ty, comp.iter().collect()));
        }
        Ok(Self { bonds, components })
    }

    /// Block-diagonal product of irreducible types.
    pub fn from_types(types: &[CoxeterType]) -> Result<Self, CoxeterError> {
        let n: usize = types.iter().map(CoxeterType::rank).sum();
        if n == 0 || n > 64 {
            return Err(CoxeterError::RankOutOfRange(n));
        }
        let mut bonds = vec![vec![2u32; n]; n];
        for (i, row) in bonds.iter_mut().enumerate() {
            row[i] = 1;
        }
        let mut offset = 0;
        for ty in types {
            for (i, j, m) in ty.bonds() {
                bonds[offset + i][offset + j] = m;
                bonds[offset + j][offset + i] = m;
            }
            offset += ty.rank();
        }
        Self::from_bonds(bonds)
    }

    pub fn rank(&self) -> usize {
        self.bonds.len()
    }

    pub fn bond(&self, i: usize, j: usize) -> u32 {
        self.bonds[i][j]
    }

    pub fn bonds(&self) -> &[Vec<u32>] {
        &self.bonds
    }

    /// Irreducible components with the generators they occupy.
    pub fn components(&self) -> &[(CoxeterType, Vec<usize>)] {
        &self.components
    }

    pub fn is_irreducible(&self) -> bool {
        self.components.len() == 1
    }

    /// Group order from the classification, as a product over components.
    pub fn known_order(&self) -> u128 {
        self.components.iter().map(|(t, _)| t.order()).product()
    }

    pub fn known_reflection_count(&self) -> usize {
        self.components.iter().map(|(t, _)| t.reflection_count()).sum()
    }

    /// `A2xA1` style label.
    pub fn label(&self) -> String {
        self.components.iter().map(|(t, _)| t.to_string()).collect::<Vec<_>>().join("x")
    }

    /// Whether the generators in `j` induce a connected subdiagram.
    pub fn is_connected(&self, j: GenSet) -> bool {
        !j.is_empty() && connected_components(&self.bonds, j).len() == 1
    }

    /// Type of the parabolic subdiagram on `j`, if it is connected.
    pub fn subdiagram_type(&self, j: GenSet) -> Option<CoxeterType> {
        if !self.is_connected(j) {
            return None;
        }
        classify(&self.bonds, j)
    }

    /// All nonempty connected subsets of the generators.
    pub fn irreducible_subsets(&self) -> Vec<GenSet> {
        let n = self.rank();
        assert!(n <= 24, "subset enumeration is exponential in the rank");
        (1u64..(1 << n)).map(GenSet).filter(|&j| self.is_connected(j)).collect()
    }
}

impl fmt::Display for CoxeterDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

fn connected_components(bonds: &[Vec<u32>], within: GenSet) -> Vec<GenSet> {
    let mut seen = GenSet::empty();
    let mut out = Vec::new();
    for start in within.iter() {
        if seen.contains(start) {
            continue;
        }
        let mut comp = GenSet::singleton(start);
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in within.iter() {
                if bonds[i][j] >= 3 && !comp.contains(j) {
                    comp.insert(j);
                    stack.push(j);
                }
            }
        }
        seen = seen.union(comp);
        out.push(comp);
    }
    out
}

/// Recognize a connected subdiagram; `None` if it is not of finite type.
fn classify(bonds: &[Vec<u32>], nodes: GenSet) -> Option<CoxeterType> {
    let v: Vec<usize> = nodes.iter().collect();
    let k = v.len();
    let nbrs = |i: usize| v.iter().copied().filter(move |&j| j != i && bonds[i][j] >= 3);
    match k {
        0 => return None,
        1 => return Some(CoxeterType::A(1)),
        2 => {
            return Some(match bonds[v[0]][v[1]] {
                3 => CoxeterType::A(2),
                4 => CoxeterType::B(2),
                m => CoxeterType::I2(m),
            })
        }
        _ => {}
    }
    let edges: Vec<(usize, usize, u32)> = v
        .iter()
        .enumerate()
        .flat_map(|(a, &i)| v[a + 1..].iter().filter(move |&&j| bonds[i][j] >= 3).map(move |&j| (i, j, bonds[i][j])))
        .collect();
    if edges.len() != k - 1 || edges.iter().any(|e| e.2 > 5) {
        return None;
    }
    let degree = |i: usize| nbrs(i).count();
    let branch: Vec<usize> = v.iter().copied().filter(|&i| degree(i) >= 3).collect();
    match branch.len() {
        0 => {
            // Path: walk from an end and read labels in order.
            let start = v.iter().copied().find(|&i| degree(i) == 1)?;
            let mut labels = Vec::with_capacity(k - 1);
            let (mut prev, mut cur) = (usize::MAX, start);
            loop {
                let Some(next) = nbrs(cur).find(|&j| j != prev) else { break };
                labels.push(bonds[cur][next]);
                prev = cur;
                cur = next;
            }
            let specials: Vec<(usize, u32)> =
                labels.iter().copied().enumerate().filter(|&(_, m)| m != 3).collect();
            match specials.as_slice() {
                [] => Some(CoxeterType::A(k)),
                [(pos, 4)] if *pos == 0 || *pos == k - 2 => Some(CoxeterType::B(k)),
                [(1, 4)] if k == 4 => Some(CoxeterType::F4),
                [(pos, 5)] if (*pos == 0 || *pos == k - 2) && (k == 3 || k == 4) => Some(CoxeterType::H(k)),
                _ => None,
            }
        }
        1 => {
            if edges.iter().any(|e| e.2 != 3) || degree(branch[0]) != 3 {
                return None;
            }
            let center = branch[0];
            let mut arms: Vec<usize> = nbrs(center)
                .map(|first| {
                    let (mut prev, mut cur, mut len) = (center, first, 1);
                    while let Some(next) = nbrs(cur).find(|&j| j != prev) {
                        prev = cur;
                        cur = next;
                        len += 1;
                    }
                    len
                })
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, x] => Some(CoxeterType::D(x + 3)),
                [1, 2, 2] => Some(CoxeterType::E(6)),
                [1, 2, 3] => Some(CoxeterType::E(7)),
                [1, 2, 4] => Some(CoxeterType::E(8)),
                _ => None,
            }
        }
        _ => None,
    }
}

fn parse_name(tok: &str, limits: &ParseLimits) -> Result<CoxeterType, CoxeterError> {
    let bad = || CoxeterError::Parse(format!("unrecognized group name '{tok}'"));
    let ty = match tok {
        "E6" => CoxeterType::E(6),
        "E7" => CoxeterType::E(7),
        "E8" => CoxeterType::E(8),
        "F4" => CoxeterType::F4,
        "H3" => CoxeterType::H(3),
        "H4" => CoxeterType::H(4),
        _ if tok.starts_with("I2(") && tok.ends_with(')') => {
            let m: u32 = tok[3..tok.len() - 1].parse().map_err(|_| bad())?;
            if m < 3 {
                return Err(CoxeterError::UnsupportedType(format!("{tok} (write A1xA1 instead)")));
            }
            if m > limits.max_dihedral {
                return Err(CoxeterError::RankOutOfRange(m as usize));
            }
            CoxeterType::I2(m)
        }
        _ => {
            let (head, rest) = tok.split_at(1.min(tok.len()));
            if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let n: usize = rest.parse().map_err(|_| bad())?;
            if n > limits.max_rank {
                return Err(CoxeterError::RankOutOfRange(n));
            }
            match (head, n) {
                ("A", n) if n >= 1 => CoxeterType::A(n),
                ("B", n) if n >= 2 => CoxeterType::B(n),
                ("D", n) if n >= 4 => CoxeterType::D(n),
                ("A" | "B" | "D", _) => return Err(CoxeterError::UnsupportedType(tok.to_string())),
                _ => return Err(bad()),
            }
        }
    };
    Ok(ty)
}

/// Parse `NAME ("x" NAME)*` with `NAME ::= (A|B|D)int | E6|E7|E8|F4|H3|H4 | I2(int)`.
pub fn parse_group_spec_with(text: &str, limits: &ParseLimits) -> Result<CoxeterDiagram, CoxeterError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(CoxeterError::Parse("empty group spec".into()));
    }
    let types = text.split('x').map(|t| parse_name(t.trim(), limits)).collect::<Result<Vec<_>, _>>()?;
    let rank: usize = types.iter().map(CoxeterType::rank).sum();
    if rank > limits.max_rank {
        return Err(CoxeterError::RankOutOfRange(rank));
    }
    CoxeterDiagram::from_types(&types)
}

pub fn parse_group_spec(text: &str) -> Result<CoxeterDiagram, CoxeterError> {
    parse_group_spec_with(text, &ParseLimits::default())
}
