//! Conjugacy of reflections, supports, and palindromic reduced words.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{ElemId, EnumeratedGroup, GenSet, ReflId};

/// Group in which conjugacy is taken when forming `⌊t⌉`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FloorAmbient {
    /// Conjugacy inside `W_J` with `J = J(t)`.
    #[default]
    WJ,
    /// Conjugacy inside the whole group.
    W,
}

impl FromStr for FloorAmbient {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "WJ" | "wj" => Ok(Self::WJ),
            "W" | "w" => Ok(Self::W),
            other => Err(format!("unknown ambient {other:?}, expected WJ or W")),
        }
    }
}

impl fmt::Display for FloorAmbient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::WJ => "WJ",
            Self::W => "W",
        })
    }
}

fn orbit(g: &EnumeratedGroup, t: ReflId, gens: GenSet) -> Vec<ReflId> {
    let mut seen = vec![false; g.reflection_count()];
    seen[t as usize] = true;
    let mut out = vec![t];
    let mut i = 0;
    while i < out.len() {
        let u = out[i];
        for s in gens.iter() {
            let v = g.refl_conj(u, s);
            if !seen[v as usize] {
                seen[v as usize] = true;
                out.push(v);
            }
        }
        i += 1;
    }
    out.sort_unstable();
    out
}

/// Orbits of `T` under conjugation, each sorted, ordered by smallest member.
pub fn reflection_conjugacy_classes(g: &EnumeratedGroup) -> Vec<Vec<ReflId>> {
    let all = GenSet::full(g.rank());
    let mut done = vec![false; g.reflection_count()];
    let mut classes = Vec::new();
    for t in 0..g.reflection_count() as ReflId {
        if done[t as usize] {
            continue;
        }
        let o = orbit(g, t, all);
        for &u in &o {
            done[u as usize] = true;
        }
        classes.push(o);
    }
    classes
}

/// Class index of every reflection, following [`reflection_conjugacy_classes`].
pub fn reflection_class_ids(g: &EnumeratedGroup) -> Vec<usize> {
    let mut ids = vec![0; g.reflection_count()];
    for (c, class) in reflection_conjugacy_classes(g).iter().enumerate() {
        for &t in class {
            ids[t as usize] = c;
        }
    }
    ids
}

pub fn reflections_with_support(g: &EnumeratedGroup, j: GenSet) -> Vec<ReflId> {
    (0..g.reflection_count() as ReflId).filter(|&t| g.refl_support(t) == j).collect()
}

/// `{ t in T : J(t) = S }`
pub fn full_support_reflections(g: &EnumeratedGroup) -> Vec<ReflId> {
    reflections_with_support(g, GenSet::full(g.rank()))
}

/// `⌊t⌉`: reflections with the support of `t` that are conjugate to `t`
/// in the chosen ambient group.
pub fn floor_class(g: &EnumeratedGroup, t: ReflId, ambient: FloorAmbient) -> Vec<ReflId> {
    let j = g.refl_support(t);
    let gens = match ambient {
        FloorAmbient::WJ => j,
        FloorAmbient::W => GenSet::full(g.rank()),
    };
    orbit(g, t, gens).into_iter().filter(|&u| g.refl_support(u) == j).collect()
}

/// `(s, v)` with `t = v^-1 s v`, `v in W_J(t)` and `l(t) = 2 l(v) + 1`.
pub fn palindromic_decomposition(g: &EnumeratedGroup, t: ReflId) -> (usize, ElemId) {
    let x = g.reflection(t);
    let word = g.reduced_word(x);
    assert_eq!(word.len() % 2, 1, "reflection of even length");
    let k = word.len() / 2;
    let s = word[k];
    let v = g.from_word(&word[k + 1..]);
    if g.conjugate(g.generator(s), v) == x {
        return (s, v);
    }
    let j = g.refl_support(t);
    for v in g.elements().filter(|&v| g.length(v) as usize == k && g.support(v).is_subset(j)) {
        for s in j.iter() {
            if g.conj_refl(v, s as ReflId) == t {
                return (s, v);
            }
        }
    }
    panic!("reflection {t} has no palindromic decomposition");
}
