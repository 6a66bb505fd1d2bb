//! Modular evaluation of the determinant identity, and an exact symbolic
//! check for very small groups.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{default_primes, det_mod_p, symbolic_det, Factorization, Poly, PrimeField};
use crate::coxeter::EnumeratedGroup;

use super::matrix::eval_matrix_mod_p;
use super::{VarchenkoError, VarchenkoMatrix, WeightAssignment, WeightMode};

/// Default largest order for which determinants are evaluated.
pub const DEFAULT_DET_BUDGET: usize = 1152;
/// Absolute cap, reachable only by raising the budget explicitly.
pub const HARD_DET_CAP: usize = 14_400;
/// Largest order for the cofactor-expansion determinant.
pub const SYMBOLIC_LIMIT: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Pass => "PASS",
            Self::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRecord {
    pub check: String,
    pub group: String,
    pub mode: WeightMode,
    pub prime: u64,
    pub seed: u64,
    pub trial: usize,
    /// `det B` at the sampled point.
    pub lhs: u64,
    /// The factorization at the same point.
    pub rhs: u64,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub records: Vec<VerifyRecord>,
    pub passed: usize,
    pub total: usize,
    pub verdict: Verdict,
}

impl VerifyReport {
    pub fn from_records(records: Vec<VerifyRecord>) -> Self {
        let passed = records.iter().filter(|r| r.verdict == Verdict::Pass).count();
        let total = records.len();
        let verdict = if passed == total { Verdict::Pass } else { Verdict::Fail };
        Self { records, passed, total, verdict }
    }

    pub fn is_pass(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub trials: usize,
    pub primes: Vec<u64>,
    pub seed: u64,
    pub budget: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { trials: 5, primes: default_primes(3), seed: 0, budget: DEFAULT_DET_BUDGET }
    }
}

/// Compare `det B` with the factorization at random points of `F_p^k`.
///
/// Points are drawn from one ChaCha stream seeded with `opts.seed`, prime by
/// prime and trial by trial, each coordinate uniform in `1..p`.
pub fn verify_mod_p(
    g: &EnumeratedGroup,
    w: &WeightAssignment,
    factorization: &Factorization,
    opts: &VerifyOptions,
) -> Result<VerifyReport, VarchenkoError> {
    let cap = opts.budget.min(HARD_DET_CAP);
    if g.order() > cap {
        return Err(VarchenkoError::MatrixTooLarge { order: g.order(), cap });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut jobs = Vec::with_capacity(opts.primes.len() * opts.trials);
    for &p in &opts.primes {
        let field = PrimeField::new(p);
        for trial in 0..opts.trials {
            let point: Vec<u64> = (0..w.var_count()).map(|_| rng.random_range(1..p)).collect();
            jobs.push((field, trial, point));
        }
    }
    let group = g.diagram().label();
    let records = jobs
        .into_par_iter()
        .map(|(field, trial, point)| {
            let lhs = det_mod_p(&field, eval_matrix_mod_p(g, w, &field, &point));
            let rhs = factorization.eval_mod_p(&field, &|v| point.get(v as usize).copied())?;
            Ok(VerifyRecord {
                check: "det".into(),
                group: group.clone(),
                mode: w.mode,
                prime: field.modulus(),
                seed: opts.seed,
                trial,
                lhs,
                rhs,
                verdict: if lhs == rhs { Verdict::Pass } else { Verdict::Fail },
            })
        })
        .collect::<Result<Vec<_>, VarchenkoError>>()?;
    Ok(VerifyReport::from_records(records))
}

/// Result of the exact comparison for a tiny group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicAnchor {
    pub determinant: Poly,
    pub expanded: Poly,
    /// Factors of the closed form, each divided out of the determinant in turn.
    pub trial_division: bool,
}

impl SymbolicAnchor {
    pub fn holds(&self) -> bool {
        self.determinant == self.expanded && self.trial_division
    }
}

/// Cofactor-expansion determinant of the full matrix, compared literally with
/// the expanded closed form.
pub fn symbolic_anchor(
    g: &EnumeratedGroup,
    w: &WeightAssignment,
    factorization: &Factorization,
) -> Result<SymbolicAnchor, VarchenkoError> {
    if g.order() > SYMBOLIC_LIMIT {
        return Err(VarchenkoError::SymbolicTooLarge { order: g.order(), limit: SYMBOLIC_LIMIT });
    }
    let m = VarchenkoMatrix::build(g, w)?;
    let determinant = symbolic_det(&m.to_polys());
    let expanded = Poly::from_factorization(factorization);
    let mut rest = determinant.clone();
    let mut trial_division = true;
    for f in &factorization.factors {
        let base = Poly::one().sub(&Poly::monomial(f.monomial.pow(2)));
        for _ in 0..f.exponent {
            match rest.div_exact(&base) {
                Some(q) => rest = q,
                None => trial_division = false,
            }
        }
    }
    trial_division &= rest == Poly::one();
    Ok(SymbolicAnchor { determinant, expanded, trial_division })
}
