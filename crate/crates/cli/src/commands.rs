use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;
use varchenko_core::algebra::{default_primes, Factorization, VarId};
use varchenko_core::arrangement::Arrangement;
use varchenko_core::coxeter::{
    build_group, build_group_with, parse_group_spec, BuildOptions, CoxeterDiagram, CoxeterError, CoxeterType,
    EnumeratedGroup,
};
use varchenko_core::tables::{
    choices_exhaustive, full_support_computed, full_support_published, multiplicities_computed, multiplicities_published, ClassRow, PublishedRow,
    FullSupportRow, UNVERIFIED,
};
use varchenko_core::varchenko::{
    b_hyperplane_dictionary, closed_form, duchamp_formula_a, embed_reflections, type_b_formula,
    reducible_product, type_a_pair_dictionary, verify_mod_p, zagier_formula, Verdict, VarchenkoError, VerifyOptions,
    VarchenkoMatrix, WeightAssignment, DEFAULT_DET_BUDGET, HARD_DET_CAP,
};

use crate::args::{Assign, Command, Common, Format};
use crate::report::*;

/// Largest order dumped by `matrix` without `--unsafe-large`.
pub const MATRIX_DUMP_CAP: usize = 200;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Limit(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Failed(_) => 1,
            Self::Input(_) => 2,
            Self::Limit(_) => 3,
        }
    }
}

impl From<CoxeterError> for CliError {
    fn from(e: CoxeterError) -> Self {
        match e {
            CoxeterError::OrderLimitExceeded { .. } => Self::Limit(e.to_string()),
            CoxeterError::GeneratorNotInJ(..) => Self::Failed(e.to_string()),
            _ => Self::Input(e.to_string()),
        }
    }
}

impl From<VarchenkoError> for CliError {
    fn from(e: VarchenkoError) -> Self {
        match e {
            VarchenkoError::Coxeter(c) => c.into(),
            VarchenkoError::MatrixTooLarge { .. } | VarchenkoError::SymbolicTooLarge { .. } => {
                Self::Limit(e.to_string())
            }
            VarchenkoError::ExplicitWeights { .. } | VarchenkoError::UnassignedReflection(_) => {
                Self::Input(e.to_string())
            }
            _ => Self::Failed(e.to_string()),
        }
    }
}

/// What a command prints to stdout, and whether it succeeded.
pub struct Output {
    pub text: String,
    pub ok: bool,
}

pub fn run(command: &Command) -> Result<Output, CliError> {
    let c = command.common();
    let diagram = parse_group_spec(&c.group)?;
    if let Command::Tables(_) = command {
        if let Some(out) = unverified_tables(c, &diagram)? {
            return Ok(out);
        }
    }
    let g = build_group_with(&diagram, &BuildOptions { order_limit: c.limit, ..BuildOptions::default() })?;
    let w = weights(c, &g)?;
    match command {
        Command::Det(_) => det(c, &g, &w),
        Command::Matrix(_) => matrix(c, &g, &w),
        Command::Tables(_) => tables(c, &g),
        Command::Verify(_) => verify(c, &g, &w),
        Command::Multiplicity(_) => multiplicity(c, &g),
    }
}

fn weights(c: &Common, g: &EnumeratedGroup) -> Result<WeightAssignment, CliError> {
    match &c.assign {
        Assign::Mode(m) => Ok(WeightAssignment::new(g, *m)?),
        Assign::Explicit(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
            Ok(WeightAssignment::parse_explicit(g, &text)?)
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn group_label(g: &EnumeratedGroup) -> String {
    g.diagram().label()
}

fn det(c: &Common, g: &EnumeratedGroup, w: &WeightAssignment) -> Result<Output, CliError> {
    let cf = closed_form(g, w, c.floor_ambient)?;
    let text = match c.format {
        Format::Text => format!("{}\n", cf.factorization.render(&|v| w.name(v))),
        Format::Json => json(&DetJson {
            group: group_label(g),
            weight_mode: w.mode.to_string(),
            variables: variables(w),
            factors: cf
                .edges
                .iter()
                .map(|e| FactorJson {
                    monomial: monomial_map(&e.monomial, w),
                    multiplicity: e.multiplicity,
                    edge: EdgeJson { class: e.class_label.clone(), size: e.size, coset: e.coset },
                })
                .collect(),
        }),
    };
    Ok(Output { text, ok: true })
}

fn word(g: &EnumeratedGroup, x: u32) -> String {
    let w = g.reduced_word(x);
    if w.is_empty() {
        return "e".into();
    }
    w.iter().map(|s| format!("s{}", s + 1)).collect()
}

fn matrix(c: &Common, g: &EnumeratedGroup, w: &WeightAssignment) -> Result<Output, CliError> {
    if g.order() > MATRIX_DUMP_CAP && !c.unsafe_large {
        return Err(CliError::Limit(format!(
            "group of order {} exceeds the dump cap {MATRIX_DUMP_CAP}; pass --unsafe-large to dump anyway",
            g.order()
        )));
    }
    let m = VarchenkoMatrix::build(g, w)?;
    let rows: Vec<String> = g.elements().map(|x| word(g, x)).collect();
    let entries: Vec<Vec<String>> =
        g.elements().map(|x| m.row(x).iter().map(|e| e.render(&|v| w.name(v))).collect()).collect();
    let text = match c.format {
        Format::Json => json(&MatrixJson {
            group: group_label(g),
            weight_mode: w.mode.to_string(),
            variables: variables(w),
            rows,
            entries,
        }),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "\t{}", rows.join("\t"));
            for (r, row) in rows.iter().zip(&entries) {
                let _ = writeln!(s, "{r}\t{}", row.join("\t"));
            }
            s
        }
    };
    Ok(Output { text, ok: true })
}

fn multiplicity_json(r: &ClassRow) -> MultiplicityJson {
    MultiplicityJson {
        class: r.label.clone(),
        j: r.j.to_string(),
        edges: r.edges,
        t_j: r.formula.t_j as usize + 1,
        s_j: format!("s{}", r.formula.s_j + 1),
        ingredients: r.formula.ingredients.as_array().into(),
        choices: r.choice_tuples().into_iter().map(Into::into).collect(),
        l_formula: r.formula.l,
        l_oracle: r.oracle,
        matches: r.oracle_matches().unwrap_or(true) && r.formula.choice_independent(),
    }
}

fn multiplicity(c: &Common, g: &EnumeratedGroup) -> Result<Output, CliError> {
    let a = Arrangement::new(g);
    let rows = multiplicities_computed(g, &a, c.floor_ambient, true)?;
    let classes: Vec<MultiplicityJson> = rows.iter().map(multiplicity_json).collect();
    let ok = classes.iter().all(|r| r.matches);
    let text = match c.format {
        Format::Json => json(&MultiplicityReportJson {
            group: group_label(g),
            floor_ambient: c.floor_ambient.to_string(),
            classes,
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
        }),
        Format::Text => {
            let mut s = format!("{} (floor ambient {})\n", group_label(g), c.floor_ambient);
            let _ = writeln!(s, "{:<8} {:<16} {:>6}  {:<30} {:>8} {:>8}  match", "class", "J", "edges", "|⌊t⌉|·|[J]|·|X(S,J)|·|X(J,s)|", "formula", "oracle");
            for r in &classes {
                let choices: Vec<String> =
                    r.choices.iter().map(|i| format!("{}·{}·{}·{}", i.floor, i.class_size, i.x_sj, i.x_js)).collect();
                let _ = writeln!(
                    s,
                    "{:<8} {:<16} {:>6}  {:<30} {:>8} {:>8}  {}",
                    r.class,
                    r.j,
                    r.edges,
                    choices.join(" | "),
                    r.l_formula,
                    r.l_oracle.map_or("-".into(), |l| l.to_string()),
                    if r.matches { "yes" } else { "NO" }
                );
            }
            let _ = writeln!(s, "verdict: {}", if ok { "PASS" } else { "FAIL" });
            s
        }
    };
    Ok(Output { text, ok })
}

fn full_support_json(r: &FullSupportRow) -> FullSupportJson {
    FullSupportJson { reflections: r.reflections, classes: r.classes, full_support: r.full_support.clone() }
}

fn published_json(p: &PublishedRow) -> PublishedJson {
    PublishedJson {
        class: p.class.clone(),
        alternatives: p.alternatives.iter().map(|&a| a.into()).collect(),
        l: p.product(),
        status: if p.verified { "compared".into() } else { UNVERIFIED.into() },
    }
}

fn fmt_tuples(v: &[IngredientsJson]) -> String {
    v.iter().map(|i| format!("{}·{}·{}·{}", i.floor, i.class_size, i.x_sj, i.x_js)).collect::<Vec<_>>().join(" | ")
}

fn flag(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "yes",
        Some(false) => "NO",
        None => "-",
    }
}

fn render_tables(t: &TablesJson) -> String {
    let mut s = format!("{}\n", t.group);
    let fs = |r: &FullSupportJson| r.full_support.iter().map(u64::to_string).collect::<Vec<_>>().join(" | ");
    match (&t.full_support_computed, &t.full_support_published) {
        (Some(c), Some(p)) => {
            let _ = writeln!(
                s,
                "full support reflections: {} (published {}), reflections {} in {} classes",
                fs(c),
                fs(p),
                c.reflections,
                c.classes
            );
        }
        (Some(c), None) => {
            let _ = writeln!(s, "full support reflections: {}, reflections {} in {} classes", fs(c), c.reflections, c.classes);
        }
        (None, Some(p)) => {
            let _ = writeln!(s, "full support reflections: {} ({UNVERIFIED})", fs(p));
        }
        (None, None) => {}
    }
    let _ = writeln!(
        s,
        "{:<8} {:<30} {:>8} {:>8}  {:<30} {:>8}  {:<8} {:<11}",
        "class", "|⌊t⌉|·|[J]|·|X(S,J)|·|X(J,s)|", "formula", "oracle", "published", "pub. l", "l match", "ingredients"
    );
    for r in &t.multiplicities {
        let (class, computed, lf, lo) = match &r.computed {
            Some(m) => (
                m.class.clone(),
                fmt_tuples(&m.choices),
                m.l_formula.to_string(),
                m.l_oracle.map_or("-".into(), |l| l.to_string()),
            ),
            None => (r.published.as_ref().map_or(String::new(), |p| p.class.clone()), "-".into(), "-".into(), "-".into()),
        };
        let (published, pl, note) = match &r.published {
            Some(p) if p.status == UNVERIFIED => (fmt_tuples(&p.alternatives), p.l.to_string(), UNVERIFIED),
            Some(p) => (fmt_tuples(&p.alternatives), p.l.to_string(), ""),
            None => ("-".into(), "-".into(), ""),
        };
        let _ = writeln!(
            s,
            "{:<8} {:<30} {:>8} {:>8}  {:<30} {:>8}  {:<8} {:<11} {}",
            class,
            computed,
            lf,
            lo,
            published,
            pl,
            flag(r.published_product_match),
            flag(r.published_ingredients_match),
            note
        );
    }
    s
}

fn unverified_tables(c: &Common, d: &CoxeterDiagram) -> Result<Option<Output>, CliError> {
    let t = match d.components() {
        [(t @ CoxeterType::E(7 | 8), _)] if d.known_order() > c.limit as u128 => *t,
        _ => return Ok(None),
    };
    eprintln!("{t} has order {}; printing stored values ({UNVERIFIED})", d.known_order());
    let report = TablesJson {
        group: t.to_string(),
        full_support_computed: None,
        full_support_published: Some(full_support_json(&full_support_published(t))),
        multiplicities: multiplicities_published(t)
            .iter()
            .map(|p| MultiplicityRowJson {
                computed: None,
                published: Some(published_json(p)),
                published_product_match: None,
                published_ingredients_match: None,
            })
            .collect(),
    };
    let text = match c.format {
        Format::Json => json(&report),
        Format::Text => render_tables(&report),
    };
    Ok(Some(Output { text, ok: true }))
}

fn tables(c: &Common, g: &EnumeratedGroup) -> Result<Output, CliError> {
    let a = Arrangement::new(g);
    let rows = multiplicities_computed(g, &a, c.floor_ambient, true)?;
    let t = g.diagram().is_irreducible().then(|| g.diagram().components()[0].0);
    let mut multiplicities: Vec<MultiplicityRowJson> = rows
        .iter()
        .map(|r| MultiplicityRowJson {
            computed: Some(multiplicity_json(r)),
            published: r.published.as_ref().map(published_json),
            published_product_match: r.product_matches(),
            published_ingredients_match: r.ingredients_match(choices_exhaustive(g, r)),
        })
        .collect();
    if let Some(t) = t {
        for p in multiplicities_published(t) {
            if !rows.iter().any(|r| r.label == p.class) {
                multiplicities.push(MultiplicityRowJson {
                    computed: None,
                    published: Some(published_json(&p)),
                    published_product_match: None,
                    published_ingredients_match: None,
                });
            }
        }
    }
    let ok = multiplicities.iter().filter_map(|r| r.computed.as_ref()).all(|m| m.matches);
    let report = TablesJson {
        group: group_label(g),
        full_support_computed: Some(full_support_json(&full_support_computed(g))),
        full_support_published: t.map(|t| full_support_json(&full_support_published(t))),
        multiplicities,
    };
    let text = match c.format {
        Format::Json => json(&report),
        Format::Text => render_tables(&report),
    };
    Ok(Output { text, ok })
}

fn verdict(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

fn per_hyperplane(g: &EnumeratedGroup) -> Result<Factorization, CliError> {
    let w = WeightAssignment::per_hyperplane(g);
    Ok(closed_form(g, &w, Default::default())?.factorization)
}

/// Formula identities that apply to the group, each compared formally.
fn concordance(g: &EnumeratedGroup) -> Result<Vec<ConcordanceJson>, CliError> {
    let group = group_label(g);
    let mut out = Vec::new();
    let mut push = |check: &str, ok: bool| out.push(ConcordanceJson { check: check.into(), group: group.clone(), verdict: verdict(ok) });
    match g.diagram().components() {
        [(CoxeterType::A(r), _)] if *r < 12 => {
            let n = r + 1;
            let q = closed_form(g, &WeightAssignment::single_q(g), Default::default())?.factorization;
            push("zagier", q == zagier_formula(n)?);
            let dict = type_a_pair_dictionary(g)?;
            let by_pair: HashMap<(usize, usize), VarId> =
                dict.iter().enumerate().map(|(t, &p)| (p, t as VarId)).collect();
            push("duchamp", per_hyperplane(g)? == duchamp_formula_a(n, &|i, j| by_pair[&(i, j)])?);
        }
        [(CoxeterType::B(n), _)] if *n <= 12 => {
            let dict = b_hyperplane_dictionary(g)?;
            let by_h: HashMap<_, VarId> = dict.iter().enumerate().map(|(t, &h)| (h, t as VarId)).collect();
            push("type_b", per_hyperplane(g)? == type_b_formula(*n, &|h| by_h[&h])?);
        }
        components if components.len() > 1 => {
            let mut acc = Factorization::new();
            let mut acc_order = 1u64;
            for (t, idx) in components {
                let part = build_group(&parse_group_spec(&t.to_string())?)?;
                let embed = embed_reflections(&part, g, idx[0]);
                let f = per_hyperplane(&part)?.substitute(|v| embed[v as usize] as VarId);
                acc = reducible_product(&acc, part.order() as u64, &f, acc_order)?;
                acc_order *= part.order() as u64;
            }
            push("reducible_product", acc == per_hyperplane(g)?);
        }
        _ => {}
    }
    Ok(out)
}

fn verify(c: &Common, g: &EnumeratedGroup, w: &WeightAssignment) -> Result<Output, CliError> {
    let budget = if c.unsafe_large {
        if g.order() > DEFAULT_DET_BUDGET {
            eprintln!("warning: evaluating {}x{} determinants; this may take a long time", g.order(), g.order());
        }
        HARD_DET_CAP
    } else {
        DEFAULT_DET_BUDGET
    };
    let primes = default_primes(c.primes);
    let opts = VerifyOptions { trials: c.trials, primes: primes.clone(), seed: c.seed, budget };
    let cf = closed_form(g, w, c.floor_ambient)?;
    let report = verify_mod_p(g, w, &cf.factorization, &opts)?;
    let conc = concordance(g)?;
    let ok = report.is_pass() && conc.iter().all(|x| x.verdict == Verdict::Pass);
    let out = VerifyJson {
        group: group_label(g),
        weight_mode: w.mode.to_string(),
        seed: c.seed,
        primes,
        trials: c.trials,
        passed: report.passed,
        total: report.total,
        records: report.records,
        concordance: conc,
        verdict: verdict(ok),
    };
    let text = match c.format {
        Format::Json => json(&out),
        Format::Text => {
            let mut s = format!("{} ({}), seed {}\n", out.group, out.weight_mode, out.seed);
            let _ = writeln!(s, "det identity: {}/{} point-prime pairs agree", out.passed, out.total);
            for r in out.records.iter().filter(|r| r.verdict == Verdict::Fail) {
                let _ = writeln!(s, "  FAIL p={} trial={} det={} closed form={}", r.prime, r.trial, r.lhs, r.rhs);
            }
            for x in &out.concordance {
                let _ = writeln!(s, "{}: {}", x.check, x.verdict);
            }
            let _ = writeln!(s, "verdict: {}", out.verdict);
            s
        }
    };
    Ok(Output { text, ok })
}
