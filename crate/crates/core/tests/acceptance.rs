//! Acceptance run: one PASS/FAIL line per criterion, with detail lines for
//! anything that disagrees. Exits non-zero when a criterion fails.

use std::collections::{HashMap, HashSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use varchenko_core::algebra::{Factorization, Monomial, VarId};
use varchenko_core::arrangement::{
    decompose_l, l_set, minimal_edge_through_chamber_face, multiplicity_formula_for, multiplicity_oracle, Arrangement,
};
use varchenko_core::coxeter::parabolic::normalizer_brute_force;
use varchenko_core::coxeter::{build_group, parse_group_spec, ElemId, EnumeratedGroup, FloorAmbient, ReflId};
use varchenko_core::tables::{choices_exhaustive, full_support_computed, full_support_published, multiplicities_computed};
use varchenko_core::varchenko::{
    b_hyperplane_dictionary, closed_form_factorization, duchamp_formula_a, embed_reflections, type_b_formula,
    reducible_product, symbolic_anchor, type_a_pair_dictionary, verify_mod_p, zagier_formula, VerifyOptions,
    WeightAssignment,
};

fn group(spec: &str) -> EnumeratedGroup {
    build_group(&parse_group_spec(spec).unwrap()).unwrap()
}

struct Outcome {
    pass: bool,
    summary: String,
    details: Vec<String>,
}

impl Outcome {
    fn new(pass: bool, summary: impl Into<String>, details: Vec<String>) -> Self {
        Self { pass, summary: summary.into(), details }
    }
}

fn dihedral(range: std::ops::RangeInclusive<u32>) -> impl Iterator<Item = String> {
    range.map(|m| format!("I2({m})"))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut specs: Vec<String> = (1..=6).map(|n| format!("A{n}")).collect();
    specs.extend((2..=6).map(|n| format!("B{n}")));
    specs.extend((4..=6).map(|n| format!("D{n}")));
    specs.extend(["E6", "F4", "H3", "H4"].map(String::from));
    specs.extend(dihedral(3..=12));
    let mut details = Vec::new();
    for spec in &specs {
        let g = group(spec);
        let computed = full_support_computed(&g);
        let published = full_support_published(g.diagram().components()[0].0);
        if !computed.agrees_with(&published) {
            details.push(format!("{spec}: computed {:?}, published {:?}", computed.full_support, published.full_support));
        }
    }
    let elapsed = start.elapsed();
    let in_time = elapsed < Duration::from_secs(60);
    if !in_time {
        details.push(format!("runtime {elapsed:.1?} exceeds 60 s"));
    }
    Outcome::new(
        details.is_empty(),
        format!("full support reflection counts, {} groups, {elapsed:.1?}", specs.len()),
        details,
    )
}

fn criterion_2() -> Outcome {
    let mut specs: Vec<String> = (2..=5).map(|n| format!("A{n}")).collect();
    specs.extend((2..=4).map(|n| format!("B{n}")));
    specs.extend(["D4", "F4", "H3", "H4"].map(String::from));
    specs.extend(dihedral(3..=8));
    let (mut rows, mut product_bad, mut ingredient_bad, mut caveats) = (0, 0, 0, 0);
    let mut details = Vec::new();
    for spec in &specs {
        let g = group(spec);
        let a = Arrangement::new(&g);
        for r in multiplicities_computed(&g, &a, FloorAmbient::WJ, g.order() <= 1152).unwrap() {
            rows += 1;
            let Some(p) = &r.published else {
                details.push(format!("{spec} {}: no published row", r.label));
                product_bad += 1;
                continue;
            };
            let seen = r.choice_tuples();
            let fmt = |v: &[[u64; 4]]| v.iter().map(|a| format!("{a:?}")).collect::<Vec<_>>().join(" | ");
            if r.oracle_matches() == Some(false) {
                details.push(format!("{spec} {}: formula {} but oracle {:?}", r.label, r.formula.l, r.oracle));
            }
            if r.product_matches() != Some(true) {
                product_bad += 1;
                details.push(format!(
                    "{spec} {}: l = {} (oracle {:?}), published {} from {}",
                    r.label,
                    r.formula.l,
                    r.oracle,
                    p.product(),
                    fmt(&p.alternatives)
                ));
            }
            match r.ingredients_match(choices_exhaustive(&g, &r)) {
                Some(true) => {}
                Some(false) => {
                    ingredient_bad += 1;
                    details.push(format!(
                        "{spec} {}: ingredients {} vs published {}",
                        r.label,
                        fmt(&seen),
                        fmt(&p.alternatives)
                    ));
                }
                None => {
                    caveats += 1;
                    details.push(format!(
                        "{spec} {}: product only (attribution open), ingredients {} vs published {}",
                        r.label,
                        fmt(&seen),
                        fmt(&p.alternatives)
                    ));
                }
            }
        }
    }
    for spec in ["B3", "F4"] {
        let g = group(spec);
        let a = Arrangement::new(&g);
        let wj = multiplicities_computed(&g, &a, FloorAmbient::WJ, false).unwrap();
        let w = multiplicities_computed(&g, &a, FloorAmbient::W, false).unwrap();
        let same = wj.iter().zip(&w).all(|(x, y)| x.choice_tuples() == y.choice_tuples());
        details.push(format!("{spec}: ambient WJ and W give {} ingredients", if same { "identical" } else { "different" }));
    }
    Outcome::new(
        product_bad == 0 && ingredient_bad == 0,
        format!(
            "published multiplicity rows: {rows} classes, {product_bad} product mismatches, {ingredient_bad} ingredient mismatches, {caveats} product-only"
        ),
        details,
    )
}

const SMALL_GROUPS: &[&str] = &[
    "A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "D4", "F4", "H3", "I2(5)", "I2(6)", "I2(7)", "I2(8)", "I2(9)",
    "I2(10)", "I2(11)", "I2(12)", "A1xA1", "A2xA1", "A1xA1xA1", "A3xA1", "B3xA1", "A2xA2", "H3xA1", "B2xA2",
];

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut details = Vec::new();
    let mut edges = 0;
    for spec in SMALL_GROUPS {
        let g = group(spec);
        let a = Arrangement::new(&g);
        let formulas: Vec<u64> = a
            .classes()
            .iter()
            .map(|c| multiplicity_formula_for(&g, &c.parabolic, FloorAmbient::WJ).unwrap().l)
            .collect();
        for c in 0..a.classes().len() {
            for &i in &a.classes()[c].edges {
                edges += 1;
                let e = &a.edges()[i];
                match multiplicity_oracle(&g, e) {
                    Ok(l) if l == formulas[c] => {}
                    other => details.push(format!("{spec} edge {:?}: formula {} oracle {other:?}", e.reflections, formulas[c])),
                }
            }
        }
    }
    let mut classes = 0;
    for spec in ["H4", "E6", "A5", "D5", "B5"] {
        let g = group(spec);
        let a = Arrangement::new(&g);
        for c in a.classes() {
            classes += 1;
            let f = multiplicity_formula_for(&g, &c.parabolic, FloorAmbient::WJ).unwrap();
            match multiplicity_oracle(&g, a.base_edge(c)) {
                Ok(l) if l == f.l => {}
                other => details.push(format!("{spec} class {}: formula {} oracle {other:?}", c.j, f.l)),
            }
        }
    }
    Outcome::new(
        details.is_empty(),
        format!(
            "multiplicity formula equals chamber count on {edges} edges of {} groups and {classes} classes of H4, E6, A5, D5, B5, {:.1?}",
            SMALL_GROUPS.len(),
            start.elapsed()
        ),
        details,
    )
}

fn criterion_4() -> Outcome {
    let mut specs: Vec<String> = ["A2", "A3", "A4", "B2", "B3", "D4", "B4", "H3"].map(String::from).to_vec();
    specs.extend(dihedral(3..=8));
    specs.extend(["A1xA1", "A2xA1", "F4"].map(String::from));
    let opts = VerifyOptions { trials: 5, seed: 0, ..VerifyOptions::default() };
    let mut details = Vec::new();
    let mut times = Vec::new();
    for spec in &specs {
        let start = Instant::now();
        let g = group(spec);
        let w = WeightAssignment::per_hyperplane(&g);
        let f = closed_form_factorization(&g, &w).unwrap();
        let r = verify_mod_p(&g, &w, &f, &opts).unwrap();
        if r.passed != 15 || r.total != 15 {
            details.push(format!("{spec}: {}/{} points agree", r.passed, r.total));
            for rec in r.records.iter().filter(|x| x.lhs != x.rhs) {
                details.push(format!("  p={} trial={} det={} closed form={}", rec.prime, rec.trial, rec.lhs, rec.rhs));
            }
        }
        times.push(format!("{spec} {:.1?}", start.elapsed()));
    }
    let f4 = times.last().cloned().unwrap_or_default();
    Outcome::new(
        details.is_empty(),
        format!("matrix determinant equals the closed form at 15/15 points on {} groups ({f4})", specs.len()),
        details,
    )
}

fn criterion_5() -> Outcome {
    let mut details = Vec::new();
    let mut checks = 0;
    for n in 2..=5 {
        checks += 2;
        let g = group(&format!("A{}", n - 1));
        let q = closed_form_factorization(&g, &WeightAssignment::single_q(&g)).unwrap();
        if q != zagier_formula(n).unwrap() {
            details.push(format!("Zagier n={n} differs"));
        }
        let dict = type_a_pair_dictionary(&g).unwrap();
        let by_pair: HashMap<(usize, usize), VarId> = dict.iter().enumerate().map(|(t, &p)| (p, t as VarId)).collect();
        let d = duchamp_formula_a(n, &|i, j| by_pair[&(i, j)]).unwrap();
        if closed_form_factorization(&g, &WeightAssignment::per_hyperplane(&g)).unwrap() != d {
            details.push(format!("Duchamp n={n} differs"));
        }
    }
    for n in 1..=4 {
        checks += 1;
        let g = group(&if n == 1 { "A1".to_string() } else { format!("B{n}") });
        let dict = b_hyperplane_dictionary(&g).unwrap();
        let by_h: HashMap<_, VarId> = dict.iter().enumerate().map(|(t, &h)| (h, t as VarId)).collect();
        let r = type_b_formula(n, &|h| by_h[&h]).unwrap();
        if closed_form_factorization(&g, &WeightAssignment::per_hyperplane(&g)).unwrap() != r {
            details.push(format!("B_n formula n={n} differs"));
        }
    }
    for (left, right, spec) in [("A2", "A1", "A2xA1"), ("A1", "A1", "A1xA1"), ("B2", "A2", "B2xA2")] {
        checks += 1;
        let (g1, g2, g) = (group(left), group(right), group(spec));
        let e1 = embed_reflections(&g1, &g, 0);
        let e2 = embed_reflections(&g2, &g, g1.rank());
        let f1 = closed_form_factorization(&g1, &WeightAssignment::per_hyperplane(&g1)).unwrap();
        let f2 = closed_form_factorization(&g2, &WeightAssignment::per_hyperplane(&g2)).unwrap();
        let p = reducible_product(
            &f1.substitute(|v| e1[v as usize] as VarId),
            g2.order() as u64,
            &f2.substitute(|v| e2[v as usize] as VarId),
            g1.order() as u64,
        )
        .unwrap();
        if p != closed_form_factorization(&g, &WeightAssignment::per_hyperplane(&g)).unwrap() {
            details.push(format!("product rule {spec} differs"));
        }
    }
    Outcome::new(details.is_empty(), format!("formal concordance, {checks} factorization identities"), details)
}

fn criterion_6() -> Outcome {
    let mut details = Vec::new();
    for spec in ["A1", "A1xA1", "I2(3)"] {
        let g = group(spec);
        let w = WeightAssignment::per_hyperplane(&g);
        let f = closed_form_factorization(&g, &w).unwrap();
        let a = symbolic_anchor(&g, &w, &f).unwrap();
        if !a.holds() {
            details.push(format!("{spec}: symbolic determinant differs from the expanded closed form"));
        }
    }
    Outcome::new(details.is_empty(), "cofactor determinant equals expanded closed form for A1, A1xA1, I2(3)", details)
}

fn criterion_7() -> Outcome {
    let mut details = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for spec in ["A3", "B3", "D4", "H3", "F4", "I2(6)", "A2xA1"] {
        let g = group(spec);
        for x in g.elements() {
            if g.inversion_set(x).count_ones(..) != g.length(x) as usize {
                details.push(format!("{spec}: |N(w)| != l(w) at {x}"));
                break;
            }
        }
        let a = Arrangement::new(&g);
        for j in g.diagram().irreducible_subsets().into_iter().chain([varchenko_core::coxeter::GenSet::empty()]) {
            let p = varchenko_core::coxeter::ParabolicData::new(&g, j);
            let products: HashSet<ElemId> =
                p.w_j.iter().flat_map(|&u| p.x_j.iter().map(move |&x| (u, x))).map(|(u, x)| g.mul(u, x)).collect();
            if products.len() != g.order() || p.w_j.len() * p.x_j.len() != g.order() {
                details.push(format!("{spec}: W = W_J X_J fails for J = {j}"));
            }
            if j.is_empty() {
                continue;
            }
            let normalizer = normalizer_brute_force(&g, j);
            if normalizer.len() != p.w_j.len() * p.x_sj.len() || p.normalizer_order != normalizer.len() {
                details.push(format!("{spec}: N(W_J) != W_J X(S,J) for J = {j}"));
            }
        }
        for c in a.classes() {
            let base = a.base_edge(c);
            for &t in &base.reflections {
                if g.refl_support(t) != c.j {
                    continue;
                }
                let d = decompose_l(&g, &c.parabolic, t).unwrap();
                if d.elements != l_set(&g, base, t).unwrap() {
                    details.push(format!("{spec}: decomposition differs from L(E, t) for J = {}", c.j));
                }
            }
            if let Err(e) = multiplicity_oracle(&g, base) {
                details.push(format!("{spec}: {e}"));
            }
        }
        for x in g.elements() {
            for t in 0..g.reflection_count() as ReflId {
                if a.find(&minimal_edge_through_chamber_face(&g, x, t).reflections).is_none() {
                    details.push(format!("{spec}: chamber {x} face on reflection {t} spans an irrelevant edge"));
                }
            }
        }
    }
    for _ in 0..200 {
        let f = Factorization::from_pairs((0..rng.random_range(0..8)).map(|_| {
            let m = Monomial::from_pairs((0..rng.random_range(1..4)).map(|_| (rng.random_range(0..4), rng.random_range(1..3))));
            (m, rng.random_range(0..4))
        }));
        let n = f.normalize();
        if n.normalize() != n || !n.is_normalized() {
            details.push("normalization is not idempotent".into());
            break;
        }
    }
    Outcome::new(
        details.is_empty(),
        "property suites: inversion sets, parabolic and Howlett factorizations, edge decomposition, chamber-face completeness, normalization",
        details,
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("1", criterion_1),
        ("2", criterion_2),
        ("3", criterion_3),
        ("4", criterion_4),
        ("5", criterion_5),
        ("6", criterion_6),
        ("7", criterion_7),
    ];
    let filter: Option<Vec<String>> =
        std::env::var("ACCEPTANCE_ONLY").ok().map(|s| s.split(',').map(|x| x.trim().to_string()).collect());
    let mut failed = 0;
    for (id, run) in criteria {
        if filter.as_ref().is_some_and(|f| !f.iter().any(|x| x == id)) {
            continue;
        }
        let o = run();
        println!("criterion {id}: {} {}", if o.pass { "PASS" } else { "FAIL" }, o.summary);
        for d in &o.details {
            println!("    {d}");
        }
        failed += usize::from(!o.pass);
    }
    println!("acceptance: {failed} criteria failed");
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
