//! Acceptance suite: one PASS/FAIL line per criterion, exact comparisons
//! throughout.

use std::collections::BTreeSet;
use std::process::Command;

use domestic_ar::arcomp::{build_component, heller_tau_violations, seed_component, verify_psi};
use domestic_ar::chartab::{closed_form_table, group_character_table, CharacterTable};
use domestic_ar::dixon::dixon_schneider;
use domestic_ar::fusion::{fusion_for_spec, fusion_from_weights, fusion_isomorphism, verify_fusion};
use domestic_ar::graph::AffineType;
use domestic_ar::groups::{build_group, Family, GroupSchemeSpec};
use domestic_ar::quiver::{check_separation, classify_affine, component_indices, mckay_quiver, separated_quiver};
use domestic_ar::ramify::{euclidean_tube_ranks, riemann_hurwitz_check, tube_rank_report, ActionContext};

const WINDOW: (i64, i64) = (-3, 3);

/// Cyclic and dihedral with n in 1..=6, r in {1, 2}, p in {3, 5, 7}, plus
/// the exceptional families at every admissible p up to 11. Invalid
/// combinations are skipped.
fn sweep() -> Vec<GroupSchemeSpec> {
    let mut out = Vec::new();
    for family in [Family::Cyclic, Family::Dihedral] {
        for n in 1..=6 {
            for r in [1, 2] {
                for p in [3, 5, 7] {
                    if let Ok(spec) = GroupSchemeSpec::new(family, n, p, r) {
                        out.push(spec);
                    }
                }
            }
        }
    }
    for family in [Family::Tetrahedral, Family::Octahedral, Family::Icosahedral] {
        for p in [3, 5, 7, 11] {
            if let Ok(spec) = GroupSchemeSpec::exceptional(family, p) {
                out.push(spec);
            }
        }
    }
    out
}

fn name(spec: &GroupSchemeSpec) -> String {
    format!("{} n={} p={} r={}", spec.family, spec.n, spec.p, spec.r)
}

/// The Euclidean type listed for each family.
fn listed_type(spec: &GroupSchemeSpec) -> AffineType {
    let big_n = spec.n * spec.p.pow(spec.r - 1);
    match spec.family {
        Family::Cyclic => AffineType::a(2 * big_n - 1),
        // D~3 is the 4-cycle A~3
        Family::Dihedral if big_n + 2 == 3 => AffineType::a(3),
        Family::Dihedral => AffineType::d(big_n + 2),
        Family::Tetrahedral => AffineType::e(6),
        Family::Octahedral => AffineType::e(7),
        Family::Icosahedral => AffineType::e(8),
    }
}

/// Exceptional ramification indices listed for each reduced family, with
/// indices equal to 1 dropped.
fn listed_indices(spec: &GroupSchemeSpec) -> Vec<u64> {
    let n = spec.n as u64;
    let mut e = match spec.family {
        Family::Cyclic => vec![n, n],
        Family::Dihedral => vec![2, 2, n],
        Family::Tetrahedral => vec![2, 3, 3],
        Family::Octahedral => vec![2, 3, 4],
        Family::Icosahedral => vec![2, 3, 5],
    };
    e.retain(|&x| x > 1);
    e.sort_unstable();
    e
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Outcome {
    failures: Vec<String>,
    summary: String,
}

fn criterion_1(specs: &[GroupSchemeSpec]) -> Outcome {
    let mut failures = Vec::new();
    for spec in specs {
        let q = mckay_quiver(&fusion_for_spec(spec).unwrap()).unwrap();
        let want = listed_type(spec);
        match classify_affine(&q) {
            Some(t) if t == want => {}
            Some(t) => failures.push(format!("{}: {t}, expected {want}", name(spec))),
            None => failures.push(format!("{}: not Euclidean", name(spec))),
        }
    }
    Outcome {
        failures,
        summary: format!("McKay classification over {} specs", specs.len()),
    }
}

fn same_rows(a: &CharacterTable, b: &CharacterTable) -> bool {
    let rows = |t: &CharacterTable| -> BTreeSet<Vec<String>> {
        t.irreducibles
            .iter()
            .map(|r| r.values.iter().map(|v| v.key()).collect())
            .collect()
    };
    a.len() == b.len() && rows(a) == rows(b)
}

fn criterion_2(specs: &[GroupSchemeSpec]) -> Outcome {
    let mut failures = Vec::new();
    let mut tables = 0;
    for spec in specs.iter().filter(|s| s.r == 1) {
        let group = build_group(spec).unwrap();
        let table = group_character_table(&group).unwrap();
        tables += 1;
        for v in table.violations() {
            failures.push(format!("{}: {v}", name(spec)));
        }
        let deg_sq: u64 = table.degrees.iter().map(|d| d * d).sum();
        if deg_sq != group.order() as u64 {
            failures.push(format!("{}: sum d^2 = {deg_sq}", name(spec)));
        }
    }
    let mut compared = 0;
    for family in [Family::Cyclic, Family::Dihedral] {
        for n in 1..=8 {
            let spec = [3, 5, 7]
                .into_iter()
                .find_map(|p| GroupSchemeSpec::new(family, n, p, 1).ok())
                .unwrap();
            let group = build_group(&spec).unwrap();
            let closed = closed_form_table(&group).unwrap();
            let dixon = dixon_schneider(&group).unwrap();
            compared += 1;
            if !dixon.violations().is_empty() || !same_rows(&closed, &dixon) {
                failures.push(format!("{}: Dixon-Schneider differs from closed form", name(&spec)));
            }
        }
    }
    Outcome {
        failures,
        summary: format!("{tables} tables orthogonal, {compared} Dixon/closed-form comparisons"),
    }
}

fn criterion_3(specs: &[GroupSchemeSpec]) -> Outcome {
    let mut failures = Vec::new();
    for spec in specs {
        let q = mckay_quiver(&fusion_for_spec(spec).unwrap()).unwrap();
        let sep = separated_quiver(&q);
        let report = check_separation(&q, &sep);
        if report.components != 2 || !report.bipartite_source_sink || !report.components_match_original {
            failures.push(format!("{}: {report:?}", name(spec)));
        }
        if let (Some(a), Some(b)) = (q.collapsed(), Some(sep.undirected())) {
            // two copies of the original graph
            if b.edge_count() != 2 * a.edge_count() {
                failures.push(format!("{}: edge count", name(spec)));
            }
        }
    }
    Outcome {
        failures,
        summary: format!("separated quivers of {} specs", specs.len()),
    }
}

fn criterion_4(specs: &[GroupSchemeSpec]) -> Outcome {
    let mut failures = Vec::new();
    let mut builds = 0;
    let mut sequences = 0;
    for spec in specs {
        let fusion = fusion_for_spec(spec).unwrap();
        let sep = separated_quiver(&mckay_quiver(&fusion).unwrap());
        let k = fusion.len();
        // every seed of small data, otherwise one seed per component
        let seeds: Vec<usize> = if k <= 12 {
            (0..k).collect()
        } else {
            component_indices(&sep)
                .iter()
                .filter_map(|c| c.iter().copied().filter(|&v| v >= k).min().map(|v| v - k))
                .collect()
        };
        for l in 0..=spec.p - 2 {
            for &seed in &seeds {
                let w = build_component(&fusion, spec.p, l, seed, WINDOW).unwrap();
                let q = seed_component(&fusion, seed).unwrap();
                builds += 1;
                for v in verify_psi(&w, &q, &fusion) {
                    failures.push(format!("{} l={l} seed={seed}: {v}", name(spec)));
                }
                for s in w.sequences(&fusion) {
                    sequences += 1;
                    let middle: u64 = s.middle_dim();
                    if s.left.dim() + s.right.dim() != middle {
                        failures.push(format!("{}: sequence ending at {} unbalanced", name(spec), s.right));
                    }
                }
            }
        }
        for v in heller_tau_violations(spec.p, 2 * WINDOW.0..=2 * WINDOW.1 + 1) {
            failures.push(format!("p={}: {v}", spec.p));
        }
    }
    Outcome {
        failures,
        summary: format!(
            "{builds} component windows of {} tau-steps, {sequences} almost split sequences",
            WINDOW.1 - WINDOW.0
        ),
    }
}

fn criterion_5(specs: &[GroupSchemeSpec]) -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for spec in specs.iter().filter(|s| s.r == 1) {
        let ctx = ActionContext::new(spec).unwrap();
        let report = tube_rank_report(&ctx).unwrap();
        checked += 1;
        let mut e: Vec<u64> = report
            .orbits
            .iter()
            .map(|o| o.ramification_index)
            .filter(|&e| e > 1)
            .collect();
        e.sort_unstable();
        if e != listed_indices(spec) {
            failures.push(format!("{}: indices {e:?}, expected {:?}", name(spec), listed_indices(spec)));
        }
        for o in &report.orbits {
            if o.orbit_size * o.stabilizer_order != report.effective_order {
                failures.push(format!("{}: orbit-stabilizer fails at {}", name(spec), o.representative));
            }
        }
        let (ok, residual) = riemann_hurwitz_check(&report);
        if !ok {
            failures.push(format!("{}: Riemann-Hurwitz residual {residual}", name(spec)));
        }
    }
    Outcome {
        failures,
        summary: format!("ramification data of {checked} reduced specs"),
    }
}

fn criterion_6(specs: &[GroupSchemeSpec]) -> Outcome {
    let mut failures = Vec::new();
    for spec in specs {
        let report = tube_rank_report(&ActionContext::new(spec).unwrap()).unwrap();
        if report.tube_ranks.len() > 3 {
            failures.push(format!("{}: {} exceptional tubes", name(spec), report.tube_ranks.len()));
        }
        if report.generic_index != 1 {
            failures.push(format!("{}: generic index {}", name(spec), report.generic_index));
        }
        if report.bound_checks.len() != report.tube_ranks.len()
            || report.bound_checks.iter().any(|b| !b.holds || b.m > b.e * b.n)
        {
            failures.push(format!("{}: bound m <= e n fails", name(spec)));
        }
        let t = classify_affine(&mckay_quiver(&fusion_for_spec(spec).unwrap()).unwrap()).unwrap();
        if euclidean_tube_ranks(&t) != report.tube_ranks {
            failures.push(format!(
                "{}: ranks {:?}, Euclidean type {t} has {:?}",
                name(spec),
                report.tube_ranks,
                euclidean_tube_ranks(&t)
            ));
        }
    }
    Outcome {
        failures,
        summary: format!("tube-rank reports of {} specs", specs.len()),
    }
}

fn criterion_7(specs: &[GroupSchemeSpec]) -> Outcome {
    let mut failures = Vec::new();
    let mut data = 0;
    let mut compared = 0;
    for spec in specs {
        let mut all = vec![fusion_for_spec(spec).unwrap()];
        if !spec.family.is_exceptional() {
            all.push(fusion_from_weights(spec).unwrap());
        }
        for d in &all {
            data += 1;
            for v in verify_fusion(d) {
                failures.push(format!("{}: {v}", name(spec)));
            }
            for j in 0..d.len() {
                let total: u64 = (0..d.len()).map(|i| d.matrix[i][j] * d.dims[i]).sum();
                if total != 2 * d.dims[j] {
                    failures.push(format!("{}: column {j}", name(spec)));
                }
            }
        }
        if spec.r == 1 && !spec.family.is_exceptional() {
            compared += 1;
            if fusion_isomorphism(&all[0], &all[1]).is_none() {
                failures.push(format!("{}: weight and character fusion differ", name(spec)));
            }
        }
    }
    Outcome {
        failures,
        summary: format!("{data} fusion data, {compared} weight/character comparisons"),
    }
}

fn run_binary(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_domestic-ar"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn criterion_8() -> Outcome {
    let mut failures = Vec::new();
    let invocations: &[&[&str]] = &[
        &["char-table", "--family", "octahedral", "--p", "5"],
        &["mckay", "--family", "icosahedral", "--p", "7"],
        &["separated", "--family", "dihedral", "--n", "3", "--p", "5", "--r", "2"],
        &["separated", "--family", "cyclic", "--n", "2", "--format", "dot"],
        &["ar-component", "--family", "cyclic", "--n", "3", "--p", "5", "--l", "0", "--seed", "0", "--window", "-2:2"],
        &["ar-component", "--family", "tetrahedral", "--p", "7", "--l", "3", "--seed", "2", "--format", "text"],
        &["tubes", "--family", "icosahedral", "--p", "7"],
        &["tubes", "--family", "dihedral", "--n", "2", "--p", "3", "--r", "2"],
        &["check", "--family", "tetrahedral", "--p", "5"],
        &["check", "--family", "cyclic", "--n", "4", "--p", "3", "--r", "2", "--format", "text"],
    ];
    for args in invocations {
        let (code_a, a) = run_binary(args);
        let (code_b, b) = run_binary(args);
        if code_a != 0 || code_b != 0 {
            failures.push(format!("{args:?}: exit {code_a}/{code_b}"));
        }
        if a != b || a.is_empty() {
            failures.push(format!("{args:?}: output differs between runs"));
        }
    }
    // no floating point anywhere in the engine
    let src = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/src");
    for entry in std::fs::read_dir(src).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        for token in ["f32", "f64"] {
            if text.split(|c: char| !c.is_alphanumeric() && c != '_').any(|w| w == token) {
                failures.push(format!("{} uses {token}", path.display()));
            }
        }
    }
    Outcome {
        failures,
        summary: format!("{} invocations byte-identical across runs", invocations.len()),
    }
}

#[test]
fn acceptance() {
    let specs = sweep();
    let criteria: Vec<Criterion> = vec![
        ("McKay classification sweep", Box::new(|| criterion_1(&specs))),
        ("character-table validity", Box::new(|| criterion_2(&specs))),
        ("separated-quiver structure", Box::new(|| criterion_3(&specs))),
        ("AR-component correctness", Box::new(|| criterion_4(&specs))),
        ("ramification data", Box::new(|| criterion_5(&specs))),
        ("tube-rank report", Box::new(|| criterion_6(&specs))),
        ("fusion conservation", Box::new(|| criterion_7(&specs))),
        ("determinism", Box::new(criterion_8)),
    ];
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let outcome = check();
        let verdict = if outcome.failures.is_empty() { "PASS" } else { "FAIL" };
        println!(
            "{verdict} criterion {}: {title} ({}; {} ms)",
            i + 1,
            outcome.summary,
            start.elapsed().as_millis()
        );
        for f in outcome.failures.iter().take(10) {
            println!("    {f}");
        }
        failed += usize::from(!outcome.failures.is_empty());
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
