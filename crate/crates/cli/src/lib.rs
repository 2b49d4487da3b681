//! Command surface for `domestic-ar`: argument parsing, dispatch, and the
//! JSON/DOT/text renderers. Every JSON document has the top-level keys
//! `spec`, `assumptions` and `result`.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use domestic_ar::arcomp::{build_component, build_tube, heller_tau_violations, seed_component, verify_psi, ComponentWindow};
use domestic_ar::chartab::{closed_form_table, group_character_table, CharacterTable};
use domestic_ar::dixon::dixon_schneider;
use domestic_ar::fusion::{fusion_for_spec, fusion_from_weights, fusion_isomorphism, verify_fusion, FusionDatum};
use domestic_ar::graph::is_isomorphic;
use domestic_ar::groups::{build_group, Family, GroupSchemeSpec};
use domestic_ar::quiver::{
    check_separation, classify_affine, component_indices, connected_components, expected_affine_type,
    export_dot, export_json_value, mckay_quiver, separated_quiver, Quiver,
};
use domestic_ar::ramify::{euclidean_tube_ranks, riemann_hurwitz_check, tube_rank_report, ActionContext};

pub const DEFAULT_P: u32 = 5;
pub const DEFAULT_R: u32 = 1;
pub const DEFAULT_WINDOW: (i64, i64) = (-3, 3);
const TUBE_WINDOW_QL: u64 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Spec(domestic_ar::Error),
    #[error("{0}")]
    Engine(domestic_ar::Error),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Spec(_) => exit::SPEC,
            CliError::Engine(_) | CliError::Io(_) => exit::INTERNAL,
        }
    }
}

pub mod exit {
    pub const OK: i32 = 0;
    pub const INTERNAL: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const SPEC: i32 = 3;
    pub const VIOLATION: i32 = 4;
}

#[derive(Parser, Debug)]
#[command(name = "domestic-ar", version, about = "McKay quivers, AR components and tube ranks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Character table of the reduced group
    CharTable(Flags),
    /// McKay quiver and its Euclidean type
    Mckay(Flags),
    /// Separated McKay quiver and its components
    Separated(Flags),
    /// Window of a Euclidean AR component with its verification report
    ArComponent(Flags),
    /// Exceptional orbits and tube ranks
    Tubes(Flags),
    /// Run every invariant check for a spec
    Check(Flags),
}

#[derive(Args, Debug, Clone)]
pub struct Flags {
    #[arg(long, value_parser = parse_family)]
    pub family: Family,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long)]
    pub r: Option<u32>,
    /// Highest weight `l` of the Frobenius-kernel simple, `0..=p-2`
    #[arg(long)]
    pub l: Option<u32>,
    /// Index of the seed simple `j`
    #[arg(long)]
    pub seed: Option<usize>,
    /// Inclusive slice range `A:B`
    #[arg(long, allow_hyphen_values = true)]
    pub window: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: domestic_ar::Error| e.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommandKind {
    CharTable,
    Mckay,
    Separated,
    ArComponent,
    Tubes,
    Check,
}

impl CommandKind {
    fn name(self) -> &'static str {
        match self {
            CommandKind::CharTable => "char-table",
            CommandKind::Mckay => "mckay",
            CommandKind::Separated => "separated",
            CommandKind::ArComponent => "ar-component",
            CommandKind::Tubes => "tubes",
            CommandKind::Check => "check",
        }
    }
}

/// A validated invocation.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: CommandKind,
    pub spec: GroupSchemeSpec,
    pub l: Option<u32>,
    pub seed: Option<usize>,
    pub window: (i64, i64),
    pub format: Format,
    pub out: Option<PathBuf>,
    /// Flags that fell back to defaults, echoed as assumptions.
    pub defaults: Vec<String>,
}

/// Parse `A:B` into an inclusive range.
pub fn parse_window(s: &str) -> Result<(i64, i64), CliError> {
    let bad = || CliError::Usage(format!("window must be A:B with A <= B, got {s:?}"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let a: i64 = a.trim().parse().map_err(|_| bad())?;
    let b: i64 = b.trim().parse().map_err(|_| bad())?;
    if a > b || b - a > 10_000 {
        return Err(bad());
    }
    Ok((a, b))
}

impl RunConfig {
    pub fn from_command(cmd: Command) -> Result<Self, CliError> {
        let (kind, f) = match cmd {
            Command::CharTable(f) => (CommandKind::CharTable, f),
            Command::Mckay(f) => (CommandKind::Mckay, f),
            Command::Separated(f) => (CommandKind::Separated, f),
            Command::ArComponent(f) => (CommandKind::ArComponent, f),
            Command::Tubes(f) => (CommandKind::Tubes, f),
            Command::Check(f) => (CommandKind::Check, f),
        };
        let mut defaults = Vec::new();
        let p = f.p.unwrap_or_else(|| {
            defaults.push(format!("p defaulted to {DEFAULT_P}"));
            DEFAULT_P
        });
        let r = f.r.unwrap_or_else(|| {
            defaults.push(format!("r defaulted to {DEFAULT_R}"));
            DEFAULT_R
        });
        let n = f.n.unwrap_or(1);
        let window = match &f.window {
            Some(w) => parse_window(w)?,
            None => DEFAULT_WINDOW,
        };
        let graph_output = matches!(
            kind,
            CommandKind::Mckay | CommandKind::Separated | CommandKind::ArComponent
        );
        if f.format == Format::Dot && !graph_output {
            return Err(CliError::Usage(format!("{} has no DOT output", kind.name())));
        }
        let spec = GroupSchemeSpec::new(f.family, n, p, r).map_err(CliError::Spec)?;
        if let Some(l) = f.l {
            if l + 2 > p {
                return Err(CliError::Spec(domestic_ar::Error::ProjectiveWeight(l as i64)));
            }
        }
        Ok(RunConfig {
            command: kind,
            spec,
            l: f.l,
            seed: f.seed,
            window,
            format: f.format,
            out: f.out,
            defaults,
        })
    }

    fn spec_json(&self) -> Value {
        let mut v = json!({
            "command": self.command.name(),
            "family": self.spec.family,
            "n": self.spec.n,
            "p": self.spec.p,
            "r": self.spec.r,
        });
        if matches!(self.command, CommandKind::ArComponent | CommandKind::Check) {
            v["l"] = json!(self.l);
            v["seed"] = json!(self.seed);
            v["window"] = json!([self.window.0, self.window.1]);
        }
        v
    }
}

/// Rendered output and whether it reports a failed invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Emitted {
    pub text: String,
    pub violation: bool,
}

impl Emitted {
    pub fn exit_code(&self) -> i32 {
        if self.violation {
            exit::VIOLATION
        } else {
            exit::OK
        }
    }
}

struct Outcome {
    result: Value,
    assumptions: Vec<String>,
    dot: Option<String>,
    text: String,
    violation: bool,
}

const REDUCED_ASSUMPTION: &str = "reduced part realized as a characteristic-0 matrix group; \
     p does not divide its order";

pub fn run(cfg: &RunConfig) -> Result<Emitted, CliError> {
    let outcome = match cfg.command {
        CommandKind::CharTable => char_table(cfg),
        CommandKind::Mckay => mckay(cfg),
        CommandKind::Separated => separated(cfg),
        CommandKind::ArComponent => ar_component(cfg),
        CommandKind::Tubes => tubes(cfg),
        CommandKind::Check => check(cfg),
    }
    .map_err(|e| match e {
        domestic_ar::Error::BadSeed(_)
        | domestic_ar::Error::ProjectiveWeight(_)
        | domestic_ar::Error::InvalidSpec(_) => CliError::Spec(e),
        other => CliError::Engine(other),
    })?;
    let mut assumptions = cfg.defaults.clone();
    assumptions.push(REDUCED_ASSUMPTION.to_string());
    for a in outcome.assumptions {
        if !assumptions.contains(&a) {
            assumptions.push(a);
        }
    }
    let text = match cfg.format {
        Format::Json => {
            let doc = json!({
                "spec": cfg.spec_json(),
                "assumptions": assumptions,
                "result": outcome.result,
            });
            let mut s = serde_json::to_string(&doc).expect("document serializes");
            s.push('\n');
            s
        }
        Format::Dot => outcome.dot.expect("dot checked at parse time"),
        Format::Text => {
            let mut s = outcome.text;
            for a in &assumptions {
                let _ = writeln!(s, "assumption: {a}");
            }
            s
        }
    };
    Ok(Emitted {
        text,
        violation: outcome.violation,
    })
}

/// Run and write to `--out` or stdout.
pub fn execute(cfg: &RunConfig) -> Result<i32, CliError> {
    let emitted = run(cfg)?;
    match &cfg.out {
        Some(path) => std::fs::write(path, &emitted.text)?,
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(emitted.text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(emitted.exit_code())
}

type Res<T> = domestic_ar::Result<T>;

fn table_method(spec: &GroupSchemeSpec) -> &'static str {
    if spec.family.is_exceptional() {
        "dixon-schneider"
    } else {
        "closed-form"
    }
}

fn char_table(cfg: &RunConfig) -> Res<Outcome> {
    let group = build_group(&cfg.spec)?;
    let table = group_character_table(&group)?;
    let violations = table.violations();
    let classes: Vec<Value> = (0..group.class_count())
        .map(|c| {
            let g = group.representative(c);
            json!({
                "size": group.classes()[c].len(),
                "representative": format!("{:?}", group.element(g)),
                "element_order": group.element_order(g),
            })
        })
        .collect();
    let mut text = format!(
        "group of order {} with {} classes ({})\n",
        table.order,
        table.len(),
        table_method(&cfg.spec)
    );
    let _ = writeln!(text, "class sizes: {:?}", table.class_sizes);
    for (row, d) in table.irreducibles.iter().zip(&table.degrees) {
        let values: Vec<String> = row.values.iter().map(ToString::to_string).collect();
        let _ = writeln!(text, "deg {d}: {}", values.join(", "));
    }
    let mut assumptions = Vec::new();
    if cfg.spec.r > 1 {
        assumptions.push("table of the reduced part only".to_string());
    }
    Ok(Outcome {
        result: json!({
            "order": table.order,
            "conductor": table.conductor,
            "method": table_method(&cfg.spec),
            "classes": classes,
            "degrees": table.degrees,
            "characters": table.irreducibles.iter().map(|r| &r.values).collect::<Vec<_>>(),
            "violations": violations,
        }),
        assumptions,
        dot: None,
        text,
        violation: !violations.is_empty(),
    })
}

fn fusion_assumptions(spec: &GroupSchemeSpec) -> Vec<String> {
    let mut out = Vec::new();
    if spec.r > 1 {
        out.push(
            "simple labels of the non-reduced quotient indexed by weights \
             (w0.. for cyclic, e0..e3 and v1.. for dihedral); the indexing is a choice"
                .to_string(),
        );
    }
    if expected_affine_type(spec) == domestic_ar::graph::AffineType::a(3)
        && spec.family == Family::Dihedral
    {
        out.push("D~3 coincides with A~3 and is reported as A~3".to_string());
    }
    out
}

fn affine_matches(q: &Quiver, spec: &GroupSchemeSpec) -> (Option<String>, bool) {
    let found = classify_affine(q);
    let expected = expected_affine_type(spec);
    let matches = found.is_some_and(|t| is_isomorphic(&t.template(), &expected.template()));
    (found.map(|t| t.to_string()), matches)
}

fn mckay(cfg: &RunConfig) -> Res<Outcome> {
    let fusion = fusion_for_spec(&cfg.spec)?;
    let q = mckay_quiver(&fusion)?;
    let (found, matches) = affine_matches(&q, &cfg.spec);
    let expected = expected_affine_type(&cfg.spec).to_string();
    let mut text = format!(
        "McKay quiver: {} vertices, {} arrows\naffine type: {}\nexpected: {expected}\n",
        q.vertex_count(),
        q.arrow_count(),
        found.as_deref().unwrap_or("none"),
    );
    for (label, dim) in fusion.labels.iter().zip(&fusion.dims) {
        let _ = writeln!(text, "  {label} (dim {dim})");
    }
    Ok(Outcome {
        result: json!({
            "fusion": fusion,
            "quiver": export_json_value(&q),
            "affine_type": found,
            "expected_affine_type": expected,
            "affine_type_matches": matches,
        }),
        assumptions: fusion_assumptions(&cfg.spec),
        dot: Some(export_dot(&q)),
        text,
        violation: !matches,
    })
}

fn separated(cfg: &RunConfig) -> Res<Outcome> {
    let fusion = fusion_for_spec(&cfg.spec)?;
    let q = mckay_quiver(&fusion)?;
    let sep = separated_quiver(&q);
    let report = check_separation(&q, &sep);
    let comps: Vec<Value> = connected_components(&sep)
        .iter()
        .map(|c| {
            json!({
                "vertices": c.vertices(),
                "affine_type": classify_affine(c).map(|t| t.to_string()),
            })
        })
        .collect();
    let ok = report.components == 2 && report.bipartite_source_sink && report.components_match_original;
    let text = format!(
        "separated quiver: {} vertices, {} components\nbipartite source/sink: {}\ncomponents match original: {}\n",
        sep.vertex_count(),
        report.components,
        report.bipartite_source_sink,
        report.components_match_original
    );
    Ok(Outcome {
        result: json!({
            "quiver": export_json_value(&sep),
            "components": comps,
            "report": report,
        }),
        assumptions: fusion_assumptions(&cfg.spec),
        dot: Some(export_dot(&sep)),
        text,
        violation: !ok,
    })
}

const REGULARITY_ASSUMPTION: &str = "labels are not checked for regularity over the \
     quotient of the Frobenius kernel";
const PROJECTIVE_NOTE: &str = "the almost split sequence ending at V(-1,l)(x)S_j carries the \
     projective summand P(p-2-l)(x)S_j in its middle term";

/// Per-label restriction bookkeeping: `dim = dim V(n, l) * dim S_j`.
fn restriction_checks(w: &ComponentWindow) -> (Vec<Value>, usize) {
    let mut failed = 0;
    let rows = w
        .vertices
        .iter()
        .map(|v| {
            let ok = v.label.dim() == v.label.weyl.dim() * v.label.restriction_multiplicity();
            failed += usize::from(!ok);
            json!({
                "vertex": v.id(),
                "restricted": v.label.weyl.to_string(),
                "copies": v.label.restriction_multiplicity(),
                "dim": v.label.dim(),
                "consistent": ok,
            })
        })
        .collect();
    (rows, failed)
}

fn ar_component(cfg: &RunConfig) -> Res<Outcome> {
    let fusion = fusion_for_spec(&cfg.spec)?;
    let l = cfg.l.unwrap_or(0);
    let seed = cfg.seed.unwrap_or(0);
    let w = build_component(&fusion, cfg.spec.p, l, seed, cfg.window)?;
    let q = seed_component(&fusion, seed)?;
    let violations = verify_psi(&w, &q, &fusion);
    let sequences: Vec<Value> = w
        .sequences(&fusion)
        .into_iter()
        .map(|s| {
            json!({
                "left": s.left.to_string(),
                "middle": s.middle.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "projective": s.projective,
                "right": s.right.to_string(),
                "dims": [s.left.dim(), s.middle_dim(), s.right.dim()],
                "balanced": s.dims_balance(),
            })
        })
        .collect();
    let unbalanced = sequences.iter().filter(|s| s["balanced"] == false).count();
    let (restriction, restriction_failed) = restriction_checks(&w);
    let slices: Vec<usize> = (w.nu_min..=w.nu_max).map(|nu| w.slice(nu).count()).collect();
    let component_type = classify_affine(&q).map(|t| t.to_string());

    let mut text = format!(
        "component of {} (type {}), l = {l}, window {}:{}\n",
        fusion.labels[seed],
        component_type.as_deref().unwrap_or("none"),
        w.nu_min,
        w.nu_max
    );
    for nu in w.nu_min..=w.nu_max {
        let labels: Vec<String> = w.slice(nu).map(|v| v.label.to_string()).collect();
        let _ = writeln!(text, "nu = {nu}: {}", labels.join(", "));
    }
    let _ = writeln!(text, "psi violations: {}", violations.len());
    for v in &violations {
        let _ = writeln!(text, "  {v}");
    }

    let mut assumptions = fusion_assumptions(&cfg.spec);
    assumptions.push(REGULARITY_ASSUMPTION.to_string());
    assumptions.push(PROJECTIVE_NOTE.to_string());
    let violation = !violations.is_empty() || unbalanced > 0 || restriction_failed > 0;
    Ok(Outcome {
        result: json!({
            "component_type": component_type,
            "component_vertices": w.component,
            "slice_sizes": slices,
            "window": w.to_json_value(),
            "sequences": sequences,
            "restriction": restriction,
            "psi_violations": violations,
        }),
        assumptions,
        dot: Some(export_dot(&w.to_quiver())),
        text,
        violation,
    })
}

fn tubes(cfg: &RunConfig) -> Res<Outcome> {
    let ctx = ActionContext::new(&cfg.spec)?;
    let report = tube_rank_report(&ctx)?;
    let (rh_ok, _) = riemann_hurwitz_check(&report);
    let fusion = fusion_for_spec(&cfg.spec)?;
    let euclidean = classify_affine(&mckay_quiver(&fusion)?).map(|t| euclidean_tube_ranks(&t));
    let consistent = euclidean.as_ref() == Some(&report.tube_ranks);
    let windows = report
        .tube_ranks
        .iter()
        .map(|&e| build_tube(e, TUBE_WINDOW_QL).map(|t| json!({"rank": e, "window": t.to_json_value()})))
        .collect::<Res<Vec<_>>>()?;
    let orbit_stabilizer = report
        .orbits
        .iter()
        .all(|o| o.orbit_size * o.stabilizer_order == report.effective_order);

    let mut text = format!("effective group order {}\n", report.effective_order);
    for o in &report.orbits {
        let _ = writeln!(
            text,
            "orbit of {} : size {}, stabilizer {}, multiplier {}, e = {}",
            o.representative, o.orbit_size, o.stabilizer_order, o.infinitesimal_multiplier, o.ramification_index
        );
    }
    let _ = writeln!(text, "exceptional tube ranks: {:?}; all other tubes homogeneous", report.tube_ranks);
    let _ = writeln!(text, "Riemann-Hurwitz residual: {}", report.riemann_hurwitz_residual);

    let assumptions = report.assumptions.clone();
    let violation = !rh_ok || !consistent || !orbit_stabilizer || report.bound_checks.iter().any(|b| !b.holds);
    Ok(Outcome {
        result: json!({
            "report": report,
            "riemann_hurwitz_holds": rh_ok,
            "orbit_stabilizer_holds": orbit_stabilizer,
            "euclidean_tube_ranks": euclidean,
            "consistent_with_euclidean_type": consistent,
            "tube_windows": windows,
        }),
        assumptions,
        dot: None,
        text,
        violation,
    })
}

/// One named invariant and its outcome.
struct CheckItem {
    name: &'static str,
    passed: bool,
    detail: String,
}

impl CheckItem {
    fn new(name: &'static str, problems: Vec<String>) -> Self {
        CheckItem {
            name,
            passed: problems.is_empty(),
            detail: problems.join("; "),
        }
    }
}

/// Largest group for which `check` also runs Dixon-Schneider against the
/// closed form.
const DIXON_CROSS_CHECK_ORDER: usize = 32;

fn tables_agree(a: &CharacterTable, b: &CharacterTable) -> bool {
    let rows = |t: &CharacterTable| -> BTreeSet<Vec<String>> {
        t.irreducibles
            .iter()
            .map(|r| r.values.iter().map(|v| v.key()).collect())
            .collect()
    };
    a.len() == b.len() && rows(a) == rows(b)
}

/// Weights `l` checked by `check`: all of them for small `p`, otherwise the
/// extremes and the middle.
fn weights_to_check(cfg: &RunConfig) -> Vec<u32> {
    let p = cfg.spec.p;
    match cfg.l {
        Some(l) => vec![l],
        None if p <= 11 => (0..=p - 2).collect(),
        None => vec![0, (p - 2) / 2, p - 2],
    }
}

/// One seed per component of the separated quiver.
fn seeds_to_check(cfg: &RunConfig, fusion: &FusionDatum) -> Res<Vec<usize>> {
    if let Some(s) = cfg.seed {
        return Ok(vec![s]);
    }
    let sep = separated_quiver(&mckay_quiver(fusion)?);
    let k = fusion.len();
    Ok(component_indices(&sep)
        .iter()
        .filter_map(|c| c.iter().copied().filter(|&v| v >= k).min().map(|v| v - k))
        .collect())
}

fn check(cfg: &RunConfig) -> Res<Outcome> {
    let spec = &cfg.spec;
    let mut items = Vec::new();

    let group = build_group(spec)?;
    let class_total: usize = group.class_sizes().iter().sum();
    items.push(CheckItem::new(
        "class equation",
        if class_total == group.order() {
            vec![]
        } else {
            vec![format!("class sizes sum to {class_total}, |G| = {}", group.order())]
        },
    ));

    let table = group_character_table(&group)?;
    items.push(CheckItem::new("character table orthogonality", table.violations()));
    if !spec.family.is_exceptional() && group.order() <= DIXON_CROSS_CHECK_ORDER {
        let closed = closed_form_table(&group)?;
        let dixon = dixon_schneider(&group)?;
        items.push(CheckItem::new(
            "dixon-schneider matches closed form",
            if tables_agree(&closed, &dixon) {
                vec![]
            } else {
                vec!["tables differ".into()]
            },
        ));
    }

    let fusion = fusion_for_spec(spec)?;
    items.push(CheckItem::new("fusion conservation and symmetry", verify_fusion(&fusion)));
    if spec.r == 1 && !spec.family.is_exceptional() {
        let weights = fusion_from_weights(spec)?;
        items.push(CheckItem::new(
            "weight fusion matches character fusion",
            if fusion_isomorphism(&weights, &fusion).is_some() {
                vec![]
            } else {
                vec!["no label bijection".into()]
            },
        ));
    }

    let q = mckay_quiver(&fusion)?;
    let (found, matches) = affine_matches(&q, spec);
    items.push(CheckItem::new(
        "McKay quiver type",
        if matches {
            vec![]
        } else {
            vec![format!(
                "found {}, expected {}",
                found.as_deref().unwrap_or("none"),
                expected_affine_type(spec)
            )]
        },
    ));

    let sep = separated_quiver(&q);
    let report = check_separation(&q, &sep);
    let mut problems = Vec::new();
    if report.components != 2 {
        problems.push(format!("{} components", report.components));
    }
    if !report.bipartite_source_sink {
        problems.push("not bipartite source/sink".into());
    }
    if !report.components_match_original {
        problems.push("component graph differs from the original".into());
    }
    items.push(CheckItem::new("separated quiver structure", problems));

    let mut psi = Vec::new();
    let mut balance = Vec::new();
    for l in weights_to_check(cfg) {
        for seed in seeds_to_check(cfg, &fusion)? {
            let w = build_component(&fusion, spec.p, l, seed, cfg.window)?;
            let q = seed_component(&fusion, seed)?;
            psi.extend(
                verify_psi(&w, &q, &fusion)
                    .into_iter()
                    .map(|v| format!("l={l} seed={seed}: {v}")),
            );
            for s in w.sequences(&fusion) {
                if !s.dims_balance() {
                    balance.push(format!("sequence ending at {}", s.right));
                }
            }
            let (_, failed) = restriction_checks(&w);
            if failed > 0 {
                balance.push(format!("l={l} seed={seed}: {failed} restriction mismatches"));
            }
        }
    }
    items.push(CheckItem::new("AR component labels and mesh", psi));
    items.push(CheckItem::new("almost split sequence dimensions", balance));
    items.push(CheckItem::new(
        "tau agrees with Omega^2",
        heller_tau_violations(spec.p, cfg.window.0 * 2..=cfg.window.1 * 2 + 1),
    ));

    let ctx = ActionContext::new(spec)?;
    let tube_report = tube_rank_report(&ctx)?;
    let mut problems = Vec::new();
    for o in &tube_report.orbits {
        if o.orbit_size * o.stabilizer_order != tube_report.effective_order {
            problems.push(format!(
                "orbit of {}: {} * {} != {}",
                o.representative, o.orbit_size, o.stabilizer_order, tube_report.effective_order
            ));
        }
    }
    items.push(CheckItem::new("orbit-stabilizer", problems));
    let (rh_ok, residual) = riemann_hurwitz_check(&tube_report);
    items.push(CheckItem::new(
        "Riemann-Hurwitz",
        if rh_ok { vec![] } else { vec![format!("residual {residual}")] },
    ));
    let exceptional = tube_report.tube_ranks.len();
    items.push(CheckItem::new(
        "finitely many exceptional tubes",
        if exceptional <= 3 {
            vec![]
        } else {
            vec![format!("{exceptional} exceptional tubes")]
        },
    ));
    let euclidean = found
        .as_deref()
        .and_then(|t| t.parse().ok())
        .map(|t| euclidean_tube_ranks(&t));
    items.push(CheckItem::new(
        "tube ranks match Euclidean type",
        if euclidean.as_ref() == Some(&tube_report.tube_ranks) {
            vec![]
        } else {
            vec![format!("ramification {:?}, Euclidean {:?}", tube_report.tube_ranks, euclidean)]
        },
    ));
    items.push(CheckItem::new(
        "tube rank bound",
        tube_report
            .bound_checks
            .iter()
            .filter(|b| !b.holds)
            .map(|b| format!("{} > {} * {}", b.m, b.e, b.n))
            .collect(),
    ));
    let mut tube_problems = Vec::new();
    for &e in &tube_report.tube_ranks {
        tube_problems.extend(build_tube(e, TUBE_WINDOW_QL + 1)?.violations());
    }
    items.push(CheckItem::new("tube windows", tube_problems));

    let failed = items.iter().filter(|c| !c.passed).count();
    let mut text = String::new();
    for c in &items {
        let _ = write!(text, "{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name);
        if !c.passed {
            let _ = write!(text, ": {}", c.detail);
        }
        text.push('\n');
    }
    let _ = writeln!(text, "{} of {} checks passed", items.len() - failed, items.len());

    let mut assumptions = fusion_assumptions(spec);
    assumptions.extend(tube_report.assumptions.iter().cloned());
    assumptions.push(REGULARITY_ASSUMPTION.to_string());
    Ok(Outcome {
        result: json!({
            "checks": items
                .iter()
                .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
                .collect::<Vec<_>>(),
            "failed": failed,
            "passed": failed == 0,
        }),
        assumptions,
        dot: None,
        text,
        violation: failed > 0,
    })
}
