//! Finite windows of the Euclidean Auslander-Reiten components `Z[Q]` with
//! module labels `V(n, l) (x) S_t`, their almost split sequences, and tube
//! windows `Z[A_inf]/(tau^e)`.
//!
//! A window never materializes the infinite quiver: it covers the slices
//! `nu` in an inclusive range. The slice `nu` of `Z[Q]` carries
//! `V(2nu+1, l) (x) S_t` at unprimed vertices `t` and `V(2nu, l) (x) S_t` at
//! primed vertices `t'` of the separated-quiver component `Q`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fusion::FusionDatum;
use crate::quiver::{component_indices, mckay_quiver, separated_quiver, ArrowRecord, Quiver, PRIME};

/// `V(n, i)`: the Weyl module `V(np + i)` for `n >= 0`, the dual of
/// `V(-np + i)` for `n <= 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeylClass {
    pub n: i64,
    pub i: u32,
    pub p: u32,
}

impl WeylClass {
    pub fn new(n: i64, i: u32, p: u32) -> Result<Self> {
        if i >= p {
            return Err(Error::InvalidSpec(format!("weight {i} outside [0, {}]", p - 1)));
        }
        Ok(WeylClass { n, i, p })
    }

    pub fn dim(&self) -> u64 {
        self.n.unsigned_abs() * self.p as u64 + self.i as u64 + 1
    }

    /// Highest weight of the underlying Weyl module.
    pub fn highest_weight(&self) -> u64 {
        self.n.unsigned_abs() * self.p as u64 + self.i as u64
    }

    pub fn is_dual(&self) -> bool {
        self.n < 0
    }
}

impl fmt::Display for WeylClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V({},{})", self.n, self.i)
    }
}

pub fn weyl_dim(w: &WeylClass) -> u64 {
    w.dim()
}

/// `Omega^k(L(i))` for a non-projective simple `L(i)`, `0 <= i <= p - 2`.
pub fn heller(k: i64, i: u32, p: u32) -> Result<WeylClass> {
    if i + 2 > p {
        return Err(Error::ProjectiveWeight(i as i64));
    }
    if k.rem_euclid(2) == 0 {
        WeylClass::new(k, i, p)
    } else {
        WeylClass::new(k, p - 2 - i, p)
    }
}

/// `V(n, l) (x) S_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModuleLabel {
    pub weyl: WeylClass,
    pub simple: usize,
    pub simple_label: String,
    pub simple_dim: u64,
}

impl ModuleLabel {
    pub fn new(weyl: WeylClass, simple: usize, d: &FusionDatum) -> Result<Self> {
        if simple >= d.len() {
            return Err(Error::BadSeed(simple));
        }
        Ok(ModuleLabel {
            weyl,
            simple,
            simple_label: d.labels[simple].clone(),
            simple_dim: d.dims[simple],
        })
    }

    pub fn dim(&self) -> u64 {
        self.weyl.dim() * self.simple_dim
    }

    /// Restricted to the Frobenius kernel the module is `dim S_j` copies of
    /// `V(n, l)`.
    pub fn restriction_multiplicity(&self) -> u64 {
        self.simple_dim
    }

    fn with_n(&self, n: i64) -> ModuleLabel {
        ModuleLabel {
            weyl: WeylClass { n, ..self.weyl },
            ..self.clone()
        }
    }
}

impl fmt::Display for ModuleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(x){}", self.weyl, self.simple_label)
    }
}

pub fn tau(m: &ModuleLabel) -> ModuleLabel {
    m.with_n(m.weyl.n + 2)
}

pub fn tau_inv(m: &ModuleLabel) -> ModuleLabel {
    m.with_n(m.weyl.n - 2)
}

/// Projective summand `P(h) (x) S_j` of a middle term; `P(h)` is the
/// `2p`-dimensional projective cover of `L(h)` over the Frobenius kernel.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectiveSummand {
    pub highest_weight: u32,
    pub simple: usize,
    pub dim: u64,
}

/// An almost split sequence `0 -> left -> middle -> right -> 0`.
///
/// `middle` lists the non-projective summands sorted by simple index. The
/// sequence ending at `V(-1, l) (x) S_j` also has the projective summand
/// `P(p-2-l) (x) S_j`, which is not a vertex of the stable quiver.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ASSeq {
    pub left: ModuleLabel,
    pub middle: Vec<ModuleLabel>,
    pub projective: Option<ProjectiveSummand>,
    pub right: ModuleLabel,
}

impl ASSeq {
    pub fn middle_dim(&self) -> u64 {
        self.middle.iter().map(ModuleLabel::dim).sum::<u64>()
            + self.projective.as_ref().map_or(0, |p| p.dim)
    }

    pub fn dims_balance(&self) -> bool {
        self.left.dim() + self.right.dim() == self.middle_dim()
    }
}

/// The almost split sequence ending at `right`: left term `tau(right)`,
/// middle `V(n+1, l) (x) L(1)^[1] (x) S_j = sum_i a[i][j] V(n+1, l) (x) S_i`.
pub fn ass(right: &ModuleLabel, d: &FusionDatum) -> ASSeq {
    let j = right.simple;
    let n = right.weyl.n;
    let mut middle = Vec::new();
    for i in 0..d.len() {
        for _ in 0..d.matrix[i][j] {
            middle.push(ModuleLabel {
                weyl: WeylClass { n: n + 1, ..right.weyl },
                simple: i,
                simple_label: d.labels[i].clone(),
                simple_dim: d.dims[i],
            });
        }
    }
    let projective = (n == -1).then(|| {
        let p = right.weyl.p;
        ProjectiveSummand {
            highest_weight: p - 2 - right.weyl.i,
            simple: j,
            dim: 2 * p as u64 * right.simple_dim,
        }
    });
    ASSeq {
        left: tau(right),
        middle,
        projective,
        right: right.clone(),
    }
}

/// A vertex `(nu, x)` of `Z[Q]` with its module label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowVertex {
    pub nu: i64,
    /// Vertex of the separated-quiver component, e.g. `w3` or `w2'`.
    pub node: String,
    pub label: ModuleLabel,
}

impl WindowVertex {
    pub fn id(&self) -> String {
        format!("{}:{}", self.nu, self.node)
    }
}

/// A finite slice range of `Z[Q]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentWindow {
    pub p: u32,
    pub l: u32,
    pub seed: usize,
    pub nu_min: i64,
    pub nu_max: i64,
    /// Vertices of the separated-quiver component `Q`.
    pub component: Vec<String>,
    pub vertices: Vec<WindowVertex>,
    pub arrows: BTreeMap<(usize, usize), u64>,
    /// `(x, tau(x))` for every `x` whose translate lies in the window.
    pub tau: Vec<(usize, usize)>,
}

/// The connected component of the separated McKay quiver containing `j'`.
pub fn seed_component(d: &FusionDatum, seed: usize) -> Result<Quiver> {
    if seed >= d.len() {
        return Err(Error::BadSeed(seed));
    }
    let sep = separated_quiver(&mckay_quiver(d)?);
    let primed = d.len() + seed;
    let comp = component_indices(&sep)
        .into_iter()
        .find(|c| c.contains(&primed))
        .expect("every vertex lies in a component");
    Ok(sep.induced(&comp))
}

fn split_node(node: &str) -> (&str, bool) {
    match node.strip_suffix(PRIME) {
        Some(base) => (base, true),
        None => (node, false),
    }
}

/// Realize `Z[Q]` over `nu_min..=nu_max`, where `Q` is the separated-quiver
/// component containing `seed'`.
pub fn build_component(
    d: &FusionDatum,
    p: u32,
    l: u32,
    seed: usize,
    window: (i64, i64),
) -> Result<ComponentWindow> {
    if l + 2 > p {
        return Err(Error::ProjectiveWeight(l as i64));
    }
    let (nu_min, nu_max) = window;
    if nu_min > nu_max {
        return Err(Error::Parse(format!("empty window {nu_min}:{nu_max}")));
    }
    let q = seed_component(d, seed)?;
    let index: HashMap<&str, usize> = d
        .labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();

    let width = q.vertex_count();
    let mut vertices = Vec::new();
    for nu in nu_min..=nu_max {
        for node in q.vertices() {
            let (base, primed) = split_node(node);
            let simple = index[base];
            let n = if primed { 2 * nu } else { 2 * nu + 1 };
            vertices.push(WindowVertex {
                nu,
                node: node.clone(),
                label: ModuleLabel::new(WeylClass::new(n, l, p)?, simple, d)?,
            });
        }
    }
    let at = |nu: i64, x: usize| -> Option<usize> {
        (nu_min..=nu_max)
            .contains(&nu)
            .then(|| (nu - nu_min) as usize * width + x)
    };

    let mut arrows = BTreeMap::new();
    for nu in nu_min..=nu_max {
        for (x, y, m) in q.arrows() {
            // (nu, x) -> (nu, y) and (nu+1, y) -> (nu, x)
            if let (Some(a), Some(b)) = (at(nu, x), at(nu, y)) {
                *arrows.entry((a, b)).or_insert(0) += m;
            }
            if let (Some(a), Some(b)) = (at(nu + 1, y), at(nu, x)) {
                *arrows.entry((a, b)).or_insert(0) += m;
            }
        }
    }
    let tau = (nu_min..nu_max)
        .flat_map(|nu| (0..width).map(move |x| (nu, x)))
        .map(|(nu, x)| (at(nu, x).unwrap(), at(nu + 1, x).unwrap()))
        .collect();

    Ok(ComponentWindow {
        p,
        l,
        seed,
        nu_min,
        nu_max,
        component: q.vertices().to_vec(),
        vertices,
        arrows,
        tau,
    })
}

impl ComponentWindow {
    pub fn slice_width(&self) -> usize {
        self.component.len()
    }

    pub fn slice(&self, nu: i64) -> impl Iterator<Item = &WindowVertex> {
        self.vertices.iter().filter(move |v| v.nu == nu)
    }

    pub fn mult(&self, a: usize, b: usize) -> u64 {
        self.arrows.get(&(a, b)).copied().unwrap_or(0)
    }

    pub fn tau_of(&self, x: usize) -> Option<usize> {
        let v = &self.vertices[x];
        (v.nu < self.nu_max).then(|| x + self.slice_width())
    }

    /// Almost split sequences ending at every vertex whose translate lies in
    /// the window.
    pub fn sequences(&self, d: &FusionDatum) -> Vec<ASSeq> {
        self.tau
            .iter()
            .map(|&(x, _)| ass(&self.vertices[x].label, d))
            .collect()
    }

    /// Window as a plain quiver on vertex ids.
    pub fn to_quiver(&self) -> Quiver {
        let mut q = Quiver::new(self.vertices.iter().map(WindowVertex::id).collect())
            .expect("window vertex ids are distinct");
        for (&(a, b), &m) in &self.arrows {
            q.add_arrows(a, b, m);
        }
        q
    }

    /// Quiver JSON schema extended with `tau` pairs and module labels.
    pub fn to_json_value(&self) -> serde_json::Value {
        let ids: Vec<String> = self.vertices.iter().map(WindowVertex::id).collect();
        let arrows: Vec<ArrowRecord> = self
            .arrows
            .iter()
            .map(|(&(a, b), &m)| ArrowRecord {
                from: ids[a].clone(),
                mult: m,
                to: ids[b].clone(),
            })
            .collect();
        let tau: Vec<[String; 2]> = self
            .tau
            .iter()
            .map(|&(a, b)| [ids[a].clone(), ids[b].clone()])
            .collect();
        let labels: BTreeMap<String, serde_json::Value> = self
            .vertices
            .iter()
            .zip(&ids)
            .map(|(v, id)| {
                (
                    id.clone(),
                    serde_json::json!({
                        "module": v.label.to_string(),
                        "weyl_n": v.label.weyl.n,
                        "weyl_i": v.label.weyl.i,
                        "simple": v.label.simple_label,
                        "dim": v.label.dim(),
                    }),
                )
            })
            .collect();
        serde_json::json!({
            "vertices": ids,
            "arrows": arrows,
            "tau": tau,
            "labels": labels,
        })
    }
}

/// Independent check that the window is `Z[Q]` under the labeling map:
/// slice bijectivity, arrow multiplicities against the fusion matrix,
/// tau-equivariance, and the mesh relations. Returns violations.
pub fn verify_psi(w: &ComponentWindow, q: &Quiver, d: &FusionDatum) -> Vec<String> {
    let mut out = Vec::new();
    let simple_of: HashMap<&str, usize> = d
        .labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();

    // slices: labels are exactly {V(2nu+1) S_t : t in Q} u {V(2nu) S_t : t' in Q}
    let mut expected_slice = BTreeSet::new();
    for node in q.vertices() {
        let (base, primed) = split_node(node);
        match simple_of.get(base) {
            Some(&s) => {
                expected_slice.insert((i64::from(!primed), s));
            }
            None => out.push(format!("component vertex {node:?} is not a simple label")),
        }
    }
    for nu in w.nu_min..=w.nu_max {
        let got: Vec<(i64, usize)> = w
            .slice(nu)
            .map(|v| (v.label.weyl.n - 2 * nu, v.label.simple))
            .collect();
        let distinct: BTreeSet<_> = got.iter().copied().collect();
        if distinct.len() != got.len() {
            out.push(format!("slice {nu}: repeated module labels"));
        }
        if distinct != expected_slice {
            out.push(format!("slice {nu}: labels do not match component vertices"));
        }
        if got.len() != q.vertex_count() {
            out.push(format!(
                "slice {nu}: {} vertices, component has {}",
                got.len(),
                q.vertex_count()
            ));
        }
        for v in w.slice(nu) {
            if v.label.weyl.i != w.l {
                out.push(format!("{}: weight {} != l = {}", v.id(), v.label.weyl.i, w.l));
            }
        }
    }

    // arrows: V(k+1) S_s -> V(k) S_t occurs a[s][t] times, nothing else
    let by_label: HashMap<(i64, usize), usize> = w
        .vertices
        .iter()
        .enumerate()
        .map(|(x, v)| ((v.label.weyl.n, v.label.simple), x))
        .collect();
    for (x, v) in w.vertices.iter().enumerate() {
        for t in 0..d.len() {
            if let Some(&y) = by_label.get(&(v.label.weyl.n - 1, t)) {
                let want = d.matrix[v.label.simple][t];
                let got = w.mult(x, y);
                if got != want {
                    out.push(format!(
                        "arrows {} -> {}: {got}, expected {want}",
                        v.label,
                        w.vertices[y].label
                    ));
                }
            }
        }
    }
    for &(a, b) in w.arrows.keys() {
        if w.vertices[a].label.weyl.n != w.vertices[b].label.weyl.n + 1 {
            out.push(format!(
                "unexpected arrow {} -> {}",
                w.vertices[a].label, w.vertices[b].label
            ));
        }
    }

    // tau-equivariance
    for &(a, b) in &w.tau {
        let (va, vb) = (&w.vertices[a], &w.vertices[b]);
        if vb.nu != va.nu + 1 || vb.node != va.node {
            out.push(format!("tau({}) = {} is not (nu+1, x)", va.id(), vb.id()));
        }
        if vb.label != tau(&va.label) {
            out.push(format!("label of tau({}) is {}, expected {}", va.id(), vb.label, tau(&va.label)));
        }
    }
    let with_tau: BTreeSet<usize> = w.tau.iter().map(|&(a, _)| a).collect();
    for (x, v) in w.vertices.iter().enumerate() {
        if v.nu < w.nu_max && !with_tau.contains(&x) {
            out.push(format!("{} has no translate", v.id()));
        }
    }

    // mesh: mult(y -> z) == mult(tau z -> y) for all y
    let mut preds: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut succs: HashMap<usize, Vec<usize>> = HashMap::new();
    for &(a, b) in w.arrows.keys() {
        succs.entry(a).or_default().push(b);
        preds.entry(b).or_default().push(a);
    }
    let none = Vec::new();
    for &(z, tz) in &w.tau {
        let into = preds.get(&z).unwrap_or(&none);
        let from_tau = succs.get(&tz).unwrap_or(&none);
        let middle: BTreeSet<usize> = into.iter().chain(from_tau).copied().collect();
        for &y in &middle {
            let (a, b) = (w.mult(y, z), w.mult(tz, y));
            if a != b {
                out.push(format!(
                    "mesh at {}: {} -> it has {a}, tau -> {} has {b}",
                    w.vertices[z].id(),
                    w.vertices[y].id(),
                    w.vertices[y].id()
                ));
            }
        }
    }

    // almost split sequences agree with the mesh and balance dimensions
    for &(z, _) in &w.tau {
        let seq = ass(&w.vertices[z].label, d);
        if !seq.dims_balance() {
            out.push(format!("sequence ending at {} does not balance", seq.right));
        }
        let mut mesh_middle: Vec<ModuleLabel> = Vec::new();
        for &y in preds.get(&z).unwrap_or(&none) {
            for _ in 0..w.mult(y, z) {
                mesh_middle.push(w.vertices[y].label.clone());
            }
        }
        mesh_middle.sort();
        let mut seq_middle = seq.middle.clone();
        seq_middle.sort();
        if mesh_middle != seq_middle {
            out.push(format!("middle term at {} differs from the mesh", seq.right));
        }
    }
    out
}

/// `tau` agrees with `Omega^2` on every label: `tau(Omega^k L(i)) =
/// Omega^(k+2) L(i)` for `k` in the given range.
pub fn heller_tau_violations(p: u32, ks: std::ops::RangeInclusive<i64>) -> Vec<String> {
    let mut out = Vec::new();
    for i in 0..p.saturating_sub(1) {
        for k in ks.clone() {
            let (Ok(here), Ok(next)) = (heller(k, i, p), heller(k + 2, i, p)) else {
                out.push(format!("heller undefined at k={k}, i={i}"));
                continue;
            };
            let shifted = WeylClass { n: here.n + 2, ..here };
            if shifted != next {
                out.push(format!("tau(Omega^{k} L({i})) = {shifted} != {next}"));
            }
        }
    }
    out
}

/// A window of the tube `Z[A_inf]/(tau^e)` up to quasi-length `max_ql`.
/// Vertex `(s, l)` sits in slot `s mod e` at quasi-length `l`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TubeWindow {
    pub rank: u64,
    pub max_ql: u64,
    pub vertices: Vec<(u64, u64)>,
    pub arrows: Vec<(usize, usize)>,
    pub tau: Vec<(usize, usize)>,
}

pub fn build_tube(rank: u64, max_ql: u64) -> Result<TubeWindow> {
    if rank == 0 || max_ql == 0 {
        return Err(Error::InvalidSpec("tube rank and quasi-length must be positive".into()));
    }
    if rank.saturating_mul(max_ql) > 1_000_000 {
        return Err(Error::InvalidSpec("tube window too large".into()));
    }
    let id = |s: u64, l: u64| ((l - 1) * rank + s) as usize;
    let mut vertices = Vec::new();
    for l in 1..=max_ql {
        for s in 0..rank {
            vertices.push((s, l));
        }
    }
    let mut arrows = Vec::new();
    for l in 1..max_ql {
        for s in 0..rank {
            // (s, l) -> (s, l+1) and (s+1, l+1) -> (s, l)
            arrows.push((id(s, l), id(s, l + 1)));
            arrows.push((id((s + 1) % rank, l + 1), id(s, l)));
        }
    }
    arrows.sort_unstable();
    let tau = vertices
        .iter()
        .map(|&(s, l)| (id(s, l), id((s + 1) % rank, l)))
        .collect();
    Ok(TubeWindow {
        rank,
        max_ql,
        vertices,
        arrows,
        tau,
    })
}

impl TubeWindow {
    fn id(&self, v: usize) -> String {
        let (s, l) = self.vertices[v];
        format!("{s}:{l}")
    }

    /// Quiver JSON schema extended with `tau` pairs and quasi-lengths.
    pub fn to_json_value(&self) -> serde_json::Value {
        let ids: Vec<String> = (0..self.vertices.len()).map(|v| self.id(v)).collect();
        let mut counts: BTreeMap<(usize, usize), u64> = BTreeMap::new();
        for &e in &self.arrows {
            *counts.entry(e).or_insert(0) += 1;
        }
        let arrows: Vec<ArrowRecord> = counts
            .into_iter()
            .map(|((a, b), m)| ArrowRecord {
                from: ids[a].clone(),
                mult: m,
                to: ids[b].clone(),
            })
            .collect();
        let tau: Vec<[String; 2]> = self
            .tau
            .iter()
            .map(|&(a, b)| [ids[a].clone(), ids[b].clone()])
            .collect();
        let labels: BTreeMap<String, serde_json::Value> = self
            .vertices
            .iter()
            .zip(&ids)
            .map(|(&(s, l), id)| (id.clone(), serde_json::json!({"slot": s, "quasi_length": l})))
            .collect();
        serde_json::json!({
            "vertices": ids,
            "arrows": arrows,
            "tau": tau,
            "labels": labels,
        })
    }

    pub fn quasi_length(&self, v: usize) -> u64 {
        self.vertices[v].1
    }

    pub fn apply_tau(&self, v: usize) -> usize {
        self.tau[v].1
    }

    fn mult(&self, a: usize, b: usize) -> u64 {
        self.arrows.iter().filter(|&&e| e == (a, b)).count() as u64
    }

    /// Mesh relations below the top row, one module per slot at each
    /// quasi-length, mouth vertices with a single successor, and
    /// `tau^e = id`.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for l in 1..=self.max_ql {
            let count = self.vertices.iter().filter(|v| v.1 == l).count() as u64;
            if count != self.rank {
                out.push(format!("{count} modules of quasi-length {l}, expected {}", self.rank));
            }
        }
        for v in 0..self.vertices.len() {
            let mut x = v;
            for _ in 0..self.rank {
                x = self.apply_tau(x);
            }
            if x != v {
                out.push(format!("tau^e moves vertex {v}"));
            }
            if self.quasi_length(v) >= self.max_ql {
                continue;
            }
            let tv = self.apply_tau(v);
            for y in 0..self.vertices.len() {
                if self.mult(y, v) != self.mult(tv, y) {
                    out.push(format!("mesh fails at {:?} through {:?}", self.vertices[v], self.vertices[y]));
                }
            }
            if self.quasi_length(v) == 1 {
                let succ = self.arrows.iter().filter(|&&(a, _)| a == v).count();
                if succ != 1 {
                    out.push(format!("mouth vertex {:?} has {succ} successors", self.vertices[v]));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::{fusion_for_spec, fusion_from_weights, FusionSource};
    use crate::groups::{Family, GroupSchemeSpec};

    fn trivial_fusion() -> FusionDatum {
        FusionDatum {
            labels: vec!["k".into()],
            dims: vec![1],
            matrix: vec![vec![2]],
            source: FusionSource::WeightCombinatorial,
        }
    }

    fn cyclic6() -> FusionDatum {
        fusion_for_spec(&GroupSchemeSpec::cyclic(3, 5, 1).unwrap()).unwrap()
    }

    fn label(n: i64, l: u32, p: u32, j: usize, d: &FusionDatum) -> ModuleLabel {
        ModuleLabel::new(WeylClass::new(n, l, p).unwrap(), j, d).unwrap()
    }

    #[test]
    fn weyl_dims() {
        assert_eq!(WeylClass::new(0, 2, 5).unwrap().dim(), 3);
        assert_eq!(WeylClass::new(2, 1, 5).unwrap().dim(), 12);
        assert_eq!(WeylClass::new(-1, 0, 3).unwrap().dim(), 4);
        assert!(WeylClass::new(0, 5, 5).is_err());
    }

    #[test]
    fn heller_examples() {
        assert_eq!(heller(0, 2, 5).unwrap(), WeylClass::new(0, 2, 5).unwrap());
        assert_eq!(heller(1, 1, 5).unwrap(), WeylClass::new(1, 2, 5).unwrap());
        assert_eq!(heller(1, 1, 5).unwrap().highest_weight(), 7);
        assert_eq!(heller(2, 0, 3).unwrap().highest_weight(), 6);
        assert_eq!(heller(-1, 0, 5).unwrap(), WeylClass::new(-1, 3, 5).unwrap());
        assert_eq!(heller(0, 4, 5), Err(Error::ProjectiveWeight(4)));
        assert!(heller_tau_violations(7, -6..=6).is_empty());
    }

    #[test]
    fn tau_examples() {
        let d = cyclic6();
        let m = label(0, 1, 5, 2, &d);
        assert_eq!(tau(&m).weyl.n, 2);
        assert_eq!(tau_inv(&tau(&m)), m);
        assert_eq!(tau(&label(-3, 1, 5, 2, &d)).weyl.n, -1);
    }

    #[test]
    fn ass_examples() {
        let d = trivial_fusion();
        let seq = ass(&label(3, 1, 5, 0, &d), &d);
        assert_eq!(seq.middle.len(), 2);
        assert!(seq.middle.iter().all(|m| m.weyl.n == 4 && m.simple == 0));
        assert!(seq.projective.is_none());

        // w2 <-> w1, w3 in the 6-cycle
        let w = fusion_from_weights(&GroupSchemeSpec::cyclic(3, 5, 1).unwrap()).unwrap();
        let seq = ass(&label(0, 1, 5, 2, &w), &w);
        let mids: Vec<(i64, usize)> = seq.middle.iter().map(|m| (m.weyl.n, m.simple)).collect();
        assert_eq!(mids, vec![(1, 1), (1, 3)]);
        assert_eq!(seq.left.dim() + seq.right.dim(), 2 * (5 + 2));
        assert!(seq.dims_balance());
    }

    #[test]
    fn sequence_through_the_simple_carries_a_projective() {
        let d = trivial_fusion();
        for l in 0..=3 {
            let seq = ass(&label(-1, l, 5, 0, &d), &d);
            let proj = seq.projective.clone().unwrap();
            assert_eq!(proj.highest_weight, 3 - l);
            assert_eq!(proj.dim, 10);
            assert!(seq.dims_balance());
            let stable: u64 = seq.middle.iter().map(ModuleLabel::dim).sum();
            assert_ne!(seq.left.dim() + seq.right.dim(), stable);
        }
        for n in [-4, -3, -2, 0, 1, 2] {
            let seq = ass(&label(n, 2, 5, 0, &d), &d);
            assert!(seq.projective.is_none());
            assert!(seq.dims_balance(), "n = {n}");
        }
    }

    #[test]
    fn cyclic_component_slice() {
        let d = fusion_from_weights(&GroupSchemeSpec::cyclic(3, 5, 1).unwrap()).unwrap();
        let w = build_component(&d, 5, 0, 0, (0, 0)).unwrap();
        let mut got: Vec<(i64, String)> = w
            .slice(0)
            .map(|v| (v.label.weyl.n, v.label.simple_label.clone()))
            .collect();
        got.sort();
        let want: Vec<(i64, String)> = vec![
            (0, "w0".into()),
            (0, "w2".into()),
            (0, "w4".into()),
            (1, "w1".into()),
            (1, "w3".into()),
            (1, "w5".into()),
        ];
        assert_eq!(got, want);
    }

    #[test]
    fn component_windows_verify() {
        for (fam, n, p) in [
            (Family::Cyclic, 3, 5),
            (Family::Dihedral, 2, 3),
            (Family::Icosahedral, 1, 7),
        ] {
            let d = fusion_for_spec(&GroupSchemeSpec::new(fam, n, p, 1).unwrap()).unwrap();
            for seed in 0..d.len() {
                let q = seed_component(&d, seed).unwrap();
                let w = build_component(&d, p, 0, seed, (-3, 3)).unwrap();
                assert_eq!(w.slice(1).count(), q.vertex_count());
                assert_eq!(verify_psi(&w, &q, &d), Vec::<String>::new());
                assert!(w.sequences(&d).iter().all(ASSeq::dims_balance));
            }
        }
    }

    #[test]
    fn corrupted_window_reports_mesh() {
        let d = fusion_for_spec(&GroupSchemeSpec::exceptional(Family::Icosahedral, 7).unwrap()).unwrap();
        let q = seed_component(&d, 0).unwrap();
        let mut w = build_component(&d, 7, 2, 0, (-2, 2)).unwrap();
        let first = *w.arrows.keys().nth(5).unwrap();
        w.arrows.remove(&first);
        let v = verify_psi(&w, &q, &d);
        assert!(v.iter().any(|s| s.starts_with("mesh")), "{v:?}");
    }

    #[test]
    fn build_component_rejects_steinberg() {
        let d = cyclic6();
        assert_eq!(build_component(&d, 5, 4, 0, (0, 1)), Err(Error::ProjectiveWeight(4)));
        assert_eq!(build_component(&d, 5, 0, 9, (0, 1)), Err(Error::BadSeed(9)));
    }

    #[test]
    fn tubes() {
        let t = build_tube(1, 3).unwrap();
        assert_eq!(t.vertices.len(), 3);
        assert!((0..3).all(|v| t.apply_tau(v) == v));
        assert!(t.violations().is_empty());
        let t = build_tube(3, 2).unwrap();
        assert_eq!(t.vertices.len(), 6);
        assert_eq!(t.vertices.iter().filter(|v| v.1 == 1).count(), 3);
        assert!(t.violations().is_empty());
        for e in 1..=6 {
            assert!(build_tube(e, 4).unwrap().violations().is_empty());
        }
        assert!(build_tube(0, 1).is_err());
        let v = build_tube(1, 2).unwrap().to_json_value();
        assert_eq!(v["arrows"].as_array().unwrap().len(), 2);
        assert_eq!(v["tau"][0], serde_json::json!(["0:1", "0:1"]));
    }

    #[test]
    fn window_json_shape() {
        let d = cyclic6();
        let w = build_component(&d, 5, 1, 0, (0, 1)).unwrap();
        let v = w.to_json_value();
        assert_eq!(v["vertices"].as_array().unwrap().len(), 12);
        assert_eq!(v["tau"].as_array().unwrap().len(), 6);
        assert!(v["labels"]["0:chi0'"]["module"].as_str().unwrap().starts_with("V(0,1)"));
    }
}
