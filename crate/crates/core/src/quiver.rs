//! Finite quivers: McKay quivers, separated quivers, components, affine
//! classification, and DOT/JSON export.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fusion::{verify_fusion, FusionDatum};
use crate::graph::{classify_graph, is_isomorphic, AffineType, UGraph};
use crate::groups::{Family, GroupSchemeSpec};

/// Serialized arrow record; keys in sorted order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowRecord {
    pub from: String,
    pub mult: u64,
    pub to: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuiverWire {
    vertices: Vec<String>,
    arrows: Vec<ArrowRecord>,
}

/// A finite directed multigraph with labeled vertices.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: BTreeMap<(usize, usize), u64>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>) -> Result<Self> {
        let mut seen = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if seen.insert(v.as_str(), i).is_some() {
                return Err(Error::Parse(format!("duplicate vertex {v:?}")));
            }
        }
        Ok(Quiver {
            vertices,
            arrows: BTreeMap::new(),
        })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn add_arrows(&mut self, from: usize, to: usize, mult: u64) {
        assert!(from < self.vertices.len() && to < self.vertices.len());
        if mult > 0 {
            *self.arrows.entry((from, to)).or_insert(0) += mult;
        }
    }

    /// Number of arrows `from -> to`.
    pub fn mult(&self, from: usize, to: usize) -> u64 {
        self.arrows.get(&(from, to)).copied().unwrap_or(0)
    }

    /// `(from, to, mult)` in lexicographic order of endpoints.
    pub fn arrows(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.arrows.iter().map(|(&(a, b), &m)| (a, b, m))
    }

    pub fn arrow_count(&self) -> u64 {
        self.arrows.values().sum()
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.arrows.keys().all(|&(_, to)| to != v)
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.arrows.keys().all(|&(from, _)| from != v)
    }

    /// Undirected graph in which every arrow contributes one edge.
    pub fn undirected(&self) -> UGraph {
        let mut g = UGraph::new(self.vertex_count());
        for (a, b, m) in self.arrows() {
            g.add_edge(a, b, m);
        }
        g
    }

    /// Underlying graph of a doubled quiver: each pair `x <-> y` becomes one
    /// edge. `None` when some arrow lacks its reverse partner.
    pub fn collapsed(&self) -> Option<UGraph> {
        let mut g = UGraph::new(self.vertex_count());
        for (a, b, m) in self.arrows() {
            if self.mult(b, a) != m {
                return None;
            }
            if a < b {
                g.add_edge(a, b, m);
            } else if a == b {
                // a loop pair collapses to a single loop
                g.add_edge(a, a, m);
            }
        }
        Some(g)
    }

    /// Induced subquiver on the given vertex indices, in the given order.
    pub fn induced(&self, keep: &[usize]) -> Quiver {
        let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut q = Quiver {
            vertices: keep.iter().map(|&v| self.vertices[v].clone()).collect(),
            arrows: BTreeMap::new(),
        };
        for (a, b, m) in self.arrows() {
            if let (Some(&x), Some(&y)) = (pos.get(&a), pos.get(&b)) {
                q.add_arrows(x, y, m);
            }
        }
        q
    }

    pub fn to_json(&self) -> String {
        export_json(self)
    }

    pub fn to_dot(&self) -> String {
        export_dot(self)
    }

    /// Inverse of [`export_json`]. Rejects unknown endpoints, duplicate
    /// vertices or arrow records, and zero multiplicities.
    pub fn from_json(text: &str) -> Result<Quiver> {
        let wire: QuiverWire =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut q = Quiver::new(wire.vertices)?;
        let index: HashMap<String, usize> = q
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        for rec in wire.arrows {
            let from = *index
                .get(&rec.from)
                .ok_or_else(|| Error::UnknownVertex(rec.from.clone()))?;
            let to = *index
                .get(&rec.to)
                .ok_or_else(|| Error::UnknownVertex(rec.to.clone()))?;
            if rec.mult == 0 {
                return Err(Error::Parse("arrow multiplicity 0".into()));
            }
            if q.arrows.insert((from, to), rec.mult).is_some() {
                return Err(Error::Parse(format!(
                    "duplicate arrow record {} -> {}",
                    rec.from, rec.to
                )));
            }
        }
        Ok(q)
    }
}

/// One vertex per simple, `a[i][j]` arrows `S_i -> S_j`.
pub fn mckay_quiver(d: &FusionDatum) -> Result<Quiver> {
    let violations = verify_fusion(d);
    if !violations.is_empty() {
        return Err(Error::FusionViolations(violations));
    }
    let mut q = Quiver::new(d.labels.clone())?;
    for i in 0..d.len() {
        for j in 0..d.len() {
            q.add_arrows(i, j, d.matrix[i][j]);
        }
    }
    Ok(q)
}

/// Suffix marking the primed copy of a vertex in a separated quiver.
pub const PRIME: &str = "'";

/// Vertices `x` and `x'` for every `x`, and an arrow `i -> j'` for each arrow
/// `i -> j`.
pub fn separated_quiver(q: &Quiver) -> Quiver {
    let n = q.vertex_count();
    let mut vertices = q.vertices.clone();
    vertices.extend(q.vertices.iter().map(|v| format!("{v}{PRIME}")));
    let mut s = Quiver {
        vertices,
        arrows: BTreeMap::new(),
    };
    for (a, b, m) in q.arrows() {
        s.add_arrows(a, n + b, m);
    }
    s
}

/// Weakly connected components, each as an induced subquiver with vertices
/// in their original order. Components are ordered by smallest label.
pub fn connected_components(q: &Quiver) -> Vec<Quiver> {
    component_indices(q)
        .into_iter()
        .map(|c| q.induced(&c))
        .collect()
}

/// Vertex index sets of the weakly connected components.
pub fn component_indices(q: &Quiver) -> Vec<Vec<usize>> {
    let n = q.vertex_count();
    let mut nbrs = vec![Vec::new(); n];
    for (a, b, _) in q.arrows() {
        nbrs[a].push(b);
        nbrs[b].push(a);
    }
    let mut comp = vec![usize::MAX; n];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        comp[s] = id;
        let mut members = vec![s];
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in &nbrs[v] {
                if comp[w] == usize::MAX {
                    comp[w] = id;
                    members.push(w);
                    queue.push_back(w);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out.sort_by(|x, y| {
        let min = |c: &Vec<usize>| c.iter().map(|&v| q.vertices[v].as_str()).min();
        min(x).cmp(&min(y))
    });
    out
}

/// Affine type of the underlying graph of a doubled quiver, or `None`.
pub fn classify_affine(q: &Quiver) -> Option<AffineType> {
    classify_graph(&q.collapsed()?)
}

/// Structural report for a separated quiver of a connected doubled quiver.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeparationReport {
    pub components: usize,
    pub bipartite_source_sink: bool,
    pub components_match_original: bool,
}

/// Check that `separated` splits into two components, that every vertex is a
/// source or a sink with arrows only unprimed to primed, and that each
/// component's underlying graph is isomorphic to that of `original`.
pub fn check_separation(original: &Quiver, separated: &Quiver) -> SeparationReport {
    let n = original.vertex_count();
    let comps = connected_components(separated);
    let bipartite = separated.arrows().all(|(a, b, _)| a < n && b >= n)
        && (0..separated.vertex_count()).all(|v| separated.is_source(v) || separated.is_sink(v));
    let matches = match original.collapsed() {
        Some(base) => comps.iter().all(|c| is_isomorphic(&c.undirected(), &base)),
        None => false,
    };
    SeparationReport {
        components: comps.len(),
        bipartite_source_sink: bipartite,
        components_match_original: matches,
    }
}

fn dot_id(label: &str) -> String {
    let mut s = String::with_capacity(label.len() + 2);
    s.push('"');
    for ch in label.chars() {
        if ch == '"' || ch == '\\' {
            s.push('\\');
        }
        s.push(ch);
    }
    s.push('"');
    s
}

/// DOT digraph; parallel arrows are written once per multiplicity.
pub fn export_dot(q: &Quiver) -> String {
    let mut out = String::from("digraph {\n");
    for v in &q.vertices {
        let _ = writeln!(out, "  {};", dot_id(v));
    }
    for (a, b, m) in q.arrows() {
        for _ in 0..m {
            let _ = writeln!(out, "  {} -> {};", dot_id(&q.vertices[a]), dot_id(&q.vertices[b]));
        }
    }
    out.push_str("}\n");
    out
}

pub fn export_json(q: &Quiver) -> String {
    serde_json::to_string(&wire(q)).expect("quiver serializes")
}

/// The JSON export as a value, for embedding in larger documents.
pub fn export_json_value(q: &Quiver) -> serde_json::Value {
    serde_json::to_value(wire(q)).expect("quiver serializes")
}

fn wire(q: &Quiver) -> QuiverWire {
    QuiverWire {
        vertices: q.vertices.clone(),
        arrows: q
            .arrows()
            .map(|(a, b, m)| ArrowRecord {
                from: q.vertices[a].clone(),
                mult: m,
                to: q.vertices[b].clone(),
            })
            .collect(),
    }
}

/// Euclidean type of the McKay quiver predicted from the family: `A~(2N-1)`
/// for cyclic and `D~(N+2)` for dihedral with `N = n p^(r-1)`, `E~6`, `E~7`,
/// `E~8` for the exceptional families. `D~3` coincides with `A~3`.
pub fn expected_affine_type(spec: &GroupSchemeSpec) -> AffineType {
    let big_n = spec.n * spec.infinitesimal_multiplier() as u32;
    match spec.family {
        Family::Cyclic => AffineType::a(2 * big_n - 1),
        Family::Dihedral if big_n == 1 => AffineType::a(3),
        Family::Dihedral => AffineType::d(big_n + 2),
        Family::Tetrahedral => AffineType::e(6),
        Family::Octahedral => AffineType::e(7),
        Family::Icosahedral => AffineType::e(8),
    }
}
