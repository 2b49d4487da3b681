//! Undirected multigraphs, backtracking isomorphism search and recognition of
//! the simply-laced Euclidean (affine ADE) diagrams.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Symmetric multiplicity matrix; `adj[i][j]` edges between `i` and `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UGraph {
    pub adj: Vec<Vec<u64>>,
}

impl UGraph {
    pub fn new(n: usize) -> Self {
        UGraph {
            adj: vec![vec![0; n]; n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = UGraph::new(n);
        for &(a, b) in edges {
            g.add_edge(a, b, 1);
        }
        g
    }

    pub fn add_edge(&mut self, a: usize, b: usize, mult: u64) {
        self.adj[a][b] += mult;
        if a != b {
            self.adj[b][a] += mult;
        }
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn degree(&self, v: usize) -> u64 {
        self.adj[v].iter().sum()
    }

    pub fn edge_count(&self) -> u64 {
        let n = self.len();
        (0..n)
            .flat_map(|i| (i..n).map(move |j| (i, j)))
            .map(|(i, j)| self.adj[i][j])
            .sum()
    }

    pub fn has_loops(&self) -> bool {
        (0..self.len()).any(|i| self.adj[i][i] > 0)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.len();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for w in 0..n {
                if self.adj[v][w] > 0 && !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == n
    }

    fn sorted_degrees(&self) -> Vec<u64> {
        let mut d: Vec<u64> = (0..self.len()).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    /// Vertices in BFS order starting from a vertex of maximum degree, so that
    /// each vertex after the first in its component has an earlier neighbor.
    fn search_order(&self) -> Vec<usize> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        while order.len() < n {
            let start = (0..n)
                .filter(|&v| !seen[v])
                .max_by_key(|&v| (self.degree(v), std::cmp::Reverse(v)))
                .unwrap();
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                order.push(v);
                for w in 0..n {
                    if self.adj[v][w] > 0 && !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        order
    }
}

/// Find a bijection `map` with `g.adj[i][j] == h.adj[map[i]][map[j]]` and
/// matching colors, by backtracking with degree pruning.
pub fn find_isomorphism(g: &UGraph, g_colors: &[u64], h: &UGraph, h_colors: &[u64]) -> Option<Vec<usize>> {
    let n = g.len();
    if n != h.len() || g.sorted_degrees() != h.sorted_degrees() {
        return None;
    }
    let mut gc = g_colors.to_vec();
    let mut hc = h_colors.to_vec();
    gc.sort_unstable();
    hc.sort_unstable();
    if gc != hc {
        return None;
    }
    let order = g.search_order();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(g, g_colors, h, h_colors, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &UGraph,
    gc: &[u64],
    h: &UGraph,
    hc: &[u64],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    // if v has an already-mapped neighbor, only its images' neighbors qualify
    let anchor = order[..depth].iter().copied().find(|&u| g.adj[v][u] > 0);
    let candidates: Vec<usize> = match anchor {
        Some(u) => (0..h.len()).filter(|&w| h.adj[map[u]][w] > 0).collect(),
        None => (0..h.len()).collect(),
    };
    for w in candidates {
        if used[w] || gc[v] != hc[w] || g.degree(v) != h.degree(w) || g.adj[v][v] != h.adj[w][w] {
            continue;
        }
        if order[..depth].iter().any(|&u| g.adj[v][u] != h.adj[w][map[u]]) {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if extend(g, gc, h, hc, order, depth + 1, map, used) {
            return true;
        }
        used[w] = false;
        map[v] = usize::MAX;
    }
    false
}

pub fn is_isomorphic(g: &UGraph, h: &UGraph) -> bool {
    find_isomorphism(g, &vec![0; g.len()], h, &vec![0; h.len()]).is_some()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AffineFamily {
    A,
    D,
    E,
}

/// A Euclidean diagram: `A~n` (n >= 1), `D~n` (n >= 4) or `E~n` (6 <= n <= 8).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineType {
    pub family: AffineFamily,
    pub index: u32,
}

impl AffineType {
    pub fn new(family: AffineFamily, index: u32) -> Option<Self> {
        let ok = match family {
            AffineFamily::A => index >= 1,
            AffineFamily::D => index >= 4,
            AffineFamily::E => (6..=8).contains(&index),
        };
        ok.then_some(AffineType { family, index })
    }

    pub fn a(index: u32) -> Self {
        Self::new(AffineFamily::A, index).expect("A~ index >= 1")
    }

    pub fn d(index: u32) -> Self {
        Self::new(AffineFamily::D, index).expect("D~ index >= 4")
    }

    pub fn e(index: u32) -> Self {
        Self::new(AffineFamily::E, index).expect("E~ index in 6..=8")
    }

    /// Number of vertices, `index + 1`.
    pub fn vertex_count(&self) -> usize {
        self.index as usize + 1
    }

    /// The diagram as an undirected multigraph.
    pub fn template(&self) -> UGraph {
        let n = self.vertex_count();
        match self.family {
            AffineFamily::A if n == 2 => {
                let mut g = UGraph::new(2);
                g.add_edge(0, 1, 2);
                g
            }
            AffineFamily::A => {
                let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
                UGraph::from_edges(n, &edges)
            }
            AffineFamily::D => {
                // chain 2..=n-3 with two leaves at each end
                let mut edges = vec![(0, 2), (1, 2), (n - 3, n - 2), (n - 3, n - 1)];
                edges.extend((2..n - 3).map(|i| (i, i + 1)));
                UGraph::from_edges(n, &edges)
            }
            AffineFamily::E => {
                // star with three arms from vertex 0
                let arms: &[usize] = match self.index {
                    6 => &[2, 2, 2],
                    7 => &[1, 3, 3],
                    _ => &[1, 2, 5],
                };
                let mut edges = Vec::new();
                let mut next = 1;
                for &len in arms {
                    let mut prev = 0;
                    for _ in 0..len {
                        edges.push((prev, next));
                        prev = next;
                        next += 1;
                    }
                }
                UGraph::from_edges(n, &edges)
            }
        }
    }
}

impl fmt::Display for AffineType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fam = match self.family {
            AffineFamily::A => "A",
            AffineFamily::D => "D",
            AffineFamily::E => "E",
        };
        write!(f, "{fam}~{}", self.index)
    }
}

impl FromStr for AffineType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("bad affine type {s:?}"));
        let (fam, idx) = s.split_once('~').ok_or_else(bad)?;
        let family = match fam {
            "A" => AffineFamily::A,
            "D" => AffineFamily::D,
            "E" => AffineFamily::E,
            _ => return Err(bad()),
        };
        let index: u32 = idx.parse().map_err(|_| bad())?;
        AffineType::new(family, index).ok_or_else(bad)
    }
}

impl Serialize for AffineType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for AffineType {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Recognize a connected undirected multigraph as a Euclidean diagram.
pub fn classify_graph(g: &UGraph) -> Option<AffineType> {
    let n = g.len();
    if n < 2 || g.has_loops() || !g.is_connected() {
        return None;
    }
    let edges = g.edge_count();
    let candidates: Vec<AffineType> = if edges == n as u64 {
        vec![AffineType::a(n as u32 - 1)]
    } else if edges + 1 == n as u64 {
        let idx = n as u32 - 1;
        [
            AffineType::new(AffineFamily::D, idx),
            AffineType::new(AffineFamily::E, idx),
        ]
        .into_iter()
        .flatten()
        .collect()
    } else {
        Vec::new()
    };
    candidates
        .into_iter()
        .find(|t| is_isomorphic(g, &t.template()))
}
