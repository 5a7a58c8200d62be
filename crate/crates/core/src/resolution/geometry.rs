use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::SensorSet;
use crate::error::{Result, TmdError};
use crate::tree::{normalize_edge, Edge, Tree, Vertex};

/// Coordinates of a vertex relative to an ordered sensor pair `(s, s')`:
/// `typ` is where the vertex projects onto the `s`-`s'` path, measured from
/// `s`, and `hgt` is its distance from that path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct TypeHeight {
    pub typ: usize,
    pub hgt: usize,
}

impl TypeHeight {
    /// Recovers `(d(x, s), d(x, s'))` given `d(s, s')`.
    pub fn distances(self, pair_distance: usize) -> (usize, usize) {
        (self.typ + self.hgt, pair_distance - self.typ + self.hgt)
    }
}

pub fn type_height(tree: &Tree, s: Vertex, s_prime: Vertex, x: Vertex) -> Result<TypeHeight> {
    for v in [s, s_prime, x] {
        tree.check_vertex(v)?;
    }
    if s == s_prime {
        return Err(TmdError::DegeneratePair);
    }
    if x == s || x == s_prime {
        return Err(TmdError::EndpointVertex { vertex: x });
    }
    Ok(type_height_unchecked(tree, s, s_prime, x))
}

pub(crate) fn type_height_unchecked(tree: &Tree, s: Vertex, s_prime: Vertex, x: Vertex) -> TypeHeight {
    let (dxs, dxt, dst) = (tree.dist(x, s), tree.dist(x, s_prime), tree.dist(s, s_prime));
    let twice = dxs + dst - dxt;
    debug_assert_eq!(twice % 2, 0, "tree distances have even excess");
    let typ = twice / 2;
    TypeHeight { typ, hgt: dxs - typ }
}

/// Path between two sensors with no other sensor on it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SensorPath {
    /// Smaller id first.
    pub endpoints: (Vertex, Vertex),
    /// From `endpoints.0` to `endpoints.1`.
    pub vertices: Vec<Vertex>,
    /// At most `k + 1` edges.
    pub strong: bool,
}

impl SensorPath {
    pub fn length(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn edges(&self) -> Vec<Edge> {
        self.vertices.windows(2).map(|w| normalize_edge(w[0], w[1])).collect()
    }

    pub fn has_endpoint(&self, v: Vertex) -> bool {
        self.endpoints.0 == v || self.endpoints.1 == v
    }

    pub fn other_endpoint(&self, v: Vertex) -> Vertex {
        if self.endpoints.0 == v {
            self.endpoints.1
        } else {
            self.endpoints.0
        }
    }
}

/// All sensor paths, ordered by endpoint pair.
pub fn sensor_paths(tree: &Tree, sensors: &SensorSet) -> Vec<SensorPath> {
    let n = tree.vertex_count();
    let mut is_sensor = vec![false; n];
    for &s in sensors.ids() {
        is_sensor[s] = true;
    }
    let mut out = Vec::new();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::new();
    for &s in sensors.ids() {
        parent[s] = s;
        order.push(s);
        let mut i = 0;
        while i < order.len() {
            let u = order[i];
            i += 1;
            if u != s && is_sensor[u] {
                continue;
            }
            for &w in tree.neighbors(u) {
                if parent[w] == usize::MAX {
                    parent[w] = u;
                    order.push(w);
                }
            }
        }
        let mut found: Vec<Vertex> = order.iter().copied().filter(|&v| v > s && is_sensor[v]).collect();
        found.sort_unstable();
        for t in found {
            let mut vertices = vec![t];
            let mut cur = t;
            while cur != s {
                cur = parent[cur];
                vertices.push(cur);
            }
            vertices.reverse();
            let strong = vertices.len() - 1 <= sensors.k() + 1;
            out.push(SensorPath { endpoints: (s, t), vertices, strong });
        }
        for &u in &order {
            parent[u] = usize::MAX;
        }
        order.clear();
    }
    out
}

/// True when the two paths have an edge in common.
pub fn shares_edge(p1: &SensorPath, p2: &SensorPath) -> bool {
    let e1: HashSet<Edge> = p1.edges().into_iter().collect();
    p2.edges().iter().any(|e| e1.contains(e))
}

/// Pairwise check: some two strong sensor paths share an edge.
pub fn has_shared_strong_edge(paths: &[SensorPath]) -> bool {
    let strong: Vec<&SensorPath> = paths.iter().filter(|p| p.strong).collect();
    strong
        .iter()
        .enumerate()
        .any(|(i, a)| strong[i + 1..].iter().any(|b| shares_edge(a, b)))
}

/// Same predicate as [`has_shared_strong_edge`], computed by counting how
/// many strong paths cover each edge.
pub fn shared_edge_by_marking(paths: &[SensorPath]) -> bool {
    let mut marks: HashMap<Edge, usize> = HashMap::new();
    for p in paths.iter().filter(|p| p.strong) {
        for e in p.edges() {
            *marks.entry(e).or_insert(0) += 1;
        }
    }
    marks.values().any(|&c| c >= 2)
}

/// Sum of the lengths of all sensor paths.
pub fn sensor_path_sum(paths: &[SensorPath]) -> usize {
    paths.iter().map(SensorPath::length).sum()
}
