//! Measurement semantics: resolving sets, direct measuring, attractions,
//! type/height coordinates and sensor paths.

mod attraction;
pub(crate) mod geometry;

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Result, TmdError};
use crate::tree::{Tree, Vertex};

pub use attraction::{attraction, resolved_within, AttractionReport};
pub use geometry::{
    has_shared_strong_edge, sensor_paths, shares_edge, shared_edge_by_marking, sensor_path_sum,
    type_height, SensorPath, TypeHeight,
};

/// Sorted, duplicate-free sensor ids bound to a threshold `k >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SensorSet {
    sensors: Vec<Vertex>,
    k: usize,
}

impl SensorSet {
    /// Validates ids against `tree`. Input order does not matter.
    pub fn new(tree: &Tree, ids: impl IntoIterator<Item = Vertex>, k: usize) -> Result<Self> {
        let set = Self::unchecked(ids, k)?;
        for &s in &set.sensors {
            tree.check_vertex(s)?;
        }
        Ok(set)
    }

    fn unchecked(ids: impl IntoIterator<Item = Vertex>, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(TmdError::InvalidThreshold);
        }
        let mut sensors: Vec<Vertex> = ids.into_iter().collect();
        sensors.sort_unstable();
        if let Some(w) = sensors.windows(2).find(|w| w[0] == w[1]) {
            return Err(TmdError::DuplicateSensor(w[0]));
        }
        Ok(SensorSet { sensors, k })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn ids(&self) -> &[Vertex] {
        &self.sensors
    }

    pub fn len(&self) -> usize {
        self.sensors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sensors.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.sensors.binary_search(&v).is_ok()
    }

    pub(crate) fn check_member(&self, v: Vertex) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(TmdError::NotASensor(v))
        }
    }

    pub(crate) fn check_for(&self, tree: &Tree) -> Result<()> {
        self.sensors.iter().try_for_each(|&s| tree.check_vertex(s))
    }

    /// Sorted, validated subset of this set.
    pub(crate) fn subset(&self, subset: &[Vertex]) -> Result<Vec<Vertex>> {
        if subset.is_empty() {
            return Err(TmdError::EmptySubset);
        }
        let mut out = subset.to_vec();
        out.sort_unstable();
        out.dedup();
        for &s in &out {
            self.check_member(s)?;
        }
        Ok(out)
    }
}

/// Outcome of [`is_resolving`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Resolving,
    /// Smallest vertex no sensor measures.
    Uncovered(Vertex),
    /// Lexicographically first pair with identical truncated distance vectors.
    Unresolved(Vertex, Vertex),
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, Verdict::Resolving)
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Resolving => write!(f, "resolving"),
            Verdict::Uncovered(v) => write!(f, "vertex {v} is not measured by any sensor"),
            Verdict::Unresolved(x, y) => write!(f, "no sensor distinguishes {x} and {y}"),
        }
    }
}

/// Checks coverage first, then distinctness of truncated distance vectors.
pub fn is_resolving(tree: &Tree, sensors: &SensorSet) -> Result<Verdict> {
    sensors.check_for(tree)?;
    Ok(verdict_unchecked(tree, sensors.ids(), sensors.k()))
}

pub(crate) fn verdict_unchecked(tree: &Tree, sensors: &[Vertex], k: usize) -> Verdict {
    let n = tree.vertex_count();
    if let Some(v) = tree.vertices().find(|&v| sensors.iter().all(|&s| tree.dist(s, v) > k)) {
        return Verdict::Uncovered(v);
    }
    let mut classes: HashMap<Vec<usize>, Vec<Vertex>> = HashMap::with_capacity(n);
    for v in tree.vertices() {
        let code: Vec<usize> = sensors.iter().map(|&s| tree.dist(s, v).min(k + 1)).collect();
        classes.entry(code).or_default().push(v);
    }
    classes
        .values()
        .filter(|c| c.len() > 1)
        .map(|c| (c[0], c[1]))
        .min()
        .map_or(Verdict::Resolving, |(x, y)| Verdict::Unresolved(x, y))
}

pub(crate) fn require_resolving(tree: &Tree, sensors: &SensorSet) -> Result<()> {
    match is_resolving(tree, sensors)? {
        Verdict::Resolving => Ok(()),
        other => Err(TmdError::NotResolving(other.to_string())),
    }
}

/// `d(s, x) <= k`.
pub fn measures(tree: &Tree, sensors: &SensorSet, s: Vertex, x: Vertex) -> Result<bool> {
    sensors.check_member(s)?;
    tree.check_vertex(s)?;
    tree.check_vertex(x)?;
    Ok(tree.dist(s, x) <= sensors.k())
}

/// Measures, and no other sensor lies on the `s`-`x` path.
pub fn directly_measures(tree: &Tree, sensors: &SensorSet, s: Vertex, x: Vertex) -> Result<bool> {
    Ok(measures(tree, sensors, s, x)?
        && sensors.ids().iter().all(|&o| o == s || !tree.on_path(o, s, x)))
}

/// For every vertex, the sorted list of sensors that directly measure it.
///
/// Each sensor explores its radius-`k` ball without stepping onto another
/// sensor, so the cost is `O(|S| * n)`.
pub fn direct_measurers(tree: &Tree, sensors: &SensorSet) -> Vec<Vec<Vertex>> {
    let n = tree.vertex_count();
    let k = sensors.k();
    let mut is_sensor = vec![false; n];
    for &s in sensors.ids() {
        is_sensor[s] = true;
    }
    let mut out = vec![Vec::new(); n];
    let mut depth = vec![usize::MAX; n];
    let mut touched = Vec::new();
    for &s in sensors.ids() {
        depth[s] = 0;
        touched.push(s);
        let mut i = 0;
        while i < touched.len() {
            let u = touched[i];
            i += 1;
            out[u].push(s);
            if depth[u] == k {
                continue;
            }
            for &w in tree.neighbors(u) {
                if depth[w] == usize::MAX && !is_sensor[w] {
                    depth[w] = depth[u] + 1;
                    touched.push(w);
                }
            }
        }
        for &u in &touched {
            depth[u] = usize::MAX;
        }
        touched.clear();
    }
    out
}
