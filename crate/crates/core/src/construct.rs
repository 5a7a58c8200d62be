//! Maximum-size trees resolved by `m` sensors, and the closed forms that
//! count them.

use serde::Serialize;

use crate::error::{Result, TmdError};
use crate::resolution::{sensor_paths, SensorSet};
use crate::tree::{Edge, Tree};

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        Err(TmdError::InvalidThreshold)
    } else {
        Ok(())
    }
}

/// Largest possible attraction of a pair of sensors joined by a sensor path.
pub fn pair_attraction_max(k: usize) -> usize {
    if k % 3 == 1 {
        (k * k + k + 1) / 3
    } else {
        (k * k + k) / 3
    }
}

/// Pair attraction of a sensor path with `d` internal vertices when every
/// position carries the tallest admissible hanging path.
pub fn pair_attraction_for_gap(d: usize, k: usize) -> i64 {
    let (d, k) = (d as i64, k as i64);
    (1..=d).map(|i| 1 + (k - i).min(k - (d + 1 - i))).sum()
}

/// Maximizes [`pair_attraction_for_gap`] over `1 <= d <= k + 1` by direct
/// evaluation.
pub fn pair_attraction_brute(k: usize) -> usize {
    (1..=k + 1).map(|d| pair_attraction_for_gap(d, k)).max().unwrap_or(0) as usize
}

/// Closed form of [`pair_attraction_for_gap`] for even `d`.
pub fn sum_even(d: usize, k: usize) -> Result<usize> {
    check_k(k)?;
    if d == 0 || d % 2 != 0 {
        return Err(TmdError::Parity(format!("sum_even needs a positive even gap, got {d}")));
    }
    exact_quarter(4 * d * k + 2 * d, 3 * d * d)
}

/// Closed form of [`pair_attraction_for_gap`] for odd `d`.
pub fn sum_odd(d: usize, k: usize) -> Result<usize> {
    check_k(k)?;
    if d % 2 != 1 {
        return Err(TmdError::Parity(format!("sum_odd needs an odd gap, got {d}")));
    }
    exact_quarter(4 * d * k + 2 * d + 1, 3 * d * d)
}

fn exact_quarter(plus: usize, minus: usize) -> Result<usize> {
    let value = plus
        .checked_sub(minus)
        .ok_or_else(|| TmdError::Precondition("gap exceeds the admissible range".into()))?;
    debug_assert_eq!(value % 4, 0);
    Ok(value / 4)
}

/// Nearest integer to `(2k + 1) / 3`.
pub fn optimal_gap(k: usize) -> usize {
    (2 * k).div_ceil(3)
}

/// Maximum number of vertices of a tree resolved by `m` sensors.
pub fn optimal_size(m: usize, k: usize) -> usize {
    (k + 1) * m + m.saturating_sub(1) * pair_attraction_max(k)
}

/// Parameters of the maximum-size construction over a given skeleton.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OptimalBlueprint {
    pub m: usize,
    pub k: usize,
    /// Sensor adjacency; node `i` becomes sensor `i`.
    #[serde(serialize_with = "serialize_edges")]
    pub skeleton: Tree,
    /// Internal vertices per sensor path.
    pub gap: usize,
    /// Length of the path hanging from the `i`-th internal vertex (0-based).
    pub hang_lengths: Vec<usize>,
}

fn serialize_edges<S: serde::Serializer>(tree: &Tree, s: S) -> std::result::Result<S::Ok, S::Error> {
    tree.edges().serialize(s)
}

impl OptimalBlueprint {
    /// `skeleton` defaults to the path on `m` nodes.
    pub fn new(m: usize, k: usize, skeleton: Option<Tree>) -> Result<Self> {
        check_k(k)?;
        if m == 0 {
            return Err(TmdError::EmptyTree);
        }
        let skeleton = match skeleton {
            Some(t) if t.vertex_count() != m => {
                return Err(TmdError::Precondition(format!(
                    "skeleton has {} nodes, expected {m}",
                    t.vertex_count()
                )))
            }
            Some(t) => t,
            None => Tree::path(m)?,
        };
        let gap = optimal_gap(k);
        let hang_lengths = (1..=gap).map(|i| (k - i).min(k - (gap + 1 - i))).collect();
        Ok(OptimalBlueprint { m, k, skeleton, gap, hang_lengths })
    }

    pub fn size(&self) -> usize {
        let per_edge: usize = self.hang_lengths.iter().map(|h| h + 1).sum();
        (self.k + 1) * self.m + (self.m - 1) * per_edge
    }

    /// Ids: sensors `0..m`, then every skeleton edge's internal vertices,
    /// then the hanging paths, then each sensor's leaf-path.
    pub fn build(&self) -> Result<(Tree, SensorSet)> {
        let mut next = self.m;
        let mut fresh = || {
            next += 1;
            next - 1
        };
        let mut edges: Vec<Edge> = Vec::with_capacity(self.size());
        let mut internal = Vec::new();
        for (u, v) in self.skeleton.edges() {
            let ws: Vec<usize> = (0..self.gap).map(|_| fresh()).collect();
            let mut prev = u;
            for &w in &ws {
                edges.push((prev, w));
                prev = w;
            }
            edges.push((prev, v));
            internal.push(ws);
        }
        for ws in &internal {
            for (&w, &h) in ws.iter().zip(&self.hang_lengths) {
                let mut prev = w;
                for _ in 0..h {
                    let x = fresh();
                    edges.push((prev, x));
                    prev = x;
                }
            }
        }
        for s in 0..self.m {
            let mut prev = s;
            for _ in 0..self.k {
                let x = fresh();
                edges.push((prev, x));
                prev = x;
            }
        }
        let tree = Tree::from_edges(next, &edges)?;
        let sensors = SensorSet::new(&tree, 0..self.m, self.k)?;
        Ok((tree, sensors))
    }
}

/// Builds the maximum-size tree for `m` sensors over `skeleton` (a path
/// when `None`).
pub fn build_optimal(m: usize, k: usize, skeleton: Option<Tree>) -> Result<(Tree, SensorSet)> {
    OptimalBlueprint::new(m, k, skeleton)?.build()
}

/// Tree on sensor indices whose edges are the sensor paths. Sensor `i` in
/// the result is the `i`-th smallest sensor id.
pub fn contract_sensor_paths(tree: &Tree, sensors: &SensorSet) -> Result<Tree> {
    sensors.check_for(tree)?;
    if sensors.is_empty() {
        return Err(TmdError::EmptySubset);
    }
    let index = |v| sensors.ids().binary_search(&v).expect("endpoint is a sensor");
    let edges: Vec<Edge> = sensor_paths(tree, sensors)
        .iter()
        .map(|p| (index(p.endpoints.0), index(p.endpoints.1)))
        .collect();
    Tree::from_edges(sensors.len(), &edges)
}
