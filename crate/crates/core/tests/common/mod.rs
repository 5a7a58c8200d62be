#![allow(dead_code)]

pub mod checks;

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tmd_core::resolution::{is_resolving, sensor_paths, AttractionReport};
use tmd_core::transforms::{normalize_attractions, TransformPlan};
use tmd_core::{Edge, SensorSet, Tree, Vertex};

/// Sensors joined by paths of length `1..=2k+1` that branch off anywhere in
/// the tree built so far, with random decorations. Returns `None` when the
/// sensors do not resolve the result.
pub fn random_sensor_tree(k: usize, seed: u64) -> Option<(Tree, SensorSet)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = Builder::new();
    let m = rng.gen_range(2..=5);
    for _ in 1..m {
        let from = rng.gen_range(0..b.n);
        let len = rng.gen_range(1..=2 * k + 1);
        b.sensor_at_end(from, len);
    }
    b.decorate(&mut rng, k);
    b.finish(k)
}

/// A chain of one to three weak sensor paths, each of length `k+2..=2k+1`,
/// with a sensor branching off near the start of every weak path and
/// sometimes near its end, plus random extra sensors and decorations.
pub fn planted_weak_path(k: usize, seed: u64) -> Option<(Tree, SensorSet)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = Builder::new();
    let mut from = 0;
    for _ in 0..rng.gen_range(1..=3) {
        let len = rng.gen_range(k + 2..=2 * k + 1);
        let first = b.n;
        let end = b.sensor_at_end(from, len);
        let path: Vec<Vertex> = std::iter::once(from).chain(first..first + len).collect();
        debug_assert_eq!(path[len], end);
        let q = rng.gen_range(1..=k);
        let j = rng.gen_range(1..=k);
        if len - j <= q {
            return None;
        }
        let b0 = rng.gen_range(1..=k + 1 - q);
        b.sensor_at_end(path[q], b0);
        if rng.gen_bool(0.5) {
            let b1 = rng.gen_range(1..=k + 1 - j);
            b.sensor_at_end(path[len - j], b1);
        }
        from = end;
    }
    for _ in 0..rng.gen_range(0..=2) {
        let from = rng.gen_range(0..b.n);
        let l = rng.gen_range(1..=2 * k + 1);
        b.sensor_at_end(from, l);
    }
    b.decorate(&mut rng, k);
    b.finish(k)
}

struct Builder {
    edges: Vec<Edge>,
    sensors: Vec<Vertex>,
    n: usize,
}

impl Builder {
    fn new() -> Self {
        Builder { edges: Vec::new(), sensors: vec![0], n: 1 }
    }

    fn path_from(&mut self, from: Vertex, len: usize) -> Vertex {
        let mut prev = from;
        for _ in 0..len {
            self.edges.push((prev, self.n));
            prev = self.n;
            self.n += 1;
        }
        prev
    }

    fn sensor_at_end(&mut self, from: Vertex, len: usize) -> Vertex {
        let s = self.path_from(from, len);
        self.sensors.push(s);
        s
    }

    /// Short hanging paths on some non-sensors, and a leaf-path of random
    /// length `0..=k` at each sensor.
    fn decorate(&mut self, rng: &mut ChaCha8Rng, k: usize) {
        let core = self.n;
        for v in 0..core {
            if !self.sensors.contains(&v) && rng.gen_bool(0.3) {
                let len = rng.gen_range(1..=k.div_ceil(2));
                self.path_from(v, len);
            }
        }
        for s in self.sensors.clone() {
            let len = rng.gen_range(0..=k);
            self.path_from(s, len);
        }
    }

    fn finish(self, k: usize) -> Option<(Tree, SensorSet)> {
        let tree = Tree::from_edges(self.n, &self.edges).ok()?;
        let set = SensorSet::new(&tree, self.sensors, k).ok()?;
        is_resolving(&tree, &set).ok()?.is_ok().then_some((tree, set))
    }
}

/// [`random_sensor_tree`] followed by attraction normalization.
pub fn normalized_sensor_tree(k: usize, seed: u64) -> Option<(Tree, SensorSet)> {
    let (t, s) = random_sensor_tree(k, seed)?;
    let t = normalize_attractions(&t, &s).ok()?;
    Some((t, s))
}

pub fn attractions(tree: &Tree, sensors: &SensorSet) -> BTreeMap<Vec<Vertex>, Vec<Vertex>> {
    AttractionReport::compute(tree, sensors).attractions
}

/// Sensors inside component `i` (for `i >= first`) are at distance at least
/// `k + 1` from every vertex outside it, in both trees.
pub fn components_isolated(
    before: &Tree,
    after: &Tree,
    sensors: &SensorSet,
    plan: &TransformPlan,
    first: usize,
) -> bool {
    let k = sensors.k();
    plan.components.iter().skip(first).all(|comp| {
        comp.iter().filter(|&&v| sensors.contains(v)).all(|&s| {
            let outside = |t: &Tree| t.vertices().filter(|v| comp.binary_search(v).is_err()).collect::<Vec<_>>();
            outside(before).iter().all(|&y| before.dist(s, y) > k)
                && outside(after).iter().all(|&y| after.dist(s, y) > k)
        })
    })
}

/// Map from sensor pair to sensor-path length.
pub fn path_lengths(tree: &Tree, sensors: &SensorSet) -> BTreeMap<(Vertex, Vertex), usize> {
    sensor_paths(tree, sensors).iter().map(|p| (p.endpoints, p.length())).collect()
}
