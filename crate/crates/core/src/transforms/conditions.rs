use serde::Serialize;

use super::PairRoles;
use crate::error::{Result, TmdError};
use crate::resolution::{
    direct_measurers, has_shared_strong_edge, sensor_paths, shares_edge, AttractionReport,
    SensorPath, SensorSet,
};
use crate::tree::{Tree, Vertex};

/// Walks that leave `s` through one neighbor, continue through degree-2
/// vertices and end at a leaf. Each walk excludes `s`.
pub fn leaf_walks(tree: &Tree, s: Vertex) -> Vec<Vec<Vertex>> {
    let mut walks = Vec::new();
    for &first in tree.neighbors(s) {
        let mut walk = vec![first];
        let (mut prev, mut cur) = (s, first);
        while tree.degree(cur) == 2 {
            let next = tree.neighbors(cur).iter().copied().find(|&w| w != prev).unwrap();
            walk.push(next);
            prev = cur;
            cur = next;
        }
        if tree.degree(cur) == 1 {
            walks.push(walk);
        }
    }
    walks
}

fn sensor_free_walks(tree: &Tree, sensors: &SensorSet, s: Vertex) -> Vec<Vec<Vertex>> {
    let mut walks = leaf_walks(tree, s);
    walks.retain(|w| w.iter().all(|&v| !sensors.contains(v)));
    walks
}

/// `set` lies within a single sensor-free leaf-path starting at `s`.
pub fn attraction_in_leaf_path(tree: &Tree, sensors: &SensorSet, s: Vertex, set: &[Vertex]) -> bool {
    set.is_empty()
        || sensor_free_walks(tree, sensors, s).iter().any(|w| set.iter().all(|v| w.contains(v)))
}

/// `set` is exactly the vertex set of a sensor-free leaf-path starting at `s`.
pub fn is_leaf_path_from(tree: &Tree, sensors: &SensorSet, s: Vertex, set: &[Vertex]) -> bool {
    set.is_empty()
        || sensor_free_walks(tree, sensors, s)
            .iter()
            .any(|w| w.len() == set.len() && set.iter().all(|v| w.contains(v)))
}

/// Which preconditions of the path-shortening and overlap-splitting
/// transformations hold, with the pairs they would act on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    /// Every single-sensor attraction sits inside one leaf-path from its sensor.
    pub attractions_are_leaf_paths: bool,
    /// No two strong sensor paths share an edge.
    pub strong_paths_edge_disjoint: bool,
    pub weak_path_exists: bool,
    /// Longest weak sensor path, ties to the smallest endpoint ids.
    pub longest_weak_path: Option<(Vertex, Vertex)>,
    /// Overlapping strong paths selected for splitting.
    pub overlap: Option<PairRoles>,
}

pub fn check_conditions(tree: &Tree, sensors: &SensorSet) -> Result<ConditionReport> {
    sensors.check_for(tree)?;
    let report = AttractionReport::compute(tree, sensors);
    let paths = sensor_paths(tree, sensors);
    let shared = has_shared_strong_edge(&paths);
    let longest = longest_weak(&paths);
    Ok(ConditionReport {
        attractions_are_leaf_paths: leaf_path_attractions(tree, sensors, &report),
        strong_paths_edge_disjoint: !shared,
        weak_path_exists: longest.is_some(),
        longest_weak_path: longest.map(|p| p.endpoints),
        overlap: if shared { select_overlap(tree, sensors, &paths).ok() } else { None },
    })
}

pub(crate) fn leaf_path_attractions(tree: &Tree, sensors: &SensorSet, report: &AttractionReport) -> bool {
    sensors.ids().iter().all(|&s| attraction_in_leaf_path(tree, sensors, s, report.single(s)))
}

fn path_key(p: &SensorPath) -> (usize, Vertex, Vertex) {
    (p.length(), p.endpoints.0, p.endpoints.1)
}

pub(crate) fn longest_weak(paths: &[SensorPath]) -> Option<&SensorPath> {
    paths
        .iter()
        .filter(|p| !p.strong)
        .min_by_key(|p| (std::cmp::Reverse(p.length()), p.endpoints.0, p.endpoints.1))
}

/// Picks the shortest strong path `s0 - s0'` that overlaps another strong
/// path, then its shortest overlapping partner `s0 - s1`, skipping choices
/// that violate `q <= d(s0,s0') - q <= d(s0,s1) - q` or that have a closer
/// third sensor directly measuring `w_q`.
pub(crate) fn select_overlap(tree: &Tree, sensors: &SensorSet, paths: &[SensorPath]) -> Result<PairRoles> {
    let strong: Vec<&SensorPath> = paths.iter().filter(|p| p.strong).collect();
    let overlaps = |p: &SensorPath| strong.iter().any(|r| *r != p && shares_edge(p, r));
    let mut sharing: Vec<&SensorPath> = strong.iter().copied().filter(|p| overlaps(p)).collect();
    if sharing.is_empty() {
        return Err(TmdError::Precondition("no two strong sensor paths share an edge".into()));
    }
    sharing.sort_by_key(|p| path_key(p));
    let dm = direct_measurers(tree, sensors);
    for p in &sharing {
        let mut partners: Vec<&SensorPath> = strong
            .iter()
            .copied()
            .filter(|r| {
                *r != *p
                    && shares_edge(p, r)
                    && (r.has_endpoint(p.endpoints.0) || r.has_endpoint(p.endpoints.1))
            })
            .collect();
        partners.sort_by_key(|r| path_key(r));
        for r in partners {
            let s0 = if r.has_endpoint(p.endpoints.0) { p.endpoints.0 } else { p.endpoints.1 };
            let (s0_prime, s1) = (p.other_endpoint(s0), r.other_endpoint(s0));
            let to_prime = tree.path_unchecked(s0, s0_prime);
            let to_s1 = tree.path_unchecked(s0, s1);
            let q = (1..to_prime.len().min(to_s1.len()))
                .take_while(|&i| to_prime[i] == to_s1[i])
                .count();
            let (d0, d1) = (to_prime.len() - 1, to_s1.len() - 1);
            if q == 0 || !(q <= d0 - q && d0 <= d1) {
                continue;
            }
            let w_q = to_s1[q];
            let closer_third = dm[w_q].iter().any(|&t| {
                t != s0 && t != s0_prime && t != s1 && tree.dist(t, w_q) + q < d1
            });
            if closer_third {
                continue;
            }
            return Ok(PairRoles {
                s0,
                s0_prime,
                s1,
                q,
                w: to_s1[1..=q].to_vec(),
                u_next: to_s1[q + 1],
            });
        }
    }
    Err(TmdError::Precondition("no overlapping strong pair satisfies the selection ordering".into()))
}
