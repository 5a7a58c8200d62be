use std::collections::HashSet;

use super::conditions::{leaf_path_attractions, longest_weak};
use super::{PairRoles, Rewire, TransformKind, TransformPlan};
use crate::error::{Result, TmdError};
use crate::resolution::geometry::type_height_unchecked;
use crate::resolution::{
    has_shared_strong_edge, require_resolving, sensor_paths, AttractionReport, SensorSet,
};
use crate::tree::{normalize_edge, Tree, Vertex};

fn precondition(msg: impl Into<String>) -> TmdError {
    TmdError::Precondition(msg.into())
}

/// Shortens the weak sensor path `s0 - s1`, which must be one of the
/// longest. The type-`q` vertices relative to `(s0, s0')` are re-hung as a
/// single leaf-path from `w_q`, the edge `w_q - u_{q+1}` is cut, and the
/// split-off components reconnect to `s0`.
pub fn plan_transform_b(tree: &Tree, sensors: &SensorSet, s0: Vertex, s1: Vertex) -> Result<TransformPlan> {
    sensors.check_member(s0)?;
    sensors.check_member(s1)?;
    if s0 == s1 {
        return Err(TmdError::DegeneratePair);
    }
    require_resolving(tree, sensors)?;
    let k = sensors.k();
    let report = AttractionReport::compute(tree, sensors);
    if !leaf_path_attractions(tree, sensors, &report) {
        return Err(precondition("some single-sensor attraction is not inside a leaf-path"));
    }
    let paths = sensor_paths(tree, sensors);
    if has_shared_strong_edge(&paths) {
        return Err(precondition("two strong sensor paths share an edge"));
    }
    let longest = longest_weak(&paths).ok_or_else(|| precondition("there is no weak sensor path"))?;
    let pair = normalize_edge(s0, s1);
    let target = paths
        .iter()
        .find(|p| p.endpoints == pair)
        .ok_or_else(|| precondition(format!("{s0}-{s1} is not a sensor path")))?;
    if target.strong || target.length() < longest.length() {
        return Err(precondition(format!("{s0}-{s1} is not a longest weak sensor path")));
    }

    let to_s1 = tree.path_unchecked(s0, s1);
    let w1 = to_s1[1];
    let others: Vec<Vertex> =
        report.direct_measurers[w1].iter().copied().filter(|&t| t != s0).collect();
    let s0_prime = match others.as_slice() {
        [t] if *t != s1 => *t,
        _ => {
            return Err(precondition(format!(
                "{w1} must be directly measured by exactly one sensor besides {s0}, found {others:?}"
            )))
        }
    };
    let to_prime = tree.path_unchecked(s0, s0_prime);
    let q = (1..to_prime.len().min(to_s1.len())).take_while(|&i| to_prime[i] == to_s1[i]).count();
    let d0 = to_prime.len() - 1;
    let (w_q, u_next) = (to_s1[q], to_s1[q + 1]);

    for &t in sensors.ids().iter().filter(|&&t| t != s0 && t != s0_prime) {
        let typ = type_height_unchecked(tree, s0, s0_prime, t).typ;
        if typ == q && !tree.on_path(u_next, s0, t) {
            return Err(precondition(format!("sensor {t} has type {q} but lies off the edge {w_q}-{u_next}")));
        }
        if typ != 0 && typ != q && typ != d0 {
            return Err(precondition(format!("sensor {t} has type {typ} relative to ({s0}, {s0_prime})")));
        }
    }

    let pair_attraction: HashSet<Vertex> = report.get(&sorted(s0, s0_prime)).iter().copied().collect();
    let mut v1 = Vec::new();
    let mut v2 = Vec::new();
    for v in tree.vertices().filter(|&v| v != s0 && v != s0_prime) {
        let th = type_height_unchecked(tree, s0, s0_prime, v);
        if th.typ != q || th.hgt == 0 {
            continue;
        }
        if !tree.on_path(u_next, w_q, v) {
            v2.push((th.hgt, v));
        } else if pair_attraction.contains(&v) {
            v1.push((th.hgt, v));
        }
    }
    v1.sort_unstable();
    v2.sort_unstable();
    let budget = k.saturating_sub(q);
    let mut heights: Vec<usize> = v1.iter().chain(&v2).map(|&(h, _)| h).collect();
    heights.sort_unstable();
    heights.dedup();
    if v1.len() + v2.len() > budget || heights.len() != v1.len() + v2.len() || heights.iter().any(|&h| h > budget) {
        return Err(precondition(format!(
            "type-{q} vertices need distinct heights at most {budget}, found {:?}",
            v1.iter().chain(&v2).collect::<Vec<_>>()
        )));
    }

    let moved = v1.into_iter().chain(v2).map(|(_, v)| v).collect();
    Rewire {
        tree,
        kind: TransformKind::B,
        roles: Some(PairRoles { s0, s0_prime, s1, q, w: to_s1[1..=q].to_vec(), u_next }),
        moved,
        chain_root: w_q,
        extra_cut: Some((w_q, u_next)),
        hub: s0,
        closest_to: s0,
        bridge: None,
    }
    .plan()
}

fn sorted(a: Vertex, b: Vertex) -> [Vertex; 2] {
    if a < b {
        [a, b]
    } else {
        [b, a]
    }
}
