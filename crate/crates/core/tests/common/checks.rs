//! Per-application checks of the transformation lemmas, shared by the
//! integration suites and the acceptance harness. Each check returns the
//! rewritten tree or a description of the first violated property.

use tmd_core::resolution::{
    has_shared_strong_edge, is_resolving, sensor_path_sum, sensor_paths, AttractionReport,
};
use tmd_core::transforms::{
    check_conditions, is_leaf_path_from, plan_transform_a, plan_transform_b, plan_transform_c,
    star_attraction,
};
use tmd_core::{SensorSet, Tree, Vertex};

use super::{components_isolated, path_lengths};

pub type Check<T> = std::result::Result<T, String>;

fn resolving(tree: &Tree, sensors: &SensorSet) -> Check<()> {
    match is_resolving(tree, sensors).map_err(|e| e.to_string())? {
        v if v.is_ok() => Ok(()),
        v => Err(format!("output is not resolving: {v}")),
    }
}

fn is_subset(small: &[Vertex], big: &[Vertex]) -> bool {
    small.iter().all(|v| big.contains(v))
}

/// Transformation A at `s` with the four properties of its lemma and the
/// isolation of every split-off component.
pub fn transform_a(tree: &Tree, sensors: &SensorSet, s: Vertex) -> Check<Tree> {
    let before = AttractionReport::compute(tree, sensors);
    let plan = plan_transform_a(tree, sensors, s).map_err(|e| format!("plan A at {s}: {e}"))?;
    let out = plan.apply(tree).map_err(|e| format!("apply A at {s}: {e}"))?;
    if out.vertex_count() != tree.vertex_count() {
        return Err("A changed the vertex count".into());
    }
    resolving(&out, sensors)?;
    let after = AttractionReport::compute(&out, sensors);
    if after.single(s) != before.single(s) {
        return Err(format!("A({s}) changed: {:?} -> {:?}", before.single(s), after.single(s)));
    }
    if !is_leaf_path_from(&out, sensors, s, after.single(s)) {
        return Err(format!("A({s}) = {:?} is not a leaf-path after A", after.single(s)));
    }
    for &t in sensors.ids().iter().filter(|&&t| t != s) {
        let (old, new) = (before.single(t), after.single(t));
        if is_leaf_path_from(tree, sensors, t, old) {
            if old != new || !is_leaf_path_from(&out, sensors, t, new) {
                return Err(format!("leaf-path attraction of {t} disturbed: {old:?} -> {new:?}"));
            }
        } else if !is_subset(new, old) {
            return Err(format!("attraction of {t} grew: {old:?} -> {new:?}"));
        }
    }
    if !components_isolated(tree, &out, sensors, &plan, 1) {
        return Err("a sensor in a split-off component reaches outside it".into());
    }
    Ok(out)
}

/// Applies A at every sensor in id order, checking each step. Returns the
/// normalized tree and the number of non-identity applications.
pub fn normalize_checked(tree: &Tree, sensors: &SensorSet) -> Check<(Tree, usize)> {
    let mut current = tree.clone();
    let mut changed = 0;
    for &s in sensors.ids() {
        let next = transform_a(&current, sensors, s)?;
        if next != current {
            changed += 1;
        }
        current = next;
    }
    Ok((current, changed))
}

/// One shortening step on the longest weak sensor path, checked against
/// all five parts of the transformation's lemma and the sensor-path sum.
pub fn transform_b(tree: &Tree, sensors: &SensorSet) -> Check<Tree> {
    let cond = check_conditions(tree, sensors).map_err(|e| e.to_string())?;
    let (s0, s1) = cond.longest_weak_path.ok_or("no weak sensor path")?;
    let k = sensors.k();
    let plan = plan_transform_b(tree, sensors, s0, s1).map_err(|e| format!("plan B {s0}-{s1}: {e}"))?;
    let roles = plan.roles.clone().ok_or("B plan without roles")?;
    if plan.moved_vertices.len() > k.saturating_sub(roles.q) {
        return Err(format!("{} type-q vertices exceed k - q", plan.moved_vertices.len()));
    }
    let out = plan.apply(tree).map_err(|e| format!("apply B {s0}-{s1}: {e}"))?;
    if out.vertex_count() != tree.vertex_count() {
        return Err("B changed the vertex count".into());
    }
    resolving(&out, sensors)?;

    let (old_a, new_a) = (AttractionReport::compute(tree, sensors), AttractionReport::compute(&out, sensors));
    for &s in sensors.ids() {
        if old_a.single(s) != new_a.single(s) || !is_leaf_path_from(&out, sensors, s, new_a.single(s)) {
            return Err(format!("A({s}) changed or left its leaf-path: {:?} -> {:?}", old_a.single(s), new_a.single(s)));
        }
    }

    let (old_p, new_p) = (path_lengths(tree, sensors), path_lengths(&out, sensors));
    for (pair, len) in &new_p {
        match old_p.get(pair) {
            None => return Err(format!("sensor path {pair:?} appeared")),
            Some(old) if len > old => return Err(format!("sensor path {pair:?} grew {old} -> {len}")),
            _ => {}
        }
    }
    let key = (s0.min(s1), s0.max(s1));
    match new_p.get(&key) {
        Some(&len) if len < old_p[&key] => {
            let strong = len <= k + 1;
            if strong && !has_shared_strong_edge(&sensor_paths(&out, sensors)) {
                return Err(format!("{s0}-{s1} became strong without an overlapping strong pair"));
            }
        }
        other => return Err(format!("{s0}-{s1} did not shrink as a sensor path: {other:?}")),
    }
    let (sum0, sum1) = (sensor_path_sum(&sensor_paths(tree, sensors)), sensor_path_sum(&sensor_paths(&out, sensors)));
    if sum1 >= sum0 {
        return Err(format!("sensor-path sum did not decrease: {sum0} -> {sum1}"));
    }

    for (i, comp) in plan.components.iter().enumerate().skip(1) {
        for &t in comp.iter().filter(|&&v| sensors.contains(v)) {
            for (j, other) in plan.components.iter().enumerate().skip(1) {
                if j == i {
                    continue;
                }
                if let Some(&y) = other.iter().find(|&&y| tree.dist(t, y) <= k || !out.on_path(s0, t, y)) {
                    return Err(format!("sensor {t} in component {i} communicates with {y}"));
                }
            }
        }
    }
    Ok(out)
}

/// Repeated shortening until two strong sensor paths overlap. Returns the
/// final tree and the number of steps.
pub fn shorten_checked(tree: &Tree, sensors: &SensorSet) -> Check<(Tree, usize)> {
    let mut current = tree.clone();
    let mut steps = 0;
    while !has_shared_strong_edge(&sensor_paths(&current, sensors)) {
        current = transform_b(&current, sensors)?;
        steps += 1;
        if steps > tree.vertex_count() * tree.vertex_count() {
            return Err("shortening did not terminate".into());
        }
    }
    Ok((current, steps))
}

/// Transformation C on the selected overlapping pair: one new vertex,
/// resolution kept, the star-attraction bound, and isolation of every
/// component past the bridge.
pub fn transform_c(tree: &Tree, sensors: &SensorSet) -> Check<Tree> {
    let plan = plan_transform_c(tree, sensors).map_err(|e| format!("plan C: {e}"))?;
    let roles = plan.roles.clone().ok_or("C plan without roles")?;
    let star = star_attraction(tree, sensors, roles.w_q()).map_err(|e| e.to_string())?;
    let d0 = tree.dist(roles.s0, roles.s0_prime);
    if star.len() + d0 > sensors.k() + roles.q {
        return Err(format!("|A*| = {} exceeds k - (d0 - q) with d0 = {d0}, q = {}", star.len(), roles.q));
    }
    let out = plan.apply(tree).map_err(|e| format!("apply C: {e}"))?;
    if out.vertex_count() != tree.vertex_count() + 1 {
        return Err(format!("C produced {} vertices from {}", out.vertex_count(), tree.vertex_count()));
    }
    resolving(&out, sensors)?;
    if !components_isolated(tree, &out, sensors, &plan, 2) {
        return Err("a sensor in a split-off component reaches outside it".into());
    }
    Ok(out)
}
