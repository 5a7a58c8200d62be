use super::conditions::{leaf_path_attractions, select_overlap};
use super::{Rewire, TransformKind, TransformPlan};
use crate::error::{Result, TmdError};
use crate::resolution::{require_resolving, sensor_paths, AttractionReport, SensorSet};
use crate::tree::{Tree, Vertex};

/// Non-sensors other than `w` that every sensor either fails to measure or
/// reaches through `w`, ordered by distance from `w`.
pub fn star_attraction(tree: &Tree, sensors: &SensorSet, w: Vertex) -> Result<Vec<Vertex>> {
    tree.check_vertex(w)?;
    sensors.check_for(tree)?;
    let k = sensors.k();
    let mut out: Vec<Vertex> = tree
        .vertices()
        .filter(|&x| x != w && !sensors.contains(x))
        .filter(|&x| sensors.ids().iter().all(|&s| tree.dist(s, x) > k || tree.on_path(w, s, x)))
        .collect();
    out.sort_by_key(|&x| (tree.dist(w, x), x));
    Ok(out)
}

/// Splits the selected pair of overlapping strong sensor paths: the edge
/// `w_q - u_{q+1}` is cut, the vertices measured only through `w_q` are
/// re-hung as a leaf-path from `w_q`, and a new vertex joins `s0` to
/// `u_{q+1}`. Other split-off components reconnect to `s0`.
pub fn plan_transform_c(tree: &Tree, sensors: &SensorSet) -> Result<TransformPlan> {
    require_resolving(tree, sensors)?;
    let report = AttractionReport::compute(tree, sensors);
    if !leaf_path_attractions(tree, sensors, &report) {
        return Err(TmdError::Precondition(
            "some single-sensor attraction is not inside a leaf-path".into(),
        ));
    }
    let roles = select_overlap(tree, sensors, &sensor_paths(tree, sensors))?;
    let w_q = roles.w_q();
    let moved = star_attraction(tree, sensors, w_q)?;
    let reach = (sensors.k() + roles.q).checked_sub(tree.dist(roles.s0, roles.s0_prime));
    let distances: Vec<usize> = moved.iter().map(|&x| tree.dist(w_q, x)).collect();
    let distinct = distances.windows(2).all(|p| p[0] < p[1]);
    if reach.is_none_or(|r| moved.len() > r) || !distinct {
        return Err(TmdError::Precondition(format!(
            "vertices measured only through {w_q} need distinct distances at most {}, found {distances:?}",
            reach.unwrap_or(0)
        )));
    }
    let (s0, s1, u_next) = (roles.s0, roles.s1, roles.u_next);
    Rewire {
        tree,
        kind: TransformKind::C,
        roles: Some(roles),
        moved,
        chain_root: w_q,
        extra_cut: Some((w_q, u_next)),
        hub: s0,
        closest_to: w_q,
        bridge: Some((s1, u_next)),
    }
    .plan()
}
