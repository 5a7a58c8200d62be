use super::{Rewire, TransformKind, TransformPlan};
use crate::error::Result;
use crate::resolution::{require_resolving, AttractionReport, SensorSet};
use crate::tree::{Tree, Vertex};

/// Cuts out the attraction of `s`, re-hangs it from `s` as a leaf-path in
/// order of distance, and reconnects every split-off component to `s`
/// through its vertex closest to `s`.
pub fn plan_transform_a(tree: &Tree, sensors: &SensorSet, s: Vertex) -> Result<TransformPlan> {
    sensors.check_member(s)?;
    require_resolving(tree, sensors)?;
    let report = AttractionReport::compute(tree, sensors);
    let mut moved = report.single(s).to_vec();
    moved.sort_by_key(|&v| (tree.dist(s, v), v));
    Rewire {
        tree,
        kind: TransformKind::A,
        roles: None,
        moved,
        chain_root: s,
        extra_cut: None,
        hub: s,
        closest_to: s,
        bridge: None,
    }
    .plan()
}
