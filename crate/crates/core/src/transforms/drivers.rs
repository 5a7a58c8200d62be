use serde::Serialize;

use super::conditions::{leaf_path_attractions, longest_weak};
use super::{plan_transform_a, plan_transform_b, plan_transform_c, TransformKind};
use crate::error::{Result, TmdError};
use crate::resolution::{
    has_shared_strong_edge, require_resolving, sensor_path_sum, sensor_paths, verdict_unchecked,
    AttractionReport, SensorSet,
};
use crate::tree::{Edge, Tree};

/// Applies Transformation A at every sensor in ascending id order.
pub fn normalize_attractions(tree: &Tree, sensors: &SensorSet) -> Result<Tree> {
    Ok(normalize_counting(tree, sensors)?.0)
}

fn normalize_counting(tree: &Tree, sensors: &SensorSet) -> Result<(Tree, usize)> {
    require_resolving(tree, sensors)?;
    let mut current = tree.clone();
    let mut changed = 0;
    for &s in sensors.ids() {
        let plan = plan_transform_a(&current, sensors, s)?;
        if !plan.is_identity() {
            current = plan.apply(&current)?;
            changed += 1;
        }
    }
    Ok((current, changed))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShortenOutcome {
    #[serde(skip)]
    pub tree: Tree,
    pub steps: usize,
    /// Total sensor-path length before the first step and after each step.
    pub sums: Vec<usize>,
}

/// Repeats Transformation B on the longest weak sensor path until two
/// strong sensor paths share an edge.
pub fn shorten_weak_paths(tree: &Tree, sensors: &SensorSet) -> Result<ShortenOutcome> {
    require_resolving(tree, sensors)?;
    let mut current = tree.clone();
    let mut sums = vec![sensor_path_sum(&sensor_paths(&current, sensors))];
    loop {
        let paths = sensor_paths(&current, sensors);
        if has_shared_strong_edge(&paths) {
            break;
        }
        let Some(longest) = longest_weak(&paths) else {
            let steps = sums.len() - 1;
            return Err(if steps == 0 {
                TmdError::Precondition("there is no weak sensor path".into())
            } else {
                TmdError::InvalidRewrite(format!(
                    "after {steps} steps no weak path remains and no strong paths overlap"
                ))
            });
        };
        let (s0, s1) = longest.endpoints;
        current = plan_transform_b(&current, sensors, s0, s1)?.apply(&current)?;
        let sum = sensor_path_sum(&sensor_paths(&current, sensors));
        if sum >= *sums.last().unwrap() {
            return Err(TmdError::InvalidRewrite(format!(
                "total sensor-path length did not decrease ({} -> {sum})",
                sums.last().unwrap()
            )));
        }
        sums.push(sum);
    }
    Ok(ShortenOutcome { tree: current, steps: sums.len() - 1, sums })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GrowStep {
    Transform(TransformKind),
    /// A vertex appended to the leaf-path of a sensor whose attraction is
    /// smaller than `k`.
    Padding,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowOutcome {
    #[serde(skip)]
    pub tree: Tree,
    /// Number of steps that changed the tree.
    pub rewrites: usize,
    pub history: Vec<GrowStep>,
    pub budget_exhausted: bool,
}

/// Grows `tree` while keeping `sensors` resolving: normalizes attractions,
/// splits overlapping strong paths, shortens weak paths, and extends
/// leaf-paths whose sensor attracts fewer than `k` vertices. Stops when no
/// step applies or after `max_steps` rewrites (default `10 * n * |S|`).
pub fn grow_to_optimal(tree: &Tree, sensors: &SensorSet, max_steps: Option<usize>) -> Result<GrowOutcome> {
    require_resolving(tree, sensors)?;
    let budget = max_steps.unwrap_or(10 * tree.vertex_count() * sensors.len().max(1));
    let mut current = tree.clone();
    let mut history = Vec::new();
    loop {
        if history.len() >= budget {
            return Ok(GrowOutcome { tree: current, rewrites: history.len(), history, budget_exhausted: true });
        }
        let (normalized, changed) = normalize_counting(&current, sensors)?;
        history.extend(std::iter::repeat_n(GrowStep::Transform(TransformKind::A), changed));
        current = normalized;
        if history.len() >= budget {
            continue;
        }

        let report = AttractionReport::compute(&current, sensors);
        if !leaf_path_attractions(&current, sensors, &report) {
            return Err(TmdError::InvalidRewrite(
                "attractions do not form leaf-paths after normalization".into(),
            ));
        }
        let paths = sensor_paths(&current, sensors);
        if has_shared_strong_edge(&paths) {
            current = plan_transform_c(&current, sensors)?.apply(&current)?;
            history.push(GrowStep::Transform(TransformKind::C));
            continue;
        }
        if let Some(longest) = longest_weak(&paths) {
            let (s0, s1) = longest.endpoints;
            current = plan_transform_b(&current, sensors, s0, s1)?.apply(&current)?;
            history.push(GrowStep::Transform(TransformKind::B));
            continue;
        }
        match pad_leaf_path(&current, sensors, &report) {
            Some(grown) => {
                current = grown;
                history.push(GrowStep::Padding);
            }
            None => break,
        }
    }
    Ok(GrowOutcome { tree: current, rewrites: history.len(), history, budget_exhausted: false })
}

/// Appends one vertex to the end of the attraction leaf-path of the first
/// sensor attracting fewer than `k` vertices, if the result still resolves.
fn pad_leaf_path(tree: &Tree, sensors: &SensorSet, report: &AttractionReport) -> Option<Tree> {
    let n = tree.vertex_count();
    for &s in sensors.ids() {
        let attracted = report.single(s);
        if attracted.len() >= sensors.k() {
            continue;
        }
        let tip = attracted.iter().copied().max_by_key(|&v| tree.dist(s, v)).unwrap_or(s);
        let mut edges: Vec<Edge> = tree.edges();
        edges.push((tip, n));
        let grown = Tree::from_edges(n + 1, &edges).ok()?;
        if verdict_unchecked(&grown, sensors.ids(), sensors.k()).is_ok() {
            return Some(grown);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::build_optimal;
    use crate::resolution::is_resolving;

    #[test]
    fn normalization_of_six_vertex_instance() {
        let t = Tree::from_edges(6, &[(0, 1), (1, 2), (1, 3), (3, 4), (0, 5)]).unwrap();
        let s = SensorSet::new(&t, [0, 4], 2).unwrap();
        let out = normalize_attractions(&t, &s).unwrap();
        let expected = Tree::from_edges(6, &[(0, 1), (1, 3), (3, 4), (0, 5), (5, 2)]).unwrap();
        assert_eq!(out, expected);
        assert_eq!(normalize_attractions(&out, &s).unwrap(), out);
    }

    #[test]
    fn optimal_trees_are_fixed_points() {
        for m in 1..4 {
            for k in 1..5 {
                let (t, s) = build_optimal(m, k, None).unwrap();
                let g = grow_to_optimal(&t, &s, None).unwrap();
                assert_eq!(g.rewrites, 0, "m={m} k={k}: {:?}", g.history);
                assert_eq!(g.tree, t);
            }
        }
    }

    #[test]
    fn single_sensor_leaf_path_is_unchanged() {
        for k in 1..6 {
            let t = Tree::path(k + 1).unwrap();
            let s = SensorSet::new(&t, [0], k).unwrap();
            let g = grow_to_optimal(&t, &s, None).unwrap();
            assert_eq!((g.rewrites, g.tree), (0, t));
        }
    }

    #[test]
    fn p6_with_end_sensors() {
        let t = Tree::path(6).unwrap();
        let k1 = SensorSet::new(&t, [0, 5], 1).unwrap();
        assert!(matches!(grow_to_optimal(&t, &k1, None), Err(TmdError::NotResolving(_))));

        let s = SensorSet::new(&t, [0, 5], 3).unwrap();
        let g = grow_to_optimal(&t, &s, None).unwrap();
        assert!(!g.budget_exhausted);
        assert!(g.tree.vertex_count() >= 6);
        assert!(is_resolving(&g.tree, &s).unwrap().is_ok());
    }

    #[test]
    fn shortening_stops_immediately_on_overlap() {
        let t = Tree::spider(&[2, 3, 3]).unwrap();
        let s = SensorSet::new(&t, [2, 5, 8], 4).unwrap();
        if is_resolving(&t, &s).unwrap().is_ok() {
            let out = shorten_weak_paths(&t, &s).unwrap();
            assert_eq!((out.steps, out.tree), (0, t));
        }
    }
}
