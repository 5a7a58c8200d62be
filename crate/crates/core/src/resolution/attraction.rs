use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::{direct_measurers, SensorSet};
use crate::error::Result;
use crate::tree::{Tree, Vertex};

/// Direct measurers of every vertex and the attraction of every sensor
/// subset that occurs as a direct-measurer set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AttractionReport {
    pub direct_measurers: Vec<Vec<Vertex>>,
    /// Keyed by sorted sensor ids. Subsets with empty attraction are omitted.
    pub attractions: BTreeMap<Vec<Vertex>, Vec<Vertex>>,
    #[serde(skip)]
    is_sensor: Vec<bool>,
    #[serde(skip)]
    k: usize,
}

impl AttractionReport {
    pub fn compute(tree: &Tree, sensors: &SensorSet) -> Self {
        let direct_measurers = direct_measurers(tree, sensors);
        let mut is_sensor = vec![false; tree.vertex_count()];
        for &s in sensors.ids() {
            is_sensor[s] = true;
        }
        let mut report = AttractionReport {
            direct_measurers,
            attractions: BTreeMap::new(),
            is_sensor,
            k: sensors.k(),
        };
        let mut keys: Vec<Vec<Vertex>> = tree
            .vertices()
            .filter(|&v| !report.is_sensor[v] && !report.direct_measurers[v].is_empty())
            .map(|v| report.direct_measurers[v].clone())
            .collect();
        keys.sort();
        keys.dedup();
        for key in keys {
            let members = report.attraction_of(tree, &key);
            if !members.is_empty() {
                report.attractions.insert(key, members);
            }
        }
        report
    }

    /// Attraction of a sorted subset.
    pub fn get(&self, subset: &[Vertex]) -> &[Vertex] {
        self.attractions.get(subset).map_or(&[], Vec::as_slice)
    }

    /// Single-sensor attraction `A(s)`.
    pub fn single(&self, s: Vertex) -> &[Vertex] {
        self.get(&[s])
    }

    fn non_sensors_within<'a>(
        &'a self,
        tree: &Tree,
        subset: &'a [Vertex],
    ) -> impl Iterator<Item = Vertex> + 'a {
        (0..tree.vertex_count())
            .filter(move |&v| !self.is_sensor[v] && is_sorted_subset(&self.direct_measurers[v], subset))
    }

    fn codes(&self, tree: &Tree, subset: &[Vertex]) -> HashMap<Vec<usize>, usize> {
        let mut counts = HashMap::new();
        for y in self.non_sensors_within(tree, subset) {
            *counts.entry(self.code(tree, subset, y)).or_insert(0) += 1;
        }
        counts
    }

    fn code(&self, tree: &Tree, subset: &[Vertex], x: Vertex) -> Vec<usize> {
        subset.iter().map(|&s| tree.dist(s, x).min(self.k + 1)).collect()
    }

    fn attraction_of(&self, tree: &Tree, subset: &[Vertex]) -> Vec<Vertex> {
        let counts = self.codes(tree, subset);
        tree.vertices()
            .filter(|&x| !self.is_sensor[x] && self.direct_measurers[x] == subset)
            .filter(|&x| counts[&self.code(tree, subset, x)] == 1)
            .collect()
    }

    /// Resolved-within area `M(subset)` for a sorted subset.
    pub fn resolved_within(&self, tree: &Tree, subset: &[Vertex]) -> Vec<Vertex> {
        let counts = self.codes(tree, subset);
        self.non_sensors_within(tree, subset)
            .filter(|&x| subset.iter().any(|&s| tree.dist(s, x) <= self.k))
            .filter(|&x| counts[&self.code(tree, subset, x)] == 1)
            .collect()
    }
}

fn is_sorted_subset(small: &[Vertex], big: &[Vertex]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.by_ref().any(|y| y == x))
}

/// `A(subset)`: non-sensors whose direct measurers are exactly `subset` and
/// which `subset` separates from every non-sensor measured only through it.
///
/// `sensors` need not be resolving; attractions are then computed
/// mechanically and may come out empty.
pub fn attraction(tree: &Tree, sensors: &SensorSet, subset: &[Vertex]) -> Result<Vec<Vertex>> {
    let subset = sensors.subset(subset)?;
    sensors.check_for(tree)?;
    let report = AttractionReport::compute(tree, sensors);
    Ok(report.get(&subset).to_vec())
}

/// `M(subset)`: non-sensors measured by some member of `subset`, directly
/// measured by nothing outside it, and separated by `subset` from every other
/// such vertex.
pub fn resolved_within(tree: &Tree, sensors: &SensorSet, subset: &[Vertex]) -> Result<Vec<Vertex>> {
    let subset = sensors.subset(subset)?;
    sensors.check_for(tree)?;
    let report = AttractionReport::compute(tree, sensors);
    Ok(report.resolved_within(tree, &subset))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::TmdError;

    /// s=0, b1=1, z2=2, c=3, s2=4, a1=5 with edges s-b1, b1-z2, b1-c, c-s2, s-a1.
    fn six_vertex_instance() -> (Tree, SensorSet) {
        let t = Tree::from_edges(6, &[(0, 1), (1, 2), (1, 3), (3, 4), (0, 5)]).unwrap();
        let s = SensorSet::new(&t, [0, 4], 2).unwrap();
        (t, s)
    }

    #[test]
    fn attractions_of_six_vertex_instance() {
        let (t, s) = six_vertex_instance();
        assert_eq!(attraction(&t, &s, &[0]).unwrap(), vec![2, 5]);
        assert_eq!(attraction(&t, &s, &[0, 4]).unwrap(), vec![1, 3]);
        assert_eq!(attraction(&t, &s, &[4]).unwrap(), Vec::<Vertex>::new());
        assert_eq!(resolved_within(&t, &s, &[0, 4]).unwrap(), vec![1, 2, 3, 5]);
    }

    #[test]
    fn single_sensor_with_its_leaf_path() {
        let t = Tree::path(4).unwrap();
        let s = SensorSet::new(&t, [0], 3).unwrap();
        assert_eq!(attraction(&t, &s, &[0]).unwrap(), vec![1, 2, 3]);
    }

    #[test]
    fn subset_must_be_sensors() {
        let (t, s) = six_vertex_instance();
        assert_eq!(attraction(&t, &s, &[1]), Err(TmdError::NotASensor(1)));
        assert_eq!(attraction(&t, &s, &[]), Err(TmdError::EmptySubset));
    }

    #[test]
    fn non_resolving_sets_are_computed_mechanically() {
        // center sensor on a star: leaves are indistinguishable, attraction is empty
        let t = Tree::star(3).unwrap();
        let s = SensorSet::new(&t, [0], 1).unwrap();
        assert!(attraction(&t, &s, &[0]).unwrap().is_empty());
    }

    #[test]
    fn full_set_resolved_within_is_complement() {
        let (t, s) = six_vertex_instance();
        let m = resolved_within(&t, &s, s.ids()).unwrap();
        let complement: Vec<_> = t.vertices().filter(|&v| !s.contains(v)).collect();
        assert_eq!(m, complement);
    }

    #[test]
    fn sorted_subset_check() {
        assert!(is_sorted_subset(&[], &[1]));
        assert!(is_sorted_subset(&[1, 3], &[0, 1, 2, 3]));
        assert!(!is_sorted_subset(&[1, 4], &[0, 1, 2, 3]));
    }
}
