use std::collections::BTreeMap;

use serde::Serialize;

use super::{Tree, Vertex};

/// A maximal run of degree-2 vertices ending in a leaf, hanging from an
/// anchor of degree at least 3.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeafPath {
    pub anchor: Vertex,
    /// `x_1, ..., x_l`, ordered from the anchor outward.
    pub vertices: Vec<Vertex>,
}

impl LeafPath {
    /// Number of edges, which equals the number of non-anchor vertices.
    pub fn length(&self) -> usize {
        self.vertices.len()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SupportProfile {
    /// Anchors of at least two leaf-paths, ascending.
    pub support_vertices: Vec<Vertex>,
    pub leaf_paths: BTreeMap<Vertex, Vec<LeafPath>>,
}

impl SupportProfile {
    /// Total number of non-anchor vertices on leaf-paths of support vertices.
    pub fn leaf_vertex_total(&self) -> usize {
        self.leaf_paths.values().flatten().map(LeafPath::length).sum()
    }

    pub fn lengths(&self, v: Vertex) -> Vec<usize> {
        self.leaf_paths
            .get(&v)
            .map(|ps| ps.iter().map(LeafPath::length).collect())
            .unwrap_or_default()
    }
}

/// Every leaf-path of the tree, grouped by anchor, ascending by leaf id.
pub(crate) fn all_leaf_paths(tree: &Tree) -> BTreeMap<Vertex, Vec<LeafPath>> {
    let mut by_anchor: BTreeMap<Vertex, Vec<LeafPath>> = BTreeMap::new();
    for leaf in tree.vertices().filter(|&v| tree.is_leaf(v)) {
        let mut walk = vec![leaf];
        let mut prev = leaf;
        let mut cur = tree.neighbors(leaf)[0];
        while tree.degree(cur) == 2 {
            walk.push(cur);
            let next = tree.neighbors(cur).iter().copied().find(|&w| w != prev).unwrap();
            prev = cur;
            cur = next;
        }
        if tree.degree(cur) >= 3 {
            walk.reverse();
            by_anchor.entry(cur).or_default().push(LeafPath { anchor: cur, vertices: walk });
        }
    }
    by_anchor
}

/// Support vertices and their leaf-paths. A tree without a vertex of
/// degree 3 or more yields an empty profile.
pub fn support_profile(tree: &Tree) -> SupportProfile {
    let leaf_paths: BTreeMap<_, _> =
        all_leaf_paths(tree).into_iter().filter(|(_, paths)| paths.len() >= 2).collect();
    SupportProfile { support_vertices: leaf_paths.keys().copied().collect(), leaf_paths }
}
