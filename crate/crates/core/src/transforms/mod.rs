//! Edge-rewiring transformations that keep a sensor set resolving.
//!
//! Each transformation is split into a pure planning step, which computes
//! the edges to cut (`E1`), the new leaf-path (`E2`) and the reconnecting
//! edges (`E3`), and [`TransformPlan::apply`], which performs the rewrite
//! `(E \ E1) ∪ E2 ∪ E3` on the exact tree the plan was computed for.
//!
//! * A gathers the attraction of one sensor into a leaf-path hanging from it.
//! * B shortens a longest weak sensor path.
//! * C separates two overlapping strong sensor paths and adds a vertex.

mod a;
mod b;
mod c;
mod conditions;
mod drivers;

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Result, TmdError};
use crate::tree::{normalize_edge, Edge, Tree, Vertex};

pub use a::plan_transform_a;
pub use b::plan_transform_b;
pub use c::{plan_transform_c, star_attraction};
pub use conditions::{
    attraction_in_leaf_path, check_conditions, is_leaf_path_from, leaf_walks, ConditionReport,
};
pub use drivers::{
    grow_to_optimal, normalize_attractions, shorten_weak_paths, GrowOutcome, GrowStep,
    ShortenOutcome,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TransformKind {
    A,
    B,
    C,
}

/// Named vertices of an overlapping or weak sensor path configuration:
/// `s0 - w_1 - ... - w_q` is shared by the paths to `s0_prime` and `s1`,
/// which diverge after `w_q`; `u_next` is the next vertex towards `s1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairRoles {
    pub s0: Vertex,
    pub s0_prime: Vertex,
    pub s1: Vertex,
    pub q: usize,
    pub w: Vec<Vertex>,
    pub u_next: Vertex,
}

impl PairRoles {
    pub fn w_q(&self) -> Vertex {
        self.w[self.q - 1]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransformPlan {
    pub kind: TransformKind,
    pub source_fingerprint: u64,
    pub source_vertex_count: usize,
    /// `s` for A, `s0` for B and C.
    pub anchor: Vertex,
    pub roles: Option<PairRoles>,
    /// `E1`, sorted.
    pub removed_edges: Vec<Edge>,
    /// `E2`, in chain order.
    pub added_leafpath_edges: Vec<Edge>,
    /// `E3`, including the edges through the new vertex for C.
    pub reconnect_edges: Vec<Edge>,
    /// Components after the cut; the first contains the anchor and, for C,
    /// the second contains `s1`. The rest are ordered by smallest id.
    pub components: Vec<Vec<Vertex>>,
    /// Vertices rewired into the new leaf-path, nearest to its root first.
    pub moved_vertices: Vec<Vertex>,
    pub new_vertex: Option<Vertex>,
}

impl TransformPlan {
    pub fn apply(&self, tree: &Tree) -> Result<Tree> {
        if tree.vertex_count() != self.source_vertex_count
            || tree.fingerprint() != self.source_fingerprint
        {
            return Err(TmdError::PlanMismatch);
        }
        let mut edges: BTreeSet<Edge> = tree.edges().into_iter().collect();
        for e in &self.removed_edges {
            if !edges.remove(e) {
                return Err(TmdError::InvalidRewrite(format!("edge {}-{} is not present", e.0, e.1)));
            }
        }
        for &(u, v) in self.added_leafpath_edges.iter().chain(&self.reconnect_edges) {
            if !edges.insert(normalize_edge(u, v)) {
                return Err(TmdError::InvalidRewrite(format!("edge {u}-{v} would be duplicated")));
            }
        }
        let n = tree.vertex_count() + usize::from(self.new_vertex.is_some());
        let edges: Vec<Edge> = edges.into_iter().collect();
        Tree::from_edges(n, &edges).map_err(|e| TmdError::InvalidRewrite(e.to_string()))
    }

    /// True when applying the plan would return the same tree.
    pub fn is_identity(&self) -> bool {
        if self.new_vertex.is_some() {
            return false;
        }
        let removed: BTreeSet<Edge> = self.removed_edges.iter().copied().collect();
        let added: BTreeSet<Edge> = self
            .added_leafpath_edges
            .iter()
            .chain(&self.reconnect_edges)
            .map(|&(u, v)| normalize_edge(u, v))
            .collect();
        removed == added
    }
}

/// Shared cut-and-reconnect construction behind all three transformations.
struct Rewire<'a> {
    tree: &'a Tree,
    kind: TransformKind,
    roles: Option<PairRoles>,
    moved: Vec<Vertex>,
    chain_root: Vertex,
    extra_cut: Option<Edge>,
    /// Lies in the first component and receives every reconnecting edge.
    hub: Vertex,
    /// Each other component reconnects through its vertex closest to this.
    closest_to: Vertex,
    /// For C: `(s1, u_next)`; the component of `s1` is joined to the hub
    /// through a new vertex adjacent to `u_next`.
    bridge: Option<(Vertex, Vertex)>,
}

impl Rewire<'_> {
    fn plan(self) -> Result<TransformPlan> {
        let tree = self.tree;
        let n = tree.vertex_count();
        let mut is_moved = vec![false; n];
        for &v in &self.moved {
            is_moved[v] = true;
        }
        let mut removed: BTreeSet<Edge> = BTreeSet::new();
        for &v in &self.moved {
            for &w in tree.neighbors(v) {
                removed.insert(normalize_edge(v, w));
            }
        }
        if let Some((u, v)) = self.extra_cut {
            removed.insert(normalize_edge(u, v));
        }

        let mut chain = Vec::with_capacity(self.moved.len());
        let mut prev = self.chain_root;
        for &v in &self.moved {
            chain.push(normalize_edge(prev, v));
            prev = v;
        }

        let mut seen = is_moved.clone();
        let mut components = vec![tree.component_without(self.hub, &is_moved, &removed, &mut seen)];
        if let Some((s1, _)) = self.bridge {
            if seen[s1] {
                return Err(TmdError::InvalidRewrite(format!(
                    "sensor {s1} is still connected to {} after the cut",
                    self.hub
                )));
            }
            components.push(tree.component_without(s1, &is_moved, &removed, &mut seen));
        }
        for v in tree.vertices() {
            if !seen[v] {
                components.push(tree.component_without(v, &is_moved, &removed, &mut seen));
            }
        }

        let mut reconnect = Vec::new();
        let mut new_vertex = None;
        let skip = if let Some((_, u_next)) = self.bridge {
            new_vertex = Some(n);
            reconnect.push(normalize_edge(self.hub, n));
            reconnect.push(normalize_edge(n, u_next));
            2
        } else {
            1
        };
        for comp in &components[skip..] {
            let x = *comp
                .iter()
                .min_by_key(|&&v| (tree.dist(self.closest_to, v), v))
                .expect("components are nonempty");
            reconnect.push(normalize_edge(self.hub, x));
        }

        Ok(TransformPlan {
            kind: self.kind,
            source_fingerprint: tree.fingerprint(),
            source_vertex_count: n,
            anchor: self.hub,
            roles: self.roles,
            removed_edges: removed.into_iter().collect(),
            added_leafpath_edges: chain,
            reconnect_edges: reconnect,
            components,
            moved_vertices: self.moved,
            new_vertex,
        })
    }
}
