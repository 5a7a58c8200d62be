//! Free trees on dense vertex ids `0..n`.
//!
//! A [`Tree`] is immutable once built. Rewrites produce fresh trees, so the
//! lazily filled all-pairs distance table never needs invalidation.

mod canon;
mod generate;
mod support;

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{Result, TmdError};

pub use canon::canonical_form;
pub use generate::{enumerate_trees, prufer_decode, random_tree, TreeStream, MAX_ENUMERATION_N};
pub use support::{support_profile, LeafPath, SupportProfile};

pub type Vertex = usize;

/// Undirected edge stored with the smaller endpoint first.
pub type Edge = (Vertex, Vertex);

pub fn normalize_edge(u: Vertex, v: Vertex) -> Edge {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Clone)]
pub struct Tree {
    adjacency: Vec<Vec<Vertex>>,
    distances: OnceLock<Vec<u32>>,
}

impl Tree {
    /// Builds a tree from an edge list, rejecting anything that is not
    /// connected and acyclic on exactly `n` vertices.
    pub fn from_edges(n: usize, edges: &[Edge]) -> Result<Self> {
        if n == 0 {
            return Err(TmdError::EmptyTree);
        }
        let mut dsu = Dsu::new(n);
        let mut seen = BTreeSet::new();
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(TmdError::InvalidVertex { vertex: w, n });
                }
            }
            if u == v {
                return Err(TmdError::SelfLoop(u));
            }
            let e = normalize_edge(u, v);
            if !seen.insert(e) {
                return Err(TmdError::DuplicateEdge(e.0, e.1));
            }
            if !dsu.union(u, v) {
                return Err(TmdError::Cycle(e.0, e.1));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        if edges.len() != n - 1 {
            // acyclic with fewer than n-1 edges
            return Err(TmdError::Disconnected);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Tree { adjacency, distances: OnceLock::new() })
    }

    pub fn single_vertex() -> Self {
        Tree { adjacency: vec![Vec::new()], distances: OnceLock::new() }
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<Edge> = (1..n).map(|v| (v - 1, v)).collect();
        Tree::from_edges(n, &edges)
    }

    /// Star with center `0` and leaves `1..=leaves`.
    pub fn star(leaves: usize) -> Result<Self> {
        let edges: Vec<Edge> = (1..=leaves).map(|v| (0, v)).collect();
        Tree::from_edges(leaves + 1, &edges)
    }

    /// Spider: center `0` with one path per entry of `legs`.
    pub fn spider(legs: &[usize]) -> Result<Self> {
        let mut edges = Vec::new();
        let mut next = 1;
        for &len in legs {
            let mut prev = 0;
            for _ in 0..len {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
        }
        Tree::from_edges(next, &edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.len() - 1
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.adjacency.len()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn is_leaf(&self, v: Vertex) -> bool {
        self.degree(v) == 1
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.vertex_count() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges in ascending `(min, max)` order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, list) in self.adjacency.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| u < v).map(|&v| (u, v)));
        }
        out
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(TmdError::InvalidVertex { vertex: v, n: self.vertex_count() })
        }
    }

    fn table(&self) -> &[u32] {
        self.distances.get_or_init(|| {
            let n = self.vertex_count();
            let mut table = vec![u32::MAX; n * n];
            let mut queue = VecDeque::with_capacity(n);
            for root in 0..n {
                let row = &mut table[root * n..(root + 1) * n];
                row[root] = 0;
                queue.push_back(root);
                while let Some(u) = queue.pop_front() {
                    let du = row[u];
                    for &w in &self.adjacency[u] {
                        if row[w] == u32::MAX {
                            row[w] = du + 1;
                            queue.push_back(w);
                        }
                    }
                }
            }
            table
        })
    }

    /// Hop distance without range checks. Panics on out-of-range ids.
    #[inline]
    pub fn dist(&self, u: Vertex, v: Vertex) -> usize {
        let n = self.vertex_count();
        self.table()[u * n + v] as usize
    }

    pub fn distance(&self, u: Vertex, v: Vertex) -> Result<usize> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.dist(u, v))
    }

    /// `min(d(u, v), k + 1)`.
    pub fn truncated_distance(&self, u: Vertex, v: Vertex, k: usize) -> Result<usize> {
        if k == 0 {
            return Err(TmdError::InvalidThreshold);
        }
        Ok(self.distance(u, v)?.min(k + 1))
    }

    /// True when `x` lies on the `u`-`v` path (endpoints included).
    #[inline]
    pub fn on_path(&self, x: Vertex, u: Vertex, v: Vertex) -> bool {
        self.dist(u, x) + self.dist(x, v) == self.dist(u, v)
    }

    /// The unique `u`-`v` path, endpoints included.
    pub fn tree_path(&self, u: Vertex, v: Vertex) -> Result<Vec<Vertex>> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.path_unchecked(u, v))
    }

    pub(crate) fn path_unchecked(&self, u: Vertex, v: Vertex) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(self.dist(u, v) + 1);
        let mut cur = u;
        out.push(cur);
        while cur != v {
            let remaining = self.dist(cur, v);
            cur = *self.adjacency[cur]
                .iter()
                .find(|&&w| self.dist(w, v) + 1 == remaining)
                .expect("tree distances are consistent");
            out.push(cur);
        }
        out
    }

    /// Edges of the `u`-`v` path, normalized.
    pub fn path_edges(&self, u: Vertex, v: Vertex) -> Vec<Edge> {
        self.path_unchecked(u, v).windows(2).map(|w| normalize_edge(w[0], w[1])).collect()
    }

    /// Content hash over `(n, sorted edges)`. Stable within a build.
    pub fn fingerprint(&self) -> u64 {
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.vertex_count().hash(&mut h);
        self.edges().hash(&mut h);
        h.finish()
    }

    /// Plain-text form: vertex count, then one `u v` line per edge.
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.vertex_count());
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    /// Parses the plain-text form. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (line_no, header) = lines.next().ok_or(TmdError::Parse {
            line: 1,
            message: "missing vertex count".into(),
        })?;
        let n: usize = header.parse().map_err(|_| TmdError::Parse {
            line: line_no,
            message: format!("expected vertex count, found {header:?}"),
        })?;
        let mut edges = Vec::new();
        for (line, content) in lines {
            let fields: Vec<&str> = content.split_whitespace().collect();
            let parsed: Option<Vec<usize>> = fields.iter().map(|f| f.parse().ok()).collect();
            match parsed.as_deref() {
                Some(&[u, v]) => edges.push((u, v)),
                _ => {
                    return Err(TmdError::Parse {
                        line,
                        message: format!("expected two vertex ids, found {content:?}"),
                    })
                }
            }
        }
        Tree::from_edges(n, &edges)
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Result<Self> {
        let edges: Vec<Edge> = self.edges().iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        Tree::from_edges(self.vertex_count(), &edges)
    }

    /// Vertices reachable from `start` using only edges not in `removed`,
    /// never entering vertices flagged in `blocked`.
    pub(crate) fn component_without(
        &self,
        start: Vertex,
        blocked: &[bool],
        removed: &BTreeSet<Edge>,
        seen: &mut [bool],
    ) -> Vec<Vertex> {
        let mut comp = vec![start];
        seen[start] = true;
        let mut i = 0;
        while i < comp.len() {
            let u = comp[i];
            i += 1;
            for &w in &self.adjacency[u] {
                if !seen[w] && !blocked[w] && !removed.contains(&normalize_edge(u, w)) {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        comp
    }
}

impl PartialEq for Tree {
    fn eq(&self, other: &Self) -> bool {
        self.adjacency == other.adjacency
    }
}

impl Eq for Tree {}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Tree")
            .field("n", &self.vertex_count())
            .field("edges", &self.edges())
            .finish()
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for Tree {
    type Err = TmdError;

    fn from_str(s: &str) -> Result<Self> {
        Tree::parse(s)
    }
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}
