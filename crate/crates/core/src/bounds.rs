//! Closed-form lower bounds on the threshold-`k` metric dimension.
//!
//! All arithmetic is integer-exact.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Result, TmdError};
use crate::tree::{support_profile, Tree, Vertex};

fn residue_indicator(k: usize) -> usize {
    usize::from(k % 3 == 1)
}

/// Lower bound that depends only on `n` and `k`:
/// `ceil((3n + k^2 + k + [k = 1 mod 3]) / (k^2 + 4k + 3 + [k = 1 mod 3]))`.
pub fn worst_case_lower_bound(n: usize, k: usize) -> Result<usize> {
    if n == 0 {
        return Err(TmdError::EmptyTree);
    }
    if k == 0 {
        return Err(TmdError::InvalidThreshold);
    }
    Ok(worst_case_term(n, k))
}

fn worst_case_term(n: usize, k: usize) -> usize {
    let ind = residue_indicator(k);
    (3 * n + k * k + k + ind).div_ceil(k * k + 4 * k + 3 + ind)
}

fn split(len: usize, k: usize) -> (usize, usize) {
    let block = 3 * k + 2;
    (len / block, len % block)
}

/// Sensors a leaf-path of length `len` needs when it cannot borrow
/// measurements through its anchor.
pub fn upper_complexity(len: usize, k: usize) -> usize {
    let (q, r) = split(len, k);
    2 * q + usize::from(r >= 1) + usize::from(r >= 2 * k + 2)
}

/// Sensors a leaf-path of length `len` needs when its anchor side is
/// already measured.
pub fn lower_complexity(len: usize, k: usize) -> usize {
    let (q, r) = split(len, k);
    2 * q + usize::from(r > k) + usize::from(r >= 2 * k + 2)
}

/// Sensors forced by the leaf-paths at one support vertex: every path pays
/// its upper complexity except the one that saves the most.
pub fn leaf_path_requirement(lengths: &[usize], k: usize) -> Result<usize> {
    if lengths.is_empty() {
        return Err(TmdError::Precondition("leaf-path length list is empty".into()));
    }
    if k == 0 {
        return Err(TmdError::InvalidThreshold);
    }
    let total: usize = lengths.iter().map(|&l| upper_complexity(l, k)).sum();
    let saving = lengths
        .iter()
        .map(|&l| upper_complexity(l, k) - lower_complexity(l, k))
        .max()
        .unwrap_or(0);
    Ok(total - saving)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupportBound {
    pub lengths: Vec<usize>,
    pub upper: Vec<usize>,
    pub lower: Vec<usize>,
    pub requirement: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub k: usize,
    pub worst_case_bound: usize,
    pub structural_bound: usize,
    pub per_support: BTreeMap<Vertex, SupportBound>,
    /// Vertices on leaf-paths of support vertices, anchors excluded.
    pub leaf_vertex_total: usize,
}

/// Combines the worst-case bound on the part of the tree outside the
/// support vertices' leaf-paths with the sensors those leaf-paths force.
pub fn structural_lower_bound(tree: &Tree, k: usize) -> Result<BoundReport> {
    let n = tree.vertex_count();
    let worst_case_bound = worst_case_lower_bound(n, k)?;
    let profile = support_profile(tree);
    let mut per_support = BTreeMap::new();
    for &v in &profile.support_vertices {
        let lengths = profile.lengths(v);
        let requirement = leaf_path_requirement(&lengths, k)?;
        per_support.insert(
            v,
            SupportBound {
                upper: lengths.iter().map(|&l| upper_complexity(l, k)).collect(),
                lower: lengths.iter().map(|&l| lower_complexity(l, k)).collect(),
                lengths,
                requirement,
            },
        );
    }
    let leaf_vertex_total = profile.leaf_vertex_total();
    let requirements: usize = per_support.values().map(|b| b.requirement).sum();
    let structural_bound =
        worst_case_term(n - leaf_vertex_total, k) + requirements - per_support.len();
    Ok(BoundReport { n, k, worst_case_bound, structural_bound, per_support, leaf_vertex_total })
}
