//! Exact threshold-`k` metric dimension by exhaustive search, a greedy
//! heuristic, and a bound-validation sweep over small trees.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{structural_lower_bound, worst_case_lower_bound};
use crate::error::{Result, TmdError};
use crate::resolution::{verdict_unchecked, SensorSet};
use crate::tree::{canonical_form, enumerate_trees, Tree, Vertex};

/// Largest tree accepted by [`brute_force_tmd`].
pub const MAX_EXACT_N: usize = 24;
/// Largest `n_max` accepted by [`sweep`].
pub const MAX_SWEEP_N: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exact,
    Greedy,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveResult {
    pub tmd: usize,
    pub witness: SensorSet,
    /// Exact: position of the witness in the size-then-lexicographic order
    /// of nonempty subsets. Greedy: number of resolution checks performed.
    pub subsets_checked: u64,
    pub method: Method,
}

fn binomial(n: usize, r: usize) -> u64 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// Zero-based rank of a sorted subset among all subsets of the same size
/// in lexicographic order.
fn lex_rank(subset: &[Vertex], n: usize) -> u64 {
    let m = subset.len();
    let mut rank = 0;
    let mut next = 0;
    for (i, &c) in subset.iter().enumerate() {
        for v in next..c {
            rank += binomial(n - 1 - v, m - 1 - i);
        }
        next = c + 1;
    }
    rank
}

/// Lexicographic search over subsets of one size. Coverage masks prune a
/// prefix as soon as the remaining vertices cannot cover the tree; only
/// fully covering subsets get the distinctness check.
struct Search<'a> {
    tree: &'a Tree,
    n: usize,
    k: usize,
    full: u32,
    cover: Vec<u32>,
    suffix_cover: Vec<u32>,
}

impl<'a> Search<'a> {
    fn new(tree: &'a Tree, k: usize) -> Self {
        let n = tree.vertex_count();
        let cover: Vec<u32> = tree
            .vertices()
            .map(|s| tree.vertices().filter(|&v| tree.dist(s, v) <= k).fold(0, |m, v| m | 1 << v))
            .collect();
        let mut suffix_cover = vec![0u32; n + 1];
        for v in (0..n).rev() {
            suffix_cover[v] = suffix_cover[v + 1] | cover[v];
        }
        let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        Search { tree, n, k, full, cover, suffix_cover }
    }

    fn distinct(&self, subset: &[Vertex]) -> bool {
        let width = usize::BITS - (self.k + 1).leading_zeros();
        let mut seen = HashSet::with_capacity(self.n);
        if subset.len() * width as usize <= 128 {
            self.tree.vertices().all(|v| {
                let code = subset.iter().fold(0u128, |acc, &s| {
                    acc << width | self.tree.dist(s, v).min(self.k + 1) as u128
                });
                seen.insert(code)
            })
        } else {
            verdict_unchecked(self.tree, subset, self.k).is_ok()
        }
    }

    /// Lexicographically first resolving `m`-subset whose smallest element
    /// is `first`.
    fn first_with(&self, first: Vertex, m: usize) -> Option<Vec<Vertex>> {
        let mut chosen = vec![first];
        self.extend(&mut chosen, self.cover[first], m).then_some(chosen)
    }

    fn extend(&self, chosen: &mut Vec<Vertex>, covered: u32, m: usize) -> bool {
        if chosen.len() == m {
            return covered == self.full && self.distinct(chosen);
        }
        let start = chosen.last().unwrap() + 1;
        let remaining = m - chosen.len();
        for v in start..=self.n - remaining {
            if covered | self.suffix_cover[v] != self.full {
                return false;
            }
            chosen.push(v);
            if self.extend(chosen, covered | self.cover[v], m) {
                return true;
            }
            chosen.pop();
        }
        false
    }
}

/// Smallest resolving set, found by trying every subset in order of size
/// and then lexicographically. The witness is the lexicographically first
/// resolving set of minimum size.
pub fn brute_force_tmd(tree: &Tree, k: usize) -> Result<SolveResult> {
    let n = tree.vertex_count();
    if k == 0 {
        return Err(TmdError::InvalidThreshold);
    }
    if n > MAX_EXACT_N {
        return Err(TmdError::Guard { what: "n", value: n, limit: format!("<= {MAX_EXACT_N}") });
    }
    let search = Search::new(tree, k);
    let mut skipped = 0u64;
    for m in 1..=n {
        let found = (0..=n - m).into_par_iter().find_map_first(|first| search.first_with(first, m));
        if let Some(ids) = found {
            let subsets_checked = skipped + lex_rank(&ids, n) + 1;
            return Ok(SolveResult {
                tmd: m,
                witness: SensorSet::new(tree, ids, k)?,
                subsets_checked,
                method: Method::Exact,
            });
        }
        skipped += binomial(n, m);
    }
    unreachable!("the full vertex set always resolves")
}

/// Greedy resolving set: repeatedly adds the vertex that covers the most
/// new vertices, then separates the most new pairs, then drops redundant
/// sensors from the highest id down. `seed = 0` breaks ties by smallest
/// id; other seeds break ties by a seeded permutation.
pub fn greedy_resolving_set(tree: &Tree, k: usize, seed: u64) -> Result<SensorSet> {
    Ok(greedy_solve(tree, k, seed)?.witness)
}

pub fn greedy_solve(tree: &Tree, k: usize, seed: u64) -> Result<SolveResult> {
    if k == 0 {
        return Err(TmdError::InvalidThreshold);
    }
    let n = tree.vertex_count();
    let mut order: Vec<Vertex> = tree.vertices().collect();
    if seed != 0 {
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    let mut covered = vec![false; n];
    let mut class = vec![0usize; n];
    let mut chosen = vec![false; n];
    let mut sensors = Vec::new();
    let mut checks = 0u64;
    loop {
        let resolved = covered.iter().all(|&c| c) && {
            let mut seen = HashSet::new();
            class.iter().all(|c| seen.insert(*c))
        };
        if resolved {
            break;
        }
        let mut best: Option<((usize, usize), Vertex)> = None;
        for &v in order.iter().filter(|&&v| !chosen[v]) {
            let score = greedy_score(tree, k, v, &covered, &class);
            if best.is_none_or(|(b, _)| score > b) {
                best = Some((score, v));
            }
        }
        let (_, v) = best.expect("an unresolved tree always has a useful vertex");
        chosen[v] = true;
        sensors.push(v);
        checks += 1;
        let mut relabel = std::collections::HashMap::new();
        for x in tree.vertices() {
            let d = tree.dist(v, x);
            covered[x] |= d <= k;
            let len = relabel.len();
            class[x] = *relabel.entry((class[x], d.min(k + 1))).or_insert(len);
        }
    }
    sensors.sort_unstable();
    for i in (0..sensors.len()).rev() {
        if sensors.len() == 1 {
            break;
        }
        let candidate: Vec<Vertex> =
            sensors.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &s)| s).collect();
        checks += 1;
        if verdict_unchecked(tree, &candidate, k).is_ok() {
            sensors = candidate;
        }
    }
    let witness = SensorSet::new(tree, sensors, k)?;
    Ok(SolveResult { tmd: witness.len(), witness, subsets_checked: checks, method: Method::Greedy })
}

fn greedy_score(tree: &Tree, k: usize, v: Vertex, covered: &[bool], class: &[usize]) -> (usize, usize) {
    let mut new_cover = 0;
    let mut class_sizes: std::collections::HashMap<usize, usize> = Default::default();
    let mut split_sizes: std::collections::HashMap<(usize, usize), usize> = Default::default();
    for x in tree.vertices() {
        let d = tree.dist(v, x);
        if d <= k && !covered[x] {
            new_cover += 1;
        }
        *class_sizes.entry(class[x]).or_default() += 1;
        *split_sizes.entry((class[x], d.min(k + 1))).or_default() += 1;
    }
    let pairs = |c: &usize| c * c.saturating_sub(1) / 2;
    let before: usize = class_sizes.values().map(pairs).sum();
    let after: usize = split_sizes.values().map(pairs).sum();
    (new_cover, before - after)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub k: usize,
    pub canonical_id: String,
    pub tmd: usize,
    pub worst_bound: usize,
    pub structural_bound: usize,
}

/// Exact dimension and both lower bounds for one representative of every
/// isomorphism class with `1..=n_max` vertices, for each `k`. Fails if a
/// bound ever exceeds the exact value.
pub fn sweep(n_max: usize, ks: &[usize]) -> Result<Vec<SweepRow>> {
    if n_max == 0 || n_max > MAX_SWEEP_N {
        return Err(TmdError::Guard {
            what: "n_max",
            value: n_max,
            limit: format!("1..={MAX_SWEEP_N}"),
        });
    }
    if ks.contains(&0) {
        return Err(TmdError::InvalidThreshold);
    }
    let mut jobs = Vec::new();
    for n in 1..=n_max {
        for tree in enumerate_trees(n, true)? {
            let id = String::from_utf8(canonical_form(&tree)).expect("canonical form is ASCII");
            for &k in ks {
                jobs.push((tree.clone(), id.clone(), k));
            }
        }
    }
    jobs.into_par_iter()
        .map(|(tree, canonical_id, k)| {
            let tmd = brute_force_tmd(&tree, k)?.tmd;
            let worst_bound = worst_case_lower_bound(tree.vertex_count(), k)?;
            let structural_bound = structural_lower_bound(&tree, k)?.structural_bound;
            if worst_bound > tmd || structural_bound > tmd {
                return Err(TmdError::BoundViolation(format!(
                    "tree {canonical_id} with k={k}: tmd {tmd}, bounds {worst_bound}/{structural_bound}"
                )));
            }
            Ok(SweepRow { n: tree.vertex_count(), k, canonical_id, tmd, worst_bound, structural_bound })
        })
        .collect()
}
