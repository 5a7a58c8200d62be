//! Fixed inputs shared by the criterion benches.

use tmd_core::solver::greedy_resolving_set;
use tmd_core::tree::random_tree;
use tmd_core::{SensorSet, Tree};

/// A random tree on `n` vertices with a greedy resolving set for threshold `k`.
pub fn greedy_instance(n: usize, k: usize, seed: u64) -> (Tree, SensorSet) {
    let tree = random_tree(n, seed).expect("n > 0");
    let sensors = greedy_resolving_set(&tree, k, seed).expect("greedy always resolves");
    (tree, sensors)
}

pub fn random_trees(n: usize, count: u64) -> Vec<Tree> {
    (0..count).map(|seed| random_tree(n, seed).expect("n > 0")).collect()
}
