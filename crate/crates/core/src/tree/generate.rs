use std::collections::{BinaryHeap, HashSet};
use std::cmp::Reverse;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{canonical_form, Edge, Tree};
use crate::error::{Result, TmdError};

/// Largest `n` accepted by [`enumerate_trees`].
pub const MAX_ENUMERATION_N: usize = 10;

/// Decodes a Prüfer sequence over `0..n`, where `n = seq.len() + 2`.
pub fn prufer_decode(seq: &[usize]) -> Result<Tree> {
    let n = seq.len() + 2;
    let mut degree = vec![1usize; n];
    for &v in seq {
        if v >= n {
            return Err(TmdError::InvalidVertex { vertex: v, n });
        }
        degree[v] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut edges: Vec<Edge> = Vec::with_capacity(n - 1);
    for &v in seq {
        let Reverse(leaf) = leaves.pop().expect("a Prüfer sequence always leaves a leaf");
        edges.push((leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.push(Reverse(v));
        }
    }
    let Reverse(a) = leaves.pop().unwrap();
    let Reverse(b) = leaves.pop().unwrap();
    edges.push((a, b));
    Tree::from_edges(n, &edges)
}

/// Uniformly random labeled tree on `n` vertices, deterministic in `seed`.
pub fn random_tree(n: usize, seed: u64) -> Result<Tree> {
    match n {
        0 => Err(TmdError::EmptyTree),
        1 => Ok(Tree::single_vertex()),
        2 => Tree::from_edges(2, &[(0, 1)]),
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
            prufer_decode(&seq)
        }
    }
}

/// Stream of trees on `n` vertices: every labeled tree (`n^(n-2)` of them),
/// or one representative per isomorphism class when `dedup` is set.
pub fn enumerate_trees(n: usize, dedup: bool) -> Result<TreeStream> {
    if n == 0 || n > MAX_ENUMERATION_N {
        return Err(TmdError::Guard {
            what: "n",
            value: n,
            limit: format!("1..={MAX_ENUMERATION_N}"),
        });
    }
    let inner = if dedup {
        Inner::Classes(unlabeled_classes(n).into_iter())
    } else if n <= 2 {
        Inner::Classes(vec![Tree::path(n)?].into_iter())
    } else {
        Inner::Prufer { digits: vec![0; n - 2], n, done: false }
    };
    Ok(TreeStream { inner })
}

pub struct TreeStream {
    inner: Inner,
}

enum Inner {
    Prufer { digits: Vec<usize>, n: usize, done: bool },
    Classes(std::vec::IntoIter<Tree>),
}

impl Iterator for TreeStream {
    type Item = Tree;

    fn next(&mut self) -> Option<Tree> {
        match &mut self.inner {
            Inner::Classes(it) => it.next(),
            Inner::Prufer { digits, n, done } => {
                if *done {
                    return None;
                }
                let tree = prufer_decode(digits).expect("in-range Prüfer digits");
                // odometer increment, least significant digit last
                let mut i = digits.len();
                loop {
                    if i == 0 {
                        *done = true;
                        break;
                    }
                    i -= 1;
                    digits[i] += 1;
                    if digits[i] < *n {
                        break;
                    }
                    digits[i] = 0;
                }
                Some(tree)
            }
        }
    }
}

/// One tree per isomorphism class, grown leaf by leaf from the classes on
/// `n - 1` vertices and deduplicated by canonical form.
fn unlabeled_classes(n: usize) -> Vec<Tree> {
    let mut level = vec![Tree::single_vertex()];
    for size in 2..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for tree in &level {
            let base = tree.edges();
            for attach in tree.vertices() {
                let mut edges = base.clone();
                edges.push((attach, size - 1));
                let grown = Tree::from_edges(size, &edges).expect("adding a leaf keeps a tree");
                if seen.insert(canonical_form(&grown)) {
                    next.push(grown);
                }
            }
        }
        level = next;
    }
    level
}
