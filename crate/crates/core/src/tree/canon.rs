use super::{Tree, Vertex};

/// AHU encoding rooted at the tree's center. With two centers the smaller
/// of the two rooted encodings is used, so equal forms mean isomorphic trees.
pub fn canonical_form(tree: &Tree) -> Vec<u8> {
    centers(tree).into_iter().map(|c| rooted_encoding(tree, c)).min().unwrap()
}

/// The one or two vertices left after repeatedly stripping all leaves.
fn centers(tree: &Tree) -> Vec<Vertex> {
    let n = tree.vertex_count();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut degree: Vec<usize> = tree.vertices().map(|v| tree.degree(v)).collect();
    let mut layer: Vec<Vertex> = tree.vertices().filter(|&v| degree[v] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            for &w in tree.neighbors(leaf) {
                degree[w] -= 1;
                if degree[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

fn rooted_encoding(tree: &Tree, root: Vertex) -> Vec<u8> {
    let n = tree.vertex_count();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    parent[root] = root;
    order.push(root);
    let mut i = 0;
    while i < order.len() {
        let u = order[i];
        i += 1;
        for &w in tree.neighbors(u) {
            if parent[w] == usize::MAX {
                parent[w] = u;
                order.push(w);
            }
        }
    }
    let mut codes: Vec<Vec<u8>> = vec![Vec::new(); n];
    let mut children: Vec<Vec<Vec<u8>>> = vec![Vec::new(); n];
    for &u in order.iter().rev() {
        let mut kids = std::mem::take(&mut children[u]);
        kids.sort_unstable();
        let mut code = Vec::with_capacity(2 + kids.iter().map(Vec::len).sum::<usize>());
        code.push(b'(');
        for k in kids {
            code.extend_from_slice(&k);
        }
        code.push(b')');
        if u == root {
            codes[u] = code;
        } else {
            children[parent[u]].push(code);
        }
    }
    std::mem::take(&mut codes[root])
}
