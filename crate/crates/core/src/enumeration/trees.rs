//! Edge indexing for the complete graph and Prüfer-sequence decoding.
//!
//! Vertices of `K_m` are `0..m`. Edges `(a, b)` with `a < b` are indexed in
//! lexicographic order: `(0,1), (0,2), ..., (0,m-1), (1,2), ...`. In the
//! tree gadget, vertex `0` is `s`, vertex `1` is `t` and vertex `j + 1` is
//! `u_j`.

/// Number of edges of `K_m`.
pub fn edge_count(m: usize) -> usize {
    m * m.saturating_sub(1) / 2
}

/// Index of edge `{a, b}` in `K_m`.
pub fn edge_index(m: usize, a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    debug_assert!(b < m && a != b);
    a * m - a * (a + 1) / 2 + (b - a - 1)
}

/// Endpoints `(a, b)`, `a < b`, of the edge with the given index.
pub fn edge_endpoints(m: usize, index: usize) -> (usize, usize) {
    let mut rest = index;
    for a in 0..m {
        let row = m - a - 1;
        if rest < row {
            return (a, a + 1 + rest);
        }
        rest -= row;
    }
    panic!("edge index {index} out of range for K_{m}");
}

/// Decodes a Prüfer sequence (length `m - 2`, entries `< m`) into the edge
/// list of the corresponding labeled tree.
pub fn prufer_decode(m: usize, sequence: &[usize]) -> Vec<(usize, usize)> {
    debug_assert_eq!(sequence.len() + 2, m);
    let mut degree = vec![1usize; m];
    for &v in sequence {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(m - 1);
    for &v in sequence {
        let leaf = (0..m).find(|&u| degree[u] == 1).expect("a tree always has a leaf");
        edges.push((leaf.min(v), leaf.max(v)));
        degree[leaf] -= 1;
        degree[v] -= 1;
    }
    let mut rest = (0..m).filter(|&u| degree[u] == 1);
    let a = rest.next().expect("two vertices remain");
    let b = rest.next().expect("two vertices remain");
    edges.push((a, b));
    edges
}

/// Incidence vector (length `m(m-1)/2`) of an edge list.
pub fn incidence(m: usize, edges: &[(usize, usize)]) -> Vec<bool> {
    let mut bits = vec![false; edge_count(m)];
    for &(a, b) in edges {
        bits[edge_index(m, a, b)] = true;
    }
    bits
}

/// `true` iff the incidence vector describes a spanning tree of `K_m`.
pub fn is_spanning_tree(m: usize, bits: &[bool]) -> bool {
    if bits.len() != edge_count(m) || bits.iter().filter(|&&b| b).count() + 1 != m {
        return false;
    }
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (idx, _) in bits.iter().enumerate().filter(|(_, &b)| b) {
        let (a, b) = edge_endpoints(m, idx);
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    true
}
