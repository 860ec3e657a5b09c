//! Brute-force quotient-tree classes: every labelled tree from Prüfer
//! sequences, filtered and reduced modulo relabelling of trivial vertices.

use std::collections::BTreeSet;

pub type Edges = Vec<(usize, usize)>;

/// Every labelled tree on `n` vertices, decoded from Prüfer sequences.
pub fn labelled_trees(n: usize) -> Vec<Edges> {
    if n == 1 {
        return vec![Vec::new()];
    }
    if n == 2 {
        return vec![vec![(0, 1)]];
    }
    let mut out = Vec::new();
    let mut seq = vec![0usize; n - 2];
    loop {
        let mut degree = vec![1usize; n];
        for &s in &seq {
            degree[s] += 1;
        }
        let mut edges = Vec::with_capacity(n - 1);
        for &s in &seq {
            let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
            edges.push((leaf.min(s), leaf.max(s)));
            degree[leaf] -= 1;
            degree[s] -= 1;
        }
        let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
        edges.push((rest[0], rest[1]));
        out.push(edges);
        // next sequence in base n
        let mut i = 0;
        while i < seq.len() && seq[i] == n - 1 {
            seq[i] = 0;
            i += 1;
        }
        if i == seq.len() {
            return out;
        }
        seq[i] += 1;
    }
}

pub fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Isomorphism class key: the smallest sorted edge list over all relabellings
/// of the trivial vertices `r..r+t`.
pub fn class_key(r: usize, t: usize, edges: &Edges, perms: &[Vec<usize>]) -> (usize, Edges) {
    let key = perms
        .iter()
        .map(|perm| {
            let map = |v: usize| if v < r { v } else { r + perm[v - r] };
            let mut e: Edges = edges.iter().map(|&(a, b)| (map(a).min(map(b)), map(a).max(map(b)))).collect();
            e.sort_unstable();
            e
        })
        .min()
        .unwrap();
    (t, key)
}

pub fn brute_force_classes(r: usize) -> BTreeSet<(usize, Edges)> {
    let mut classes = BTreeSet::new();
    for t in 0..=r.saturating_sub(2) {
        let n = r + t;
        let perms = permutations(&(0..t).collect::<Vec<_>>());
        for edges in labelled_trees(n) {
            let mut degree = vec![0usize; n];
            for &(a, b) in &edges {
                degree[a] += 1;
                degree[b] += 1;
            }
            if (r..n).all(|v| degree[v] >= 3) {
                classes.insert(class_key(r, t, &edges, &perms));
            }
        }
    }
    classes
}
