//! Small-graph corpora for exhaustive checks.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;

use super::enumerate::enumerate_dissections;
use crate::bop::Dissection;
use crate::graph::{Edge, Graph};

fn pair_index(n: usize) -> Vec<Vec<usize>> {
    let mut idx = vec![vec![usize::MAX; n]; n];
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            idx[u][v] = k;
            idx[v][u] = k;
            k += 1;
        }
    }
    idx
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
        out.push(p.clone());
    }
}

/// One representative per isomorphism class of graphs on `n ≤ 6` vertices,
/// each stored as its lexicographically least edge mask.
pub fn graphs_up_to_iso(n: usize) -> Vec<Graph> {
    assert!(n <= 6, "exhaustive graph lists stop at 6 vertices");
    let idx = pair_index(n);
    let pairs: Vec<Edge> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let maps: Vec<Vec<usize>> = permutations(n)
        .iter()
        .map(|p| pairs.iter().map(|&(u, v)| idx[p[u]][p[v]]).collect())
        .collect();
    let mut seen = BTreeSet::new();
    for mask in 0u32..(1 << pairs.len()) {
        let canon = maps
            .iter()
            .map(|m| {
                (0..pairs.len())
                    .filter(|&b| mask >> b & 1 == 1)
                    .fold(0u32, |acc, b| acc | 1 << m[b])
            })
            .min()
            .unwrap();
        seen.insert(canon);
    }
    seen.into_iter()
        .map(|mask| {
            let edges = (0..pairs.len()).filter(|&b| mask >> b & 1 == 1).map(|b| pairs[b]);
            Graph::new(n, edges).unwrap()
        })
        .collect()
}

pub fn connected_graphs(n: usize) -> Vec<Graph> {
    graphs_up_to_iso(n).into_iter().filter(|g| g.is_connected()).collect()
}

fn tree_code(t: &Graph, root: usize, parent: usize) -> String {
    let mut kids: Vec<String> = t
        .neighbors(root)
        .iter()
        .filter(|&&c| c != parent)
        .map(|&c| tree_code(t, c, root))
        .collect();
    kids.sort();
    format!("({})", kids.concat())
}

/// A canonical string for a tree, rooted at its center(s).
pub fn tree_canonical(t: &Graph) -> String {
    let n = t.order();
    if n <= 2 {
        return format!("{n}");
    }
    let mut deg: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    let mut left = n;
    while left > 2 {
        left -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &w in t.neighbors(v) {
                deg[w] -= 1;
                if deg[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer.iter().map(|&c| tree_code(t, c, usize::MAX)).min().unwrap()
}

/// One representative per isomorphism class of trees on `n ≥ 1` vertices.
pub fn trees(n: usize) -> Vec<Graph> {
    assert!(n >= 1);
    let mut level = vec![Graph::empty(1)];
    for m in 2..=n {
        let mut next: BTreeMap<String, Graph> = BTreeMap::new();
        for t in &level {
            for v in 0..m - 1 {
                let mut edges = t.edges().to_vec();
                edges.push((v, m - 1));
                let g = Graph::new(m, edges).unwrap();
                next.entry(tree_canonical(&g)).or_insert(g);
            }
        }
        level = next.into_values().collect();
    }
    level
}

/// A random connected graph: a random spanning tree plus each other pair
/// with probability `p`.
pub fn random_connected_graph<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges: BTreeSet<Edge> = BTreeSet::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        let (a, b) = (order[i], order[j]);
        edges.insert((a.min(b), a.max(b)));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.insert((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

/// Dissections of the `n`-gon for `3 ≤ n ≤ max_n`, one per isomorphism
/// class of their graphs.
pub fn dissection_classes(max_n: usize) -> Vec<Dissection> {
    let mut out = Vec::new();
    for n in 3..=max_n {
        let mut reps: Vec<(Vec<usize>, Graph, Dissection)> = Vec::new();
        for d in enumerate_dissections(n).unwrap() {
            let g = d.graph();
            let mut degs: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
            degs.sort();
            if !reps.iter().any(|(k, h, _)| *k == degs && h.is_isomorphic(&g)) {
                reps.push((degs, g, d));
            }
        }
        out.extend(reps.into_iter().map(|(_, _, d)| d));
    }
    out
}
