//! Combinatorial parameters: fineness, yuppies, path-degree signatures,
//! adjoining pairs and the degree-2 induced-path statistic.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{edge, Cycle, Edge, Graph};
use crate::pseudo::pseudo_facial_cycles;

/// Host-graph degrees read along a path.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DegreeSequence(pub Vec<usize>);

impl DegreeSequence {
    /// The representative of the sequence up to reversal.
    pub fn undirected(&self) -> DegreeSequence {
        let rev: Vec<usize> = self.0.iter().rev().copied().collect();
        DegreeSequence(self.0.clone().min(rev))
    }

    pub fn equal_up_to_reversal(&self, other: &DegreeSequence) -> bool {
        self.undirected() == other.undirected()
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fineness {
    Exact(usize),
    CapExceeded(usize),
}

impl Fineness {
    /// The value, counting an exceeded cap as the cap itself.
    pub fn capped(self) -> usize {
        match self {
            Fineness::Exact(r) | Fineness::CapExceeded(r) => r,
        }
    }
}

impl fmt::Display for Fineness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fineness::Exact(r) => write!(f, "{r}"),
            Fineness::CapExceeded(cap) => write!(f, ">{cap}"),
        }
    }
}

struct TreePaths {
    n: usize,
    /// `parent[u][v]` is the neighbor of `v` on the path towards `u`.
    parent: Vec<Vec<usize>>,
    dist: Vec<Vec<usize>>,
}

impl TreePaths {
    fn new(t: &Graph) -> Result<Self> {
        if !t.is_tree() {
            return Err(Error::NotATree);
        }
        let n = t.order();
        let mut parent = vec![vec![usize::MAX; n]; n];
        let mut dist = vec![vec![usize::MAX; n]; n];
        for u in 0..n {
            dist[u][u] = 0;
            let mut stack = vec![u];
            while let Some(x) = stack.pop() {
                for &y in t.neighbors(x) {
                    if dist[u][y] == usize::MAX {
                        dist[u][y] = dist[u][x] + 1;
                        parent[u][y] = x;
                        stack.push(y);
                    }
                }
            }
        }
        Ok(TreePaths { n, parent, dist })
    }

    /// Vertices of the path from `u` to `v`, in order.
    fn path(&self, u: usize, v: usize) -> Vec<usize> {
        let mut out = vec![v];
        let mut x = v;
        while x != u {
            x = self.parent[u][x];
            out.push(x);
        }
        out.reverse();
        out
    }

    fn pairs_at(&self, d: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| ((u + 1)..self.n).filter(move |&v| self.dist[u][v] == d).map(move |v| (u, v)))
    }
}

fn has_disjoint_twins(t: &Graph, tp: &TreePaths, r: usize) -> bool {
    let mut buckets: BTreeMap<DegreeSequence, Vec<Vec<u64>>> = BTreeMap::new();
    let words = t.order().div_ceil(64);
    let mut push = |vs: Vec<usize>| {
        let seq = DegreeSequence(vs.iter().map(|&x| t.degree(x)).collect()).undirected();
        let mut bits = vec![0u64; words];
        for x in vs {
            bits[x / 64] |= 1 << (x % 64);
        }
        buckets.entry(seq).or_default().push(bits);
    };
    if r == 1 {
        (0..t.order()).for_each(|v| push(vec![v]));
    } else {
        tp.pairs_at(r - 1).for_each(|(u, v)| push(tp.path(u, v)));
    }
    buckets.into_par_iter().any(|(_, paths)| {
        paths.iter().enumerate().any(|(i, a)| {
            paths[i + 1..]
                .iter()
                .any(|b| a.iter().zip(b).all(|(x, y)| x & y == 0))
        })
    })
}

/// No two vertex-disjoint `r`-vertex paths share a degree sequence.
pub fn is_r_fine(t: &Graph, r: usize) -> Result<bool> {
    if r == 0 {
        return Err(Error::ZeroRadius);
    }
    let tp = TreePaths::new(t)?;
    Ok(!has_disjoint_twins(t, &tp, r))
}

/// The least `r ≤ cap` for which `t` is `r`-fine.
pub fn fineness(t: &Graph, cap: usize) -> Result<Fineness> {
    if cap == 0 {
        return Err(Error::ZeroRadius);
    }
    let tp = TreePaths::new(t)?;
    Ok((1..=cap)
        .find(|&r| !has_disjoint_twins(t, &tp, r))
        .map_or(Fineness::CapExceeded(cap), Fineness::Exact))
}

/// Midpoints of pairs at distance exactly `2r`.
pub fn yuppie_set(g: &Graph, r: usize) -> Result<BTreeSet<usize>> {
    if r == 0 {
        return Err(Error::ZeroRadius);
    }
    let dist = g.all_distances();
    let n = g.order();
    let mut out = BTreeSet::new();
    for u in 0..n {
        for w in u + 1..n {
            if dist[u][w] != Some(2 * r) {
                continue;
            }
            out.extend((0..n).filter(|&v| dist[u][v] == Some(r) && dist[v][w] == Some(r)));
        }
    }
    Ok(out)
}

/// Directed degree sequences from `w` to every vertex at distance `r`.
pub fn ch_set(t: &Graph, w: usize, r: usize) -> Result<BTreeSet<DegreeSequence>> {
    t.check_vertex(w)?;
    let tp = TreePaths::new(t)?;
    Ok((0..t.order())
        .filter(|&x| tp.dist[w][x] == r)
        .map(|x| DegreeSequence(tp.path(w, x)[1..].iter().map(|&y| t.degree(y)).collect()))
        .collect())
}

/// Pairs `{a, b}` of neighbors of `v` whose edges to `v` lie on a common
/// pseudo-facial cycle of length at most `fmax`.
pub fn adjoining_pairs(g: &Graph, v: usize, fmax: usize) -> Result<BTreeSet<Edge>> {
    g.check_vertex(v)?;
    Ok(adjoining_pairs_among(&pseudo_facial_cycles(g), v, fmax))
}

/// As [`adjoining_pairs`], over a precomputed cycle list.
pub fn adjoining_pairs_among(cycles: &[Cycle], v: usize, fmax: usize) -> BTreeSet<Edge> {
    bunch(cycles, v, fmax).into_iter().map(|(p, _)| p).collect()
}

fn bunch(cycles: &[Cycle], v: usize, fmax: usize) -> Vec<(Edge, usize)> {
    cycles
        .iter()
        .filter(|c| c.len() <= fmax)
        .filter_map(|c| {
            let i = c.position(v)?;
            let k = c.len();
            let vs = c.vertices();
            Some((edge(vs[(i + k - 1) % k], vs[(i + 1) % k]), k))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Subwords {
    Defined(BTreeSet<Vec<usize>>),
    /// The adjoining relation at the vertex is not a spanning path.
    Undefined,
}

/// Length-`r` subwords of the cycle sizes met when walking the adjoining
/// path at `v`, in both directions.
pub fn vertex_subword_set(g: &Graph, v: usize, fmax: usize, r: usize) -> Result<Subwords> {
    g.check_vertex(v)?;
    Ok(subwords_among(g, &pseudo_facial_cycles(g), v, fmax, r))
}

pub fn subwords_among(g: &Graph, cycles: &[Cycle], v: usize, fmax: usize, r: usize) -> Subwords {
    let items = bunch(cycles, v, fmax);
    let Some(order) = spanning_path(g.neighbors(v), &items) else {
        return Subwords::Undefined;
    };
    let size: BTreeMap<Edge, usize> = items.into_iter().collect();
    let s1: Vec<usize> = order.windows(2).map(|w| size[&edge(w[0], w[1])]).collect();
    let s2: Vec<usize> = s1.iter().rev().copied().collect();
    let mut out = BTreeSet::new();
    for s in [s1, s2] {
        if r == 0 {
            out.insert(Vec::new());
        } else {
            out.extend(s.windows(r).map(|w| w.to_vec()));
        }
    }
    Subwords::Defined(out)
}

/// The vertex order of the path formed by `items` on `vertices`, if it is one.
fn spanning_path(vertices: &[usize], items: &[(Edge, usize)]) -> Option<Vec<usize>> {
    let pairs: BTreeSet<Edge> = items.iter().map(|&(p, _)| p).collect();
    if pairs.len() != items.len() || pairs.len() + 1 != vertices.len() {
        return None;
    }
    let deg = |x: usize| pairs.iter().filter(|&&(a, b)| a == x || b == x).count();
    if vertices.len() == 1 {
        return Some(vertices.to_vec());
    }
    let start = *vertices.iter().find(|&&x| deg(x) == 1)?;
    let mut order = vec![start];
    let mut prev = usize::MAX;
    loop {
        let cur = *order.last().unwrap();
        let next = pairs.iter().find_map(|&(a, b)| match (a == cur, b == cur) {
            (true, _) if b != prev => Some(b),
            (_, true) if a != prev => Some(a),
            _ => None,
        });
        match next {
            Some(x) if !order.contains(&x) => {
                prev = cur;
                order.push(x);
            }
            Some(_) => return None,
            None => break,
        }
    }
    (order.len() == vertices.len()).then_some(order)
}

/// The most vertices on an induced path of degree-2 vertices. A cycle made
/// entirely of degree-2 vertices contributes its length minus one.
pub fn longest_degree_two_induced_path(g: &Graph) -> usize {
    let twos: Vec<usize> = (0..g.order()).filter(|&v| g.degree(v) == 2).collect();
    let sub = g.induced(&twos);
    sub.components()
        .iter()
        .map(|comp| {
            let edges = comp.iter().map(|&v| sub.degree(v)).sum::<usize>() / 2;
            if edges == comp.len() {
                comp.len() - 1
            } else {
                comp.len()
            }
        })
        .max()
        .unwrap_or(0)
}
