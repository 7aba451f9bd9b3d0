//! Finite simple undirected graphs on dense vertex indices `0..n`.
//!
//! Everything above this module refers to vertices by index. Graphs are
//! immutable once built; metrics are recomputed by breadth-first search on
//! demand.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Edge = (usize, usize);

/// Normalizes an unordered pair to `(min, max)`.
#[inline]
pub fn edge(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A natural number or infinity. `Finite` sorts before `Infinite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtNat {
    Finite(usize),
    Infinite,
}

impl ExtNat {
    pub fn finite(self) -> Option<usize> {
        match self {
            ExtNat::Finite(d) => Some(d),
            ExtNat::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtNat::Finite(_))
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Finite(d) => write!(f, "{d}"),
            ExtNat::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    edges: Vec<Edge>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![Vec::new(); n],
            edges: Vec::new(),
        }
    }

    /// Builds a graph, rejecting self-loops and out-of-range endpoints.
    /// Duplicate pairs collapse.
    pub fn new(n: usize, pairs: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in pairs {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, order: n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            set.insert(edge(u, v));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &set {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            adj,
            edges: set.into_iter().collect(),
        })
    }

    pub fn cycle(n: usize) -> Self {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle of order >= 3")
    }

    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
    }

    pub fn complete(n: usize) -> Self {
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("valid")
    }

    pub fn star(leaves: usize) -> Self {
        Graph::new(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("valid star")
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as sorted `(u, v)` pairs with `u < v`, in lexicographic order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Position of `{u, v}` in [`Graph::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&edge(u, v)).ok()
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.n,
            })
        }
    }

    /// BFS distances from `source`; `None` marks unreachable vertices.
    pub fn bfs(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            let dx = dist[x].unwrap() + 1;
            for &y in &self.adj[x] {
                if dist[y].is_none() {
                    dist[y] = Some(dx);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    pub fn all_distances(&self) -> Vec<Vec<Option<usize>>> {
        (0..self.n).map(|v| self.bfs(v)).collect()
    }

    pub fn distance(&self, u: usize, v: usize) -> Result<ExtNat> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.bfs(u)[v].map_or(ExtNat::Infinite, ExtNat::Finite))
    }

    pub fn diameter(&self) -> Result<ExtNat> {
        if self.n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut best = 0;
        for v in 0..self.n {
            for d in self.bfs(v) {
                match d {
                    Some(d) => best = best.max(d),
                    None => return Ok(ExtNat::Infinite),
                }
            }
        }
        Ok(ExtNat::Finite(best))
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.bfs(0).iter().all(Option::is_some)
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.edges.len() == self.n - 1 && self.is_connected()
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                let x = comp[i];
                i += 1;
                for &y in &self.adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The line graph; vertex `i` of the result is `self.edges()[i]`.
    pub fn line_graph(&self) -> (Graph, Vec<Edge>) {
        let m = self.edges.len();
        let mut pairs = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                let (a, b) = self.edges[i];
                let (c, d) = self.edges[j];
                if a == c || a == d || b == c || b == d {
                    pairs.push((i, j));
                }
            }
        }
        (Graph::new(m, pairs).expect("valid"), self.edges.clone())
    }

    /// `G \ X` with the order-preserving old-to-new index map.
    pub fn remove_vertices(&self, removed: &BTreeSet<usize>) -> (Graph, Vec<Option<usize>>) {
        let mut map = vec![None; self.n];
        let mut next = 0;
        for (v, slot) in map.iter_mut().enumerate() {
            if !removed.contains(&v) {
                *slot = Some(next);
                next += 1;
            }
        }
        let pairs = self
            .edges
            .iter()
            .filter_map(|&(u, v)| Some((map[u]?, map[v]?)));
        (Graph::new(next, pairs).expect("valid"), map)
    }

    pub fn induced(&self, keep: &[usize]) -> Graph {
        let keep_set: BTreeSet<usize> = keep.iter().copied().collect();
        let removed = (0..self.n).filter(|v| !keep_set.contains(v)).collect();
        self.remove_vertices(&removed).0
    }

    /// Distance and the exact number of shortest `u`-`v` paths.
    pub fn shortest_path_stats(&self, u: usize, v: usize) -> Result<(ExtNat, BigUint)> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SameVertex(u));
        }
        let (dist, count) = self.path_counts(u);
        Ok(match dist[v] {
            Some(d) => (ExtNat::Finite(d), count[v].clone()),
            None => (ExtNat::Infinite, BigUint::zero()),
        })
    }

    /// BFS layering from `source` with shortest-path counts per vertex.
    pub fn path_counts(&self, source: usize) -> (Vec<Option<usize>>, Vec<BigUint>) {
        let mut dist = vec![None; self.n];
        let mut count = vec![BigUint::zero(); self.n];
        dist[source] = Some(0);
        count[source] = BigUint::one();
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            let dx = dist[x].unwrap();
            for &y in &self.adj[x] {
                match dist[y] {
                    None => {
                        dist[y] = Some(dx + 1);
                        count[y] = count[x].clone();
                        queue.push_back(y);
                    }
                    Some(dy) if dy == dx + 1 => {
                        let add = count[x].clone();
                        count[y] += add;
                    }
                    _ => {}
                }
            }
        }
        (dist, count)
    }

    /// Up to `limit` shortest `u`-`v` paths as vertex sequences from `u`.
    pub fn shortest_paths(&self, u: usize, v: usize, limit: usize) -> Vec<Vec<usize>> {
        let dist = self.bfs(u);
        let mut out = Vec::new();
        if dist[v].is_none() || limit == 0 {
            return out;
        }
        let mut stack = vec![v];
        self.unwind(&dist, &mut stack, &mut out, limit);
        out
    }

    fn unwind(
        &self,
        dist: &[Option<usize>],
        stack: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        limit: usize,
    ) {
        let x = *stack.last().unwrap();
        let dx = dist[x].unwrap();
        if dx == 0 {
            out.push(stack.iter().rev().copied().collect());
            return;
        }
        for &y in &self.adj[x] {
            if out.len() >= limit {
                return;
            }
            if dist[y] == Some(dx - 1) {
                stack.push(y);
                self.unwind(dist, stack, out, limit);
                stack.pop();
            }
        }
    }

    /// Some isomorphism `self -> other` as `map[v] = image of v`.
    ///
    /// Plain backtracking with degree and neighbor-degree refinement; meant
    /// for graphs of order up to about a dozen.
    pub fn isomorphism(&self, other: &Graph) -> Option<Vec<usize>> {
        if self.n != other.n || self.edges.len() != other.edges.len() {
            return None;
        }
        let sig_a = self.signatures();
        let sig_b = other.signatures();
        let mut sa = sig_a.clone();
        let mut sb = sig_b.clone();
        sa.sort();
        sb.sort();
        if sa != sb {
            return None;
        }
        // Map high-constraint vertices first, preferring neighbors of mapped ones.
        let mut order = Vec::with_capacity(self.n);
        let mut placed = vec![false; self.n];
        while order.len() < self.n {
            let next = (0..self.n)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| {
                    let linked = self.adj[v].iter().filter(|&&w| placed[w]).count();
                    (linked, self.degree(v), std::cmp::Reverse(v))
                })
                .unwrap();
            placed[next] = true;
            order.push(next);
        }
        let candidates: Vec<Vec<usize>> = (0..self.n)
            .map(|v| (0..other.n).filter(|&w| sig_b[w] == sig_a[v]).collect())
            .collect();
        let mut map = vec![usize::MAX; self.n];
        let mut used = vec![false; other.n];
        if self.iso_extend(other, &order, 0, &candidates, &mut map, &mut used) {
            Some(map)
        } else {
            None
        }
    }

    pub fn is_isomorphic(&self, other: &Graph) -> bool {
        self.isomorphism(other).is_some()
    }

    fn signatures(&self) -> Vec<(usize, Vec<usize>)> {
        (0..self.n)
            .map(|v| {
                let mut nd: Vec<usize> = self.adj[v].iter().map(|&w| self.degree(w)).collect();
                nd.sort_unstable();
                (self.degree(v), nd)
            })
            .collect()
    }

    fn iso_extend(
        &self,
        other: &Graph,
        order: &[usize],
        depth: usize,
        candidates: &[Vec<usize>],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let v = order[depth];
        for &w in &candidates[v] {
            if used[w] {
                continue;
            }
            let consistent = order[..depth]
                .iter()
                .all(|&x| self.has_edge(v, x) == other.has_edge(w, map[x]));
            if !consistent {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if self.iso_extend(other, order, depth + 1, candidates, map, used) {
                return true;
            }
            used[w] = false;
        }
        map[v] = usize::MAX;
        false
    }

    /// Relabels vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        Graph::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v]))).expect("permutation")
    }

    /// Serializes to the `graph <n>` / `e <u> <v>` text format.
    pub fn to_text(&self) -> String {
        let mut s = format!("graph {}\n", self.n);
        for &(u, v) in &self.edges {
            s.push_str(&format!("e {u} {v}\n"));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (lineno, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing `graph <n>` header".into(),
        })?;
        let n = match header.split_whitespace().collect::<Vec<_>>()[..] {
            ["graph", n] => parse_num(n, lineno)?,
            _ => {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("expected `graph <n>`, found `{header}`"),
                })
            }
        };
        let mut pairs = Vec::new();
        for (lineno, line) in lines {
            match line.split_whitespace().collect::<Vec<_>>()[..] {
                ["e", u, v] => pairs.push((parse_num(u, lineno)?, parse_num(v, lineno)?)),
                _ => {
                    return Err(Error::Parse {
                        line: lineno,
                        message: format!("expected `e <u> <v>`, found `{line}`"),
                    })
                }
            }
        }
        Graph::new(n, pairs).map_err(|e| Error::Parse {
            line: 0,
            message: e.to_string(),
        })
    }
}

/// Non-empty, non-comment lines with 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub(crate) fn parse_num(tok: &str, line: usize) -> Result<usize> {
    tok.parse().map_err(|_| Error::Parse {
        line,
        message: format!("`{tok}` is not a natural number"),
    })
}

/// A cycle in canonical form: the lexicographically least vertex sequence
/// over all rotations and both directions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle(Vec<usize>);

impl Cycle {
    pub fn new(vertices: Vec<usize>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidCycle(format!(
                "length {} is below 3",
                vertices.len()
            )));
        }
        let distinct: BTreeSet<_> = vertices.iter().collect();
        if distinct.len() != vertices.len() {
            return Err(Error::InvalidCycle("repeated vertex".into()));
        }
        let len = vertices.len();
        let start = (0..len).min_by_key(|&i| vertices[i]).unwrap();
        let fwd = vertices[(start + 1) % len];
        let back = vertices[(start + len - 1) % len];
        let canon = if fwd < back {
            (0..len).map(|k| vertices[(start + k) % len]).collect()
        } else {
            (0..len).map(|k| vertices[(start + len - k) % len]).collect()
        };
        Ok(Cycle(canon))
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn position(&self, v: usize) -> Option<usize> {
        self.0.iter().position(|&x| x == v)
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }

    /// The cycle's edges as sorted pairs, in traversal order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let len = self.0.len();
        (0..len).map(move |i| edge(self.0[i], self.0[(i + 1) % len]))
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        match (self.position(u), self.position(v)) {
            (Some(i), Some(j)) => {
                let d = i.abs_diff(j);
                d == 1 || d == self.len() - 1
            }
            _ => false,
        }
    }

    /// Whether every consecutive pair is an edge of `g`.
    pub fn lies_in(&self, g: &Graph) -> bool {
        self.0.iter().all(|&v| v < g.order()) && self.edges().all(|(u, v)| g.has_edge(u, v))
    }

    /// The two arcs between `u` and `v`, each running from `u` to `v`,
    /// shorter first (ties keep the forward arc first).
    pub fn split(&self, u: usize, v: usize) -> Option<(Vec<usize>, Vec<usize>)> {
        let i = self.position(u)?;
        let j = self.position(v)?;
        if i == j {
            return None;
        }
        let len = self.len();
        let fwd: Vec<usize> = (0..=(j + len - i) % len).map(|k| self.0[(i + k) % len]).collect();
        let back: Vec<usize> = (0..=(i + len - j) % len)
            .map(|k| self.0[(i + len - k) % len])
            .collect();
        if back.len() < fwd.len() {
            Some((back, fwd))
        } else {
            Some((fwd, back))
        }
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disjoint_triangles() -> Graph {
        Graph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap()
    }

    #[test]
    fn distances() {
        let p = Graph::path(3);
        assert_eq!(p.distance(0, 2).unwrap(), ExtNat::Finite(2));
        assert_eq!(Graph::empty(2).distance(0, 1).unwrap(), ExtNat::Infinite);
        assert_eq!(Graph::cycle(6).distance(0, 3).unwrap(), ExtNat::Finite(3));
        assert_eq!(p.distance(1, 1).unwrap(), ExtNat::Finite(0));
        assert!(p.distance(0, 3).is_err());
    }

    #[test]
    fn diameters() {
        assert_eq!(Graph::cycle(6).diameter().unwrap(), ExtNat::Finite(3));
        assert_eq!(Graph::complete(4).diameter().unwrap(), ExtNat::Finite(1));
        let two_edges = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(two_edges.diameter().unwrap(), ExtNat::Infinite);
        assert_eq!(Graph::empty(1).diameter().unwrap(), ExtNat::Finite(0));
        assert_eq!(Graph::empty(0).diameter(), Err(Error::EmptyGraph));
    }

    #[test]
    fn line_graphs() {
        let (l, labels) = Graph::path(3).line_graph();
        assert_eq!(l.order(), 2);
        assert_eq!(l.edge_count(), 1);
        assert_eq!(labels, vec![(0, 1), (1, 2)]);
        assert!(Graph::cycle(3).line_graph().0.is_isomorphic(&Graph::cycle(3)));
        assert!(Graph::star(3).line_graph().0.is_isomorphic(&Graph::complete(3)));
    }

    #[test]
    fn vertex_removal() {
        let (g, map) = Graph::cycle(4).remove_vertices(&BTreeSet::from([0]));
        assert!(g.is_isomorphic(&Graph::path(3)));
        assert_eq!(map, vec![None, Some(0), Some(1), Some(2)]);
        let c5 = Graph::cycle(5);
        assert_eq!(c5.remove_vertices(&BTreeSet::new()).0, c5);
        let (k2, _) = Graph::complete(4).remove_vertices(&BTreeSet::from([1, 3]));
        assert_eq!(k2, Graph::complete(2));
    }

    #[test]
    fn path_statistics() {
        let two = BigUint::from(2u32);
        let one = BigUint::one();
        assert_eq!(
            Graph::cycle(6).shortest_path_stats(0, 3).unwrap(),
            (ExtNat::Finite(3), two)
        );
        assert_eq!(
            Graph::path(3).shortest_path_stats(0, 2).unwrap(),
            (ExtNat::Finite(2), one.clone())
        );
        assert_eq!(
            Graph::cycle(5).shortest_path_stats(0, 2).unwrap(),
            (ExtNat::Finite(2), one)
        );
        assert_eq!(
            Graph::cycle(5).shortest_path_stats(1, 1),
            Err(Error::SameVertex(1))
        );
    }

    #[test]
    fn path_counts_grow_beyond_machine_words() {
        // Stacked diamonds: every layer doubles the number of shortest paths.
        let layers = 70;
        let mut pairs = Vec::new();
        for k in 0..layers {
            let base = 3 * k;
            pairs.extend([(base, base + 1), (base, base + 2), (base + 1, base + 3), (base + 2, base + 3)]);
        }
        let g = Graph::new(3 * layers + 1, pairs).unwrap();
        let (d, c) = g.shortest_path_stats(0, 3 * layers).unwrap();
        assert_eq!(d, ExtNat::Finite(2 * layers));
        assert_eq!(c, BigUint::one() << layers);
    }

    #[test]
    fn isomorphism_examples() {
        let c4 = Graph::cycle(4);
        let shuffled = Graph::new(4, [(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap();
        let map = c4.isomorphism(&shuffled).unwrap();
        for &(u, v) in c4.edges() {
            assert!(shuffled.has_edge(map[u], map[v]));
        }
        assert!(!c4.is_isomorphic(&Graph::path(4)));
        assert!(!Graph::cycle(6).is_isomorphic(&disjoint_triangles()));
    }

    #[test]
    fn canonical_cycles() {
        let a = Cycle::new(vec![3, 1, 2, 0]).unwrap();
        let b = Cycle::new(vec![0, 2, 1, 3]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.vertices(), &[0, 2, 1, 3]);
        assert!(Cycle::new(vec![0, 1]).is_err());
        assert!(Cycle::new(vec![0, 1, 0]).is_err());
        let c = Cycle::new(vec![0, 1, 2, 3, 4]).unwrap();
        let (p1, p2) = c.split(0, 2).unwrap();
        assert_eq!(p1, vec![0, 1, 2]);
        assert_eq!(p2, vec![0, 4, 3, 2]);
    }

    #[test]
    fn text_format_is_exact() {
        let g = Graph::new(3, [(2, 1), (0, 1)]).unwrap();
        assert_eq!(g.to_text(), "graph 3\ne 0 1\ne 1 2\n");
        let parsed = Graph::from_text("# comment\ngraph 3\ne 1 2\n\ne 0 1\n").unwrap();
        assert_eq!(parsed, g);
        assert!(Graph::from_text("graph 2\ne 0 2\n").is_err());
        assert!(Graph::from_text("polygon 3\n").is_err());
    }
}
