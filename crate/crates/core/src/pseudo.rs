//! Pseudo-facial cycles, shortest biconnections and pseudo-BOP recognition.
//!
//! Two routes decide whether a cycle is pseudo-facial. The oracle route
//! enumerates every simple cycle and applies the definition directly; it is
//! exponential and exists to validate the boundary-like route, which only
//! needs breadth-first path counting.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::graph::{edge, Cycle, Edge, ExtNat, Graph};

/// Every simple cycle of `g`, each listed once. Exponential.
pub fn all_cycles(g: &Graph) -> Vec<Cycle> {
    let n = g.order();
    let mut out = Vec::new();
    let mut path = Vec::new();
    let mut on_path = vec![false; n];
    for start in 0..n {
        path.push(start);
        on_path[start] = true;
        cycle_dfs(g, start, &mut path, &mut on_path, &mut out);
        on_path[start] = false;
        path.pop();
    }
    out
}

// Cycles rooted at their least vertex; the second vertex is below the last
// so each cycle appears in one direction only.
fn cycle_dfs(g: &Graph, start: usize, path: &mut Vec<usize>, on_path: &mut [bool], out: &mut Vec<Cycle>) {
    let last = *path.last().unwrap();
    for &next in g.neighbors(last) {
        if next == start && path.len() >= 3 && path[1] < last {
            out.push(Cycle::new(path.clone()).expect("simple cycle"));
        }
        if next > start && !on_path[next] {
            on_path[next] = true;
            path.push(next);
            cycle_dfs(g, start, path, on_path, out);
            path.pop();
            on_path[next] = false;
        }
    }
}

fn distinct_pair(g: &Graph, u: usize, v: usize) -> Result<()> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if u == v {
        return Err(Error::SameVertex(u));
    }
    Ok(())
}

/// Minimum length of a cycle through both `u` and `v` (oracle-grade).
pub fn girth_via(g: &Graph, u: usize, v: usize) -> Result<ExtNat> {
    distinct_pair(g, u, v)?;
    Ok(all_cycles(g)
        .iter()
        .filter(|c| c.contains(u) && c.contains(v))
        .map(|c| ExtNat::Finite(c.len()))
        .min()
        .unwrap_or(ExtNat::Infinite))
}

/// The unique cycle of minimum length through `u` and `v`, if unique.
pub fn shortest_cycle_via(g: &Graph, u: usize, v: usize) -> Result<Option<Cycle>> {
    distinct_pair(g, u, v)?;
    Ok(PseudoFacialOracle::new(g).shortest_cycle_via(u, v))
}

/// Cycle-enumeration oracle with the per-pair minimum cycles cached.
pub struct PseudoFacialOracle {
    cycles: Vec<Cycle>,
    // (u, v) with u < v -> (girth through the pair, cycles attaining it)
    by_pair: BTreeMap<Edge, (usize, Vec<usize>)>,
}

impl PseudoFacialOracle {
    pub fn new(g: &Graph) -> Self {
        let cycles = all_cycles(g);
        let mut by_pair: BTreeMap<Edge, (usize, Vec<usize>)> = BTreeMap::new();
        for (idx, c) in cycles.iter().enumerate() {
            let vs = c.vertices();
            for (a, &x) in vs.iter().enumerate() {
                for &y in &vs[a + 1..] {
                    let entry = by_pair.entry(edge(x, y)).or_insert((usize::MAX, Vec::new()));
                    if c.len() < entry.0 {
                        *entry = (c.len(), vec![idx]);
                    } else if c.len() == entry.0 {
                        entry.1.push(idx);
                    }
                }
            }
        }
        PseudoFacialOracle { cycles, by_pair }
    }

    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    pub fn girth_via(&self, u: usize, v: usize) -> ExtNat {
        self.by_pair
            .get(&edge(u, v))
            .map_or(ExtNat::Infinite, |(len, _)| ExtNat::Finite(*len))
    }

    pub fn shortest_cycle_via(&self, u: usize, v: usize) -> Option<Cycle> {
        match self.by_pair.get(&edge(u, v)) {
            Some((_, hits)) if hits.len() == 1 => Some(self.cycles[hits[0]].clone()),
            _ => None,
        }
    }

    /// The definition: `c` is the shortest cycle via each of its
    /// non-adjacent vertex pairs.
    pub fn is_pseudo_facial(&self, c: &Cycle) -> bool {
        if !self.cycles.contains(c) {
            return false;
        }
        non_adjacent_pairs(c).all(|(u, v)| self.shortest_cycle_via(u, v).as_ref() == Some(c))
    }
}

pub fn is_pseudo_facial_oracle(g: &Graph, c: &Cycle) -> bool {
    PseudoFacialOracle::new(g).is_pseudo_facial(c)
}

fn non_adjacent_pairs(c: &Cycle) -> impl Iterator<Item = (usize, usize)> + '_ {
    let vs = c.vertices();
    let len = vs.len();
    (0..len).flat_map(move |i| {
        (i + 2..len)
            .filter(move |&j| !(i == 0 && j == len - 1))
            .map(move |j| (vs[i], vs[j]))
    })
}

/// The two arcs into which `u` and `v` split a cycle; `p1` is no longer than
/// `p2` and both run from `u` to `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiconnectionSplit {
    pub p1: Vec<usize>,
    pub p2: Vec<usize>,
}

impl BiconnectionSplit {
    pub fn of(c: &Cycle, u: usize, v: usize) -> Result<Self> {
        let (p1, p2) = c.split(u, v).ok_or(Error::NotASplitPair { u, v })?;
        Ok(BiconnectionSplit { p1, p2 })
    }

    /// Edge count of the shorter arc.
    pub fn short_len(&self) -> usize {
        self.p1.len() - 1
    }

    pub fn long_len(&self) -> usize {
        self.p2.len() - 1
    }

    pub fn antipodal(&self) -> bool {
        self.p1.len() == self.p2.len()
    }
}

fn check_cycle(g: &Graph, c: &Cycle) -> Result<()> {
    if c.lies_in(g) {
        Ok(())
    } else {
        Err(Error::InvalidCycle(format!("{c} is not a cycle of the graph")))
    }
}

/// Whether `c` is the shortest biconnection of `u` and `v`.
pub fn is_shortest_biconnection(g: &Graph, c: &Cycle, u: usize, v: usize) -> Result<bool> {
    let split = BiconnectionSplit::of(c, u, v)?;
    if split.short_len() < 2 {
        return Err(Error::NotASplitPair { u, v });
    }
    Ok(biconnection_holds(g, &split))
}

fn biconnection_holds(g: &Graph, split: &BiconnectionSplit) -> bool {
    let (u, v) = (split.p1[0], *split.p1.last().unwrap());
    let (dist, count) = g.shortest_path_stats(u, v).expect("distinct vertices");
    if dist != ExtNat::Finite(split.short_len()) {
        return false;
    }
    if split.antipodal() {
        return count == BigUint::from(2u32);
    }
    if !count.is_one() {
        return false;
    }
    // Any path of length <= |P2| avoiding P1's interior is a shortest path in
    // the reduced graph exactly when the reduced distance equals |P2|.
    let interior: BTreeSet<usize> = split.p1[1..split.p1.len() - 1].iter().copied().collect();
    let (reduced, map) = g.remove_vertices(&interior);
    let (rd, rc) = reduced
        .shortest_path_stats(map[u].unwrap(), map[v].unwrap())
        .expect("distinct vertices");
    rd == ExtNat::Finite(split.long_len()) && rc.is_one()
}

/// Whether `c` is the shortest biconnection of every non-adjacent pair.
pub fn is_boundary_like(g: &Graph, c: &Cycle) -> Result<bool> {
    check_cycle(g, c)?;
    Ok(non_adjacent_pairs(c)
        .all(|(u, v)| biconnection_holds(g, &BiconnectionSplit::of(c, u, v).expect("on cycle"))))
}

/// All pseudo-facial cycles, sorted by canonical form.
pub fn pseudo_facial_cycles(g: &Graph) -> Vec<Cycle> {
    let n = g.order();
    let mut found = BTreeSet::new();
    for &(u, v) in g.edges() {
        for &w in g.neighbors(v) {
            if w > v && g.has_edge(u, w) {
                found.insert(Cycle::new(vec![u, v, w]).expect("triangle"));
            }
        }
    }
    for u in 0..n {
        let dist = g.bfs(u);
        for v in u + 1..n {
            if dist[v].map_or(true, |d| d < 2) {
                continue;
            }
            if let Some(c) = candidate_cycle(g, u, v) {
                if is_boundary_like(g, &c).unwrap_or(false) {
                    found.insert(c);
                }
            }
        }
    }
    found.into_iter().collect()
}

// The cycle a pseudo-facial cycle through non-adjacent u, v would have to be:
// the two shortest paths (antipodal case) or the unique shortest path plus
// the unique shortest path avoiding its interior.
fn candidate_cycle(g: &Graph, u: usize, v: usize) -> Option<Cycle> {
    let shortest = g.shortest_paths(u, v, 3);
    let (p1, p2) = match shortest.len() {
        2 => (shortest[0].clone(), shortest[1].clone()),
        1 => {
            let p1 = shortest.into_iter().next().unwrap();
            let interior: BTreeSet<usize> = p1[1..p1.len() - 1].iter().copied().collect();
            let (reduced, map) = g.remove_vertices(&interior);
            let back: Vec<usize> = (0..map.len()).filter(|&old| map[old].is_some()).collect();
            let alt = reduced.shortest_paths(map[u]?, map[v]?, 2);
            if alt.len() != 1 {
                return None;
            }
            (p1, alt[0].iter().map(|&x| back[x]).collect())
        }
        _ => return None,
    };
    let mut verts = p1.clone();
    verts.extend(p2[1..p2.len() - 1].iter().rev());
    Cycle::new(verts).ok()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PseudoBopViolation {
    /// Condition 1.
    IsolatedVertex(usize),
    /// Condition 2: the edge lies on no pseudo-facial cycle.
    UncoveredEdge(Edge),
    /// Condition 2: the edge lies on more than two pseudo-facial cycles.
    OvercoveredEdge { edge: Edge, count: usize },
    /// Condition 3: both edges of `cycle` at `vertex` are outer, yet
    /// `vertex` lies on another pseudo-facial cycle.
    OuterCorner { vertex: usize, cycle: Cycle },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudoBopReport {
    pub is_pseudo_bop: bool,
    pub cycles: Vec<Cycle>,
    /// Edges on exactly one pseudo-facial cycle.
    pub outer_edges: Vec<Edge>,
    pub violations: Vec<PseudoBopViolation>,
}

pub fn check_pseudo_bop(g: &Graph) -> PseudoBopReport {
    let cycles = pseudo_facial_cycles(g);
    let mut violations = Vec::new();
    for v in 0..g.order() {
        if g.degree(v) == 0 {
            violations.push(PseudoBopViolation::IsolatedVertex(v));
        }
    }
    let mut cover: BTreeMap<Edge, usize> = g.edges().iter().map(|&e| (e, 0)).collect();
    for c in &cycles {
        for e in c.edges() {
            *cover.get_mut(&e).expect("cycle edges are graph edges") += 1;
        }
    }
    for (&e, &count) in &cover {
        match count {
            0 => violations.push(PseudoBopViolation::UncoveredEdge(e)),
            1 | 2 => {}
            _ => violations.push(PseudoBopViolation::OvercoveredEdge { edge: e, count }),
        }
    }
    let outer_edges: Vec<Edge> = cover.iter().filter(|(_, &c)| c == 1).map(|(&e, _)| e).collect();
    let is_outer = |a: usize, b: usize| cover.get(&edge(a, b)) == Some(&1);
    for c in &cycles {
        let vs = c.vertices();
        let len = vs.len();
        for i in 0..len {
            let (prev, v, next) = (vs[(i + len - 1) % len], vs[i], vs[(i + 1) % len]);
            if is_outer(prev, v) && is_outer(v, next) && cycles.iter().any(|d| d != c && d.contains(v)) {
                violations.push(PseudoBopViolation::OuterCorner {
                    vertex: v,
                    cycle: c.clone(),
                });
            }
        }
    }
    PseudoBopReport {
        is_pseudo_bop: violations.is_empty(),
        cycles,
        outer_edges,
        violations,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    /// `u` and `v` are antipodal.
    Empty,
    Short,
    Long,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coordinates {
    pub branch: Branch,
    /// Distance from `u` along the arc containing `w`.
    pub dist: usize,
}

/// Coordinates of `w` on `c` relative to the split pair `u`, `v`.
pub fn cycle_coordinates(c: &Cycle, u: usize, v: usize, w: usize) -> Result<Coordinates> {
    if !c.contains(w) {
        return Err(Error::NotOnCycle(w));
    }
    let split = BiconnectionSplit::of(c, u, v)?;
    let default_branch = if split.antipodal() { Branch::Empty } else { Branch::Short };
    if w == u {
        return Ok(Coordinates { branch: default_branch, dist: 0 });
    }
    if w == v {
        return Ok(Coordinates {
            branch: default_branch,
            dist: split.short_len(),
        });
    }
    if let Some(d) = split.p1.iter().position(|&x| x == w) {
        return Ok(Coordinates { branch: default_branch, dist: d });
    }
    let d = split.p2.iter().position(|&x| x == w).expect("w is on one arc");
    let branch = if split.antipodal() { Branch::Empty } else { Branch::Long };
    Ok(Coordinates { branch, dist: d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bop::Dissection;

    fn cyc(v: &[usize]) -> Cycle {
        Cycle::new(v.to_vec()).unwrap()
    }

    fn square_with_chord() -> Graph {
        Dissection::new(4, [(0, 2)]).unwrap().graph()
    }

    #[test]
    fn cycle_enumeration_counts() {
        // K4 has 4 triangles and 3 four-cycles.
        assert_eq!(all_cycles(&Graph::complete(4)).len(), 7);
        // K5: 10 + 15 + 12.
        assert_eq!(all_cycles(&Graph::complete(5)).len(), 37);
        assert_eq!(all_cycles(&Graph::path(5)).len(), 0);
        assert_eq!(all_cycles(&square_with_chord()).len(), 3);
    }

    #[test]
    fn girth_via_examples() {
        assert_eq!(girth_via(&Graph::complete(4), 0, 3).unwrap(), ExtNat::Finite(3));
        assert_eq!(girth_via(&Graph::cycle(5), 1, 3).unwrap(), ExtNat::Finite(5));
        assert_eq!(girth_via(&Graph::path(4), 0, 2).unwrap(), ExtNat::Infinite);
        assert_eq!(girth_via(&Graph::path(4), 2, 2), Err(Error::SameVertex(2)));
    }

    #[test]
    fn shortest_cycle_via_examples() {
        assert_eq!(
            shortest_cycle_via(&Graph::cycle(5), 0, 2).unwrap(),
            Some(cyc(&[0, 1, 2, 3, 4]))
        );
        // Both triangles on edge {0,1} of K4 tie.
        assert_eq!(shortest_cycle_via(&Graph::complete(4), 0, 1).unwrap(), None);
        // Only the outer 4-cycle passes through 1 and 3.
        assert_eq!(
            shortest_cycle_via(&square_with_chord(), 1, 3).unwrap(),
            Some(cyc(&[0, 1, 2, 3]))
        );
    }

    #[test]
    fn biconnection_examples() {
        let c6 = Graph::cycle(6);
        let full = cyc(&[0, 1, 2, 3, 4, 5]);
        assert!(is_shortest_biconnection(&c6, &full, 0, 3).unwrap());
        let chorded = Dissection::new(6, [(0, 3)]).unwrap().graph();
        assert!(!is_shortest_biconnection(&chorded, &full, 0, 2).unwrap());
        let c5 = Graph::cycle(5);
        assert!(is_shortest_biconnection(&c5, &cyc(&[0, 1, 2, 3, 4]), 0, 2).unwrap());
        assert!(is_shortest_biconnection(&c6, &full, 0, 1).is_err());
        assert!(is_shortest_biconnection(&c6, &full, 0, 7).is_err());
    }

    #[test]
    fn boundary_like_examples() {
        let k4 = Graph::complete(4);
        let oracle = PseudoFacialOracle::new(&k4);
        for t in [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]] {
            assert!(is_boundary_like(&k4, &cyc(&t)).unwrap());
            assert!(oracle.is_pseudo_facial(&cyc(&t)));
        }
        let square = cyc(&[0, 1, 2, 3]);
        assert!(!is_boundary_like(&k4, &square).unwrap());
        assert!(!oracle.is_pseudo_facial(&square));
        let c7 = Graph::cycle(7);
        let whole = cyc(&[0, 1, 2, 3, 4, 5, 6]);
        assert!(is_boundary_like(&c7, &whole).unwrap());
        assert!(is_pseudo_facial_oracle(&c7, &whole));
        assert!(is_boundary_like(&Graph::cycle(4), &whole).is_err());
    }

    #[test]
    fn pseudo_facial_enumeration() {
        let k4 = Graph::complete(4);
        let oracle: Vec<Cycle> = all_cycles(&k4).into_iter().filter(|c| is_pseudo_facial_oracle(&k4, c)).collect();
        let mut sorted = oracle.clone();
        sorted.sort();
        assert_eq!(pseudo_facial_cycles(&k4), sorted);
        assert_eq!(sorted.len(), 4);
        assert_eq!(
            pseudo_facial_cycles(&square_with_chord()),
            vec![cyc(&[0, 1, 2]), cyc(&[0, 2, 3])]
        );
        assert_eq!(pseudo_facial_cycles(&Graph::cycle(6)), vec![cyc(&[0, 1, 2, 3, 4, 5])]);
    }

    #[test]
    fn pseudo_bop_examples() {
        let k4 = check_pseudo_bop(&Graph::complete(4));
        assert!(k4.is_pseudo_bop);
        assert!(k4.outer_edges.is_empty());
        let g = Graph::new(7, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let r = check_pseudo_bop(&g);
        assert!(!r.is_pseudo_bop);
        assert_eq!(r.violations, vec![PseudoBopViolation::IsolatedVertex(6)]);
        let sq = check_pseudo_bop(&square_with_chord());
        assert!(sq.is_pseudo_bop);
        assert_eq!(sq.outer_edges, vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
    }

    #[test]
    fn pseudo_bop_rejects_uncovered_and_overcovered_edges() {
        let r = check_pseudo_bop(&Graph::path(3));
        assert!(r.violations.contains(&PseudoBopViolation::UncoveredEdge((0, 1))));
        // K5: every edge lies on three triangles.
        let r = check_pseudo_bop(&Graph::complete(5));
        assert!(matches!(r.violations[0], PseudoBopViolation::OvercoveredEdge { count: 3, .. }));
    }

    #[test]
    fn pseudo_bop_rejects_outer_corner_touching_another_cycle() {
        // Two triangles glued at vertex 0: each has both edges at 0 outer.
        let bowtie = Graph::new(5, [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)]).unwrap();
        let r = check_pseudo_bop(&bowtie);
        assert!(!r.is_pseudo_bop);
        assert!(r
            .violations
            .iter()
            .all(|v| matches!(v, PseudoBopViolation::OuterCorner { vertex: 0, .. })));
    }

    #[test]
    fn coordinates() {
        let c6 = cyc(&[0, 1, 2, 3, 4, 5]);
        assert_eq!(
            cycle_coordinates(&c6, 0, 3, 1).unwrap(),
            Coordinates { branch: Branch::Empty, dist: 1 }
        );
        let c5 = cyc(&[0, 1, 2, 3, 4]);
        assert_eq!(
            cycle_coordinates(&c5, 0, 2, 1).unwrap(),
            Coordinates { branch: Branch::Short, dist: 1 }
        );
        assert_eq!(
            cycle_coordinates(&c5, 0, 2, 3).unwrap(),
            Coordinates { branch: Branch::Long, dist: 2 }
        );
        assert_eq!(cycle_coordinates(&c5, 0, 2, 0).unwrap().dist, 0);
        assert_eq!(
            cycle_coordinates(&c5, 0, 2, 2).unwrap(),
            Coordinates { branch: Branch::Short, dist: 2 }
        );
        assert_eq!(cycle_coordinates(&c5, 0, 2, 9), Err(Error::NotOnCycle(9)));
    }

    #[test]
    fn coordinates_match_arc_walk() {
        // Walk the long arc by hand: from u=0 the arc 0,4,3,2 reaches 4 at step 1.
        let c5 = cyc(&[0, 1, 2, 3, 4]);
        let walk = [0, 4, 3, 2];
        for (step, &w) in walk.iter().enumerate().skip(1).take(2) {
            assert_eq!(cycle_coordinates(&c5, 0, 2, w).unwrap(), Coordinates { branch: Branch::Long, dist: step });
        }
    }
}
