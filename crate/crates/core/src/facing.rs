//! Facing structures: the dual graph of a (pseudo-)BOP graph together with
//! its layout relation, plus the machinery that reads a plane embedding back
//! out of a tree with layout.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::bop::Dissection;
use crate::error::{Error, Result};
use crate::graph::{content_lines, edge, parse_num, Cycle, Edge, Graph};
use crate::pseudo::check_pseudo_bop;

/// A graph `h` with an auxiliary symmetric relation `layout` and vertex colors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphWithLayout {
    pub h: Graph,
    pub layout: BTreeSet<Edge>,
    pub colors: Vec<u32>,
}

impl GraphWithLayout {
    pub fn new(h: Graph, layout: impl IntoIterator<Item = Edge>) -> Self {
        let colors = vec![0; h.order()];
        GraphWithLayout {
            h,
            layout: layout.into_iter().map(|(u, v)| edge(u, v)).collect(),
            colors,
        }
    }

    pub fn in_layout(&self, u: usize, v: usize) -> bool {
        self.layout.contains(&edge(u, v))
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.h.degree(v) <= 1
    }

    /// Layout neighbors of `v` that are graph neighbors of `u`.
    fn layout_neighbors_within(&self, v: usize, u: usize) -> Vec<usize> {
        self.h
            .neighbors(u)
            .iter()
            .copied()
            .filter(|&w| w != v && self.in_layout(v, w))
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut s = self.h.to_text();
        for &(u, v) in &self.layout {
            s.push_str(&format!("l {u} {v}\n"));
        }
        for (v, &c) in self.colors.iter().enumerate() {
            if c != 0 {
                s.push_str(&format!("c {v} {c}\n"));
            }
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut graph_part = String::new();
        let mut layout = Vec::new();
        let mut colors = Vec::new();
        for (lineno, line) in content_lines(text) {
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks[..] {
                ["l", u, v] => layout.push((parse_num(u, lineno)?, parse_num(v, lineno)?)),
                ["c", v, c] => colors.push((parse_num(v, lineno)?, parse_num(c, lineno)?)),
                _ => {
                    graph_part.push_str(line);
                    graph_part.push('\n');
                }
            }
        }
        let h = Graph::from_text(&graph_part)?;
        let n = h.order();
        let mut gwl = GraphWithLayout::new(h, []);
        for (u, v) in layout {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: u.max(v),
                    order: n,
                });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            gwl.layout.insert(edge(u, v));
        }
        for (v, c) in colors {
            gwl.h.check_vertex(v)?;
            gwl.colors[v] = c as u32;
        }
        Ok(gwl)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Node {
    Face(Cycle),
    OuterEdge(Edge),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacingStructure {
    pub gwl: GraphWithLayout,
    /// Faces first (by canonical cycle), then outer edges (sorted).
    pub nodes: Vec<Node>,
    /// `cross[i]` is the edge of the source graph crossed by `gwl.h.edges()[i]`.
    pub cross: Vec<Edge>,
    pub source: Graph,
}

impl FacingStructure {
    /// The dual edge crossing `e` of the source graph.
    pub fn dual_of(&self, e: Edge) -> Option<usize> {
        let e = edge(e.0, e.1);
        self.cross.iter().position(|&c| c == e)
    }

    pub fn face_count(&self) -> usize {
        self.nodes.iter().filter(|n| matches!(n, Node::Face(_))).count()
    }
}

/// The facing structure of a pseudo-BOP graph.
pub fn facing(g: &Graph) -> Result<FacingStructure> {
    let report = check_pseudo_bop(g);
    if !report.is_pseudo_bop {
        return Err(Error::NotPseudoBop(format!("{:?}", report.violations)));
    }
    Ok(assemble(g.clone(), report.cycles, report.outer_edges))
}

/// The facing structure of a dissection, reading faces off the chords.
pub fn facing_of_dissection(d: &Dissection) -> FacingStructure {
    let fd = d.facial_data();
    assemble(d.graph(), fd.facial_cycles, fd.outer_edges)
}

fn assemble(g: Graph, faces: Vec<Cycle>, outer: Vec<Edge>) -> FacingStructure {
    let nf = faces.len();
    let mut on_faces: BTreeMap<Edge, Vec<usize>> = BTreeMap::new();
    for (i, c) in faces.iter().enumerate() {
        for e in c.edges() {
            on_faces.entry(e).or_default().push(i);
        }
    }
    let leaf_of: BTreeMap<Edge, usize> = outer.iter().enumerate().map(|(k, &e)| (e, nf + k)).collect();
    let mut dual_pairs = Vec::with_capacity(g.edge_count());
    for &e in g.edges() {
        let fs = &on_faces[&e];
        let pair = match fs[..] {
            [a, b] => edge(a, b),
            [a] => edge(a, leaf_of[&e]),
            _ => unreachable!("pseudo-BOP edges lie on one or two cycles"),
        };
        dual_pairs.push((pair, e));
    }
    let h = Graph::new(nf + outer.len(), dual_pairs.iter().map(|&(p, _)| p)).expect("valid dual");
    let by_pair: BTreeMap<Edge, Edge> = dual_pairs.into_iter().collect();
    let cross: Vec<Edge> = h.edges().iter().map(|p| by_pair[p]).collect();
    let star = |x: usize, y: usize| by_pair[&edge(x, y)];
    let touch = |a: Edge, b: Edge| a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1;

    let mut layout = BTreeSet::new();
    let mut local: Vec<BTreeSet<Edge>> = vec![BTreeSet::new(); h.order()];
    for x in 0..h.order() {
        let nb = h.neighbors(x);
        for (i, &u1) in nb.iter().enumerate() {
            for &u2 in &nb[i + 1..] {
                if touch(star(x, u1), star(x, u2)) {
                    local[x].insert(edge(u1, u2));
                    layout.insert(edge(u1, u2));
                }
            }
        }
    }
    let around = |x: usize, y: usize| -> Vec<usize> {
        h.neighbors(x)
            .iter()
            .copied()
            .filter(|&w| local[x].contains(&edge(w, y)))
            .collect()
    };
    for &(u, v) in h.edges() {
        if h.degree(u) <= 1 || h.degree(v) <= 1 {
            continue;
        }
        for a in around(u, v) {
            for b in around(v, u) {
                if a != b && touch(star(u, a), star(v, b)) {
                    layout.insert(edge(a, b));
                }
            }
        }
    }
    let mut nodes: Vec<Node> = faces.into_iter().map(Node::Face).collect();
    nodes.extend(outer.into_iter().map(Node::OuterEdge));
    FacingStructure {
        gwl: GraphWithLayout::new(h, layout),
        nodes,
        cross,
        source: g,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum LayoutCondition {
    /// The host graph has a vertex of degree 2.
    HostDegreeTwo,
    /// The host graph has a triangle.
    HostTriangle,
    /// Condition 1: a layout pair leaves the vertex set.
    Domain,
    /// Condition 2: a reflexive pair.
    Irreflexive,
    /// Condition 3: the layout does not induce a cycle on a neighborhood.
    NeighborhoodCycle,
    /// Condition 4: cross pairs between adjacent neighborhoods.
    CrossPairs,
    /// Condition 5: a pair not accounted for by conditions 3 and 4.
    ExtraPair,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayoutViolation {
    pub condition: LayoutCondition,
    pub witnesses: Vec<usize>,
}

fn violation(condition: LayoutCondition, witnesses: Vec<usize>) -> LayoutViolation {
    LayoutViolation { condition, witnesses }
}

/// Checks that `layout` is a layout for `h`; empty means valid.
pub fn validate_layout(t: &GraphWithLayout) -> Vec<LayoutViolation> {
    use LayoutCondition::*;
    let h = &t.h;
    let n = h.order();
    let mut out = Vec::new();
    for v in 0..n {
        if h.degree(v) == 2 {
            out.push(violation(HostDegreeTwo, vec![v]));
        }
    }
    for &(u, v) in h.edges() {
        for &w in h.neighbors(v) {
            if w > v && h.has_edge(u, w) {
                out.push(violation(HostTriangle, vec![u, v, w]));
            }
        }
    }
    for &(u, v) in &t.layout {
        if u >= n || v >= n {
            out.push(violation(Domain, vec![u, v]));
        } else if u == v {
            out.push(violation(Irreflexive, vec![u]));
        }
    }
    if out.iter().any(|x| matches!(x.condition, Domain | Irreflexive)) {
        return out;
    }
    let mut allowed: BTreeSet<Edge> = BTreeSet::new();
    for v in 0..n {
        if t.is_leaf(v) {
            continue;
        }
        let nb = h.neighbors(v);
        let induced: Vec<Edge> = t
            .layout
            .iter()
            .copied()
            .filter(|&(a, b)| nb.contains(&a) && nb.contains(&b))
            .collect();
        if !induces_cycle(nb, &induced) {
            out.push(violation(NeighborhoodCycle, vec![v]));
        }
        allowed.extend(induced);
    }
    for &(u, v) in h.edges() {
        if t.is_leaf(u) || t.is_leaf(v) {
            continue;
        }
        let vs = t.layout_neighbors_within(v, u);
        let us = t.layout_neighbors_within(u, v);
        let ok = match (&vs[..], &us[..]) {
            (&[v1, v2], &[u1, u2]) if !vs.contains(&u1) && !vs.contains(&u2) => {
                let straight = t.in_layout(v1, u1) && t.in_layout(v2, u2);
                let twisted = t.in_layout(v1, u2) && t.in_layout(v2, u1);
                if straight && !twisted {
                    allowed.extend([edge(v1, u1), edge(v2, u2)]);
                    true
                } else if twisted && !straight {
                    allowed.extend([edge(v1, u2), edge(v2, u1)]);
                    true
                } else {
                    false
                }
            }
            _ => false,
        };
        if !ok {
            out.push(violation(CrossPairs, vec![u, v]));
        }
    }
    for &(a, b) in &t.layout {
        if !allowed.contains(&(a, b)) {
            out.push(violation(ExtraPair, vec![a, b]));
        }
    }
    out
}

fn induces_cycle(vertices: &[usize], pairs: &[Edge]) -> bool {
    if vertices.len() < 3 || pairs.len() != vertices.len() {
        return false;
    }
    let deg = |x: usize| pairs.iter().filter(|&&(a, b)| a == x || b == x).count();
    if vertices.iter().any(|&x| deg(x) != 2) {
        return false;
    }
    // 2-regular; connected iff a walk from the first vertex visits all.
    let mut seen = BTreeSet::from([vertices[0]]);
    let mut frontier = vec![vertices[0]];
    while let Some(x) = frontier.pop() {
        for &(a, b) in pairs {
            let y = if a == x { b } else if b == x { a } else { continue };
            if seen.insert(y) {
                frontier.push(y);
            }
        }
    }
    seen.len() == vertices.len()
}

fn require_valid(t: &GraphWithLayout) -> Result<()> {
    let v = validate_layout(t);
    if v.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidLayout(format!("{v:?}")))
    }
}

/// The line graph of a graph with layout: edges of `h` are adjacent iff a
/// chain joins them. Vertex `i` of the result is `t.h.edges()[i]`.
pub fn layout_line_graph(t: &GraphWithLayout) -> Result<(Graph, Vec<Edge>)> {
    require_valid(t)?;
    let h = &t.h;
    let mut pairs = BTreeSet::new();
    for (i, &(a, b)) in h.edges().iter().enumerate() {
        for start in [[a, b], [b, a]] {
            let mut path = start.to_vec();
            chain_dfs(t, &mut path, i, &mut pairs);
        }
    }
    Ok((Graph::new(h.edge_count(), pairs).expect("valid"), h.edges().to_vec()))
}

fn chain_dfs(t: &GraphWithLayout, path: &mut Vec<usize>, from: usize, pairs: &mut BTreeSet<Edge>) {
    let j = path.len() - 1;
    let last = path[j];
    for &next in t.h.neighbors(last) {
        if path.contains(&next) || !t.in_layout(path[j - 1], next) {
            continue;
        }
        if j >= 2 && !t.in_layout(path[j - 2], next) {
            continue;
        }
        let to = t.h.edge_index(last, next).expect("edge");
        pairs.insert(edge(from, to));
        path.push(next);
        chain_dfs(t, path, from, pairs);
        path.pop();
    }
}

/// The cyclic layout order of `Γ(u)`, starting at its least neighbor.
fn layout_cycle(t: &GraphWithLayout, u: usize) -> Vec<usize> {
    let first = t.h.neighbors(u)[0];
    let second = t.layout_neighbors_within(first, u)[0];
    walk_rotation(t, u, first, second)
}

/// Rebuilds the BOP graph described by a tree with layout.
pub fn reconstruct(t: &GraphWithLayout) -> Result<Graph> {
    if !t.h.is_tree() {
        return Err(Error::NotATree);
    }
    require_valid(t)?;
    let h = &t.h;
    let inner: Vec<usize> = (0..h.order()).filter(|&v| !t.is_leaf(v)).collect();
    if inner.is_empty() {
        return Err(Error::InvalidLayout("no vertex of degree >= 3".into()));
    }
    // Corner (u, {a, b}) is the vertex of face u between its sides a and b.
    let mut corner_id: BTreeMap<(usize, Edge), usize> = BTreeMap::new();
    let mut rotations = BTreeMap::new();
    for &u in &inner {
        let rot = layout_cycle(t, u);
        for i in 0..rot.len() {
            let id = corner_id.len();
            corner_id.insert((u, edge(rot[i], rot[(i + 1) % rot.len()])), id);
        }
        rotations.insert(u, rot);
    }
    let mut uf = UnionFind::new(corner_id.len());
    for &(u, v) in h.edges() {
        if t.is_leaf(u) || t.is_leaf(v) {
            continue;
        }
        for a in t.layout_neighbors_within(v, u) {
            for b in t.layout_neighbors_within(u, v) {
                if t.in_layout(a, b) {
                    uf.union(corner_id[&(u, edge(a, v))], corner_id[&(v, edge(u, b))]);
                }
            }
        }
    }
    let mut label: BTreeMap<usize, usize> = BTreeMap::new();
    for id in 0..corner_id.len() {
        let root = uf.find(id);
        let next = label.len();
        label.entry(root).or_insert(next);
    }
    let mut pairs = BTreeSet::new();
    for &u in &inner {
        let rot = &rotations[&u];
        let d = rot.len();
        for i in 0..d {
            let before = corner_id[&(u, edge(rot[(i + d - 1) % d], rot[i]))];
            let after = corner_id[&(u, edge(rot[i], rot[(i + 1) % d]))];
            let (x, y) = (label[&uf.find(before)], label[&uf.find(after)]);
            if x == y {
                return Err(Error::InvalidLayout(format!("side {} of {u} collapses", rot[i])));
            }
            pairs.insert(edge(x, y));
        }
    }
    Graph::new(label.len(), pairs)
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let up = self.0[y];
            self.0[y] = r;
            y = up;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// A plane rotation system on a tree with layout: for each non-leaf, its
/// neighbors in counter-clockwise order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    rotations: Vec<Option<Vec<usize>>>,
}

impl Orientation {
    pub fn rotation(&self, u: usize) -> Option<&[usize]> {
        self.rotations.get(u)?.as_deref()
    }

    fn step(&self, u: usize, t: usize, forward: bool) -> Option<usize> {
        let rot = self.rotation(u)?;
        let i = rot.iter().position(|&x| x == t)?;
        let d = rot.len();
        Some(if forward { rot[(i + 1) % d] } else { rot[(i + d - 1) % d] })
    }

    /// The left layout neighbor `l_u(t)` of `t` around `u`.
    pub fn left(&self, u: usize, t: usize) -> Option<usize> {
        self.step(u, t, true)
    }

    /// The right layout neighbor `r_u(t)`.
    pub fn right(&self, u: usize, t: usize) -> Option<usize> {
        self.step(u, t, false)
    }
}

fn check_seed(t: &GraphWithLayout, a: usize, p: usize, q: usize) -> Result<()> {
    t.h.check_vertex(a)?;
    if t.is_leaf(a) {
        return Err(Error::InvalidSeed(format!("{a} is a leaf")));
    }
    let nb = t.h.neighbors(a);
    if !nb.contains(&p) || !nb.contains(&q) || p == q || !t.in_layout(p, q) {
        return Err(Error::InvalidSeed(format!(
            "{p}, {q} are not layout-adjacent neighbors of {a}"
        )));
    }
    Ok(())
}

/// Propagates the orientation seeded by "p to q around a is counter-clockwise".
pub fn orientation(t: &GraphWithLayout, a: usize, p: usize, q: usize) -> Result<Orientation> {
    if !t.h.is_tree() {
        return Err(Error::NotATree);
    }
    require_valid(t)?;
    check_seed(t, a, p, q)?;
    Ok(orient_unchecked(t, a, p, q))
}

fn orient_unchecked(t: &GraphWithLayout, a: usize, p: usize, q: usize) -> Orientation {
    let h = &t.h;
    let mut rotations: Vec<Option<Vec<usize>>> = vec![None; h.order()];
    rotations[a] = Some(walk_rotation(t, a, p, q));
    let mut queue = VecDeque::from([a]);
    while let Some(x) = queue.pop_front() {
        let rot_x = rotations[x].clone().unwrap();
        let d = rot_x.len();
        for (i, &y) in rot_x.iter().enumerate() {
            if t.is_leaf(y) || rotations[y].is_some() {
                continue;
            }
            // The cross pair on the right of x->y lands on the left of y->x.
            let right_of_y = rot_x[(i + d - 1) % d];
            let start = t
                .layout_neighbors_within(x, y)
                .into_iter()
                .find(|&b| t.in_layout(right_of_y, b))
                .expect("valid layout has cross pairs");
            rotations[y] = Some(walk_rotation(t, y, x, start));
            queue.push_back(y);
        }
    }
    Orientation { rotations }
}

/// The L-cycle on `Γ(u)` listed from `first` towards `second`.
fn walk_rotation(t: &GraphWithLayout, u: usize, first: usize, second: usize) -> Vec<usize> {
    let nb = t.h.neighbors(u);
    let mut order = vec![first, second];
    loop {
        let (prev, cur) = (order[order.len() - 2], order[order.len() - 1]);
        let next = nb
            .iter()
            .copied()
            .find(|&w| w != prev && w != cur && t.in_layout(cur, w))
            .expect("layout cycle");
        if next == first {
            return order;
        }
        order.push(next);
    }
}

pub type Coordinates = Vec<(usize, usize)>;

/// Global coordinates of every vertex relative to the seed `(a, p, q)`.
pub fn global_coordinates(t: &GraphWithLayout, a: usize, p: usize, q: usize) -> Result<Vec<Coordinates>> {
    let o = orientation(t, a, p, q)?;
    Ok(coordinates_unchecked(t, &o, a, p, q))
}

fn coordinates_unchecked(t: &GraphWithLayout, o: &Orientation, a: usize, p: usize, q: usize) -> Vec<Coordinates> {
    let h = &t.h;
    let mut glo: Vec<Option<Coordinates>> = vec![None; h.order()];
    glo[a] = Some(Vec::new());
    let mut queue = VecDeque::from([(a, usize::MAX)]);
    while let Some((u, parent)) = queue.pop_front() {
        let Some(rot) = o.rotation(u) else { continue };
        let (pu, qu) = if u == a { (p, q) } else { (parent, o.left(u, parent).unwrap()) };
        let d = rot.len();
        let idx = |x: usize| rot.iter().position(|&y| y == x).unwrap();
        let (ip, iq) = (idx(pu), idx(qu));
        let cyc = |i: usize, j: usize| {
            let k = i.abs_diff(j);
            k.min(d - k)
        };
        let base = glo[u].clone().unwrap();
        for (iv, &v) in rot.iter().enumerate() {
            if v == parent {
                continue;
            }
            let mut g = base.clone();
            g.push((cyc(iv, ip), cyc(iv, iq)));
            glo[v] = Some(g);
            queue.push_back((v, u));
        }
    }
    glo.into_iter().map(|g| g.expect("tree is connected")).collect()
}

type CanonEntry = (Coordinates, usize, u32);

/// A canonical byte string for a tree with layout: equal exactly for
/// isomorphic colored trees with layout.
pub fn canonical_form(t: &GraphWithLayout) -> Result<Vec<u8>> {
    if !t.h.is_tree() {
        return Err(Error::NotATree);
    }
    require_valid(t)?;
    let h = &t.h;
    let mut best: Option<Vec<CanonEntry>> = None;
    for a in (0..h.order()).filter(|&a| !t.is_leaf(a)) {
        for &p in h.neighbors(a) {
            for q in t.layout_neighbors_within(p, a) {
                let o = orient_unchecked(t, a, p, q);
                let glo = coordinates_unchecked(t, &o, a, p, q);
                let mut entries: Vec<CanonEntry> = glo
                    .into_iter()
                    .enumerate()
                    .map(|(v, g)| (g, h.degree(v), t.colors[v]))
                    .collect();
                entries.sort();
                if best.as_ref().map_or(true, |b| entries < *b) {
                    best = Some(entries);
                }
            }
        }
    }
    let entries = best.unwrap_or_else(|| {
        // K1 or K2: no seed exists; the colors are the whole story.
        let mut e: Vec<CanonEntry> = (0..h.order()).map(|v| (Vec::new(), h.degree(v), t.colors[v])).collect();
        e.sort();
        e
    });
    let mut out = Vec::new();
    out.extend((entries.len() as u32).to_be_bytes());
    for (glo, deg, color) in entries {
        out.extend((glo.len() as u32).to_be_bytes());
        for (x, y) in glo {
            out.extend((x as u32).to_be_bytes());
            out.extend((y as u32).to_be_bytes());
        }
        out.extend((deg as u32).to_be_bytes());
        out.extend(color.to_be_bytes());
    }
    Ok(out)
}

pub fn layout_isomorphic(t1: &GraphWithLayout, t2: &GraphWithLayout) -> Result<bool> {
    Ok(canonical_form(t1)? == canonical_form(t2)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square_with_chord() -> Graph {
        Dissection::new(4, [(0, 2)]).unwrap().graph()
    }

    fn star_with_cycle_layout(k: usize) -> GraphWithLayout {
        GraphWithLayout::new(Graph::star(k), (1..=k).map(|i| (i, i % k + 1)))
    }

    #[test]
    fn facing_of_cycle_is_star_with_cycle_layout() {
        let f = facing(&Graph::cycle(5)).unwrap();
        assert!(f.gwl.h.is_isomorphic(&Graph::star(5)));
        let center = 0;
        assert_eq!(f.gwl.h.degree(center), 5);
        let layout_graph = Graph::new(6, f.gwl.layout.iter().copied()).unwrap();
        let leaves = layout_graph.induced(&[1, 2, 3, 4, 5]);
        assert!(leaves.is_isomorphic(&Graph::cycle(5)));
        assert_eq!(f.gwl.layout.len(), 5);
    }

    #[test]
    fn facing_of_square_with_chord() {
        let g = square_with_chord();
        let f = facing(&g).unwrap();
        assert_eq!(f.gwl.h.order(), 6);
        assert_eq!(f.gwl.h.edge_count(), g.edge_count());
        assert!(f.gwl.h.is_tree());
        assert_eq!(f.gwl.h.degree(0), 3);
        assert_eq!(f.gwl.h.degree(1), 3);
        assert!(f.gwl.h.has_edge(0, 1));
        assert_eq!(f.cross[f.gwl.h.edge_index(0, 1).unwrap()], (0, 2));
        assert!(validate_layout(&f.gwl).is_empty());
        assert_eq!(f, facing_of_dissection(&Dissection::new(4, [(0, 2)]).unwrap()));
    }

    #[test]
    fn facing_of_k4_is_k4_on_triangles() {
        let f = facing(&Graph::complete(4)).unwrap();
        assert_eq!(f.gwl.h, Graph::complete(4));
        assert_eq!(f.face_count(), 4);
        let v = validate_layout(&f.gwl);
        assert!(v.iter().any(|x| x.condition == LayoutCondition::HostTriangle));
        assert!(facing(&Graph::path(3)).is_err());
    }

    #[test]
    fn layout_validation_examples() {
        let f = facing(&Graph::cycle(5)).unwrap();
        assert!(validate_layout(&f.gwl).is_empty());
        let path_layout = GraphWithLayout::new(Graph::star(4), [(1, 2), (2, 3), (3, 4)]);
        let v = validate_layout(&path_layout);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].condition, LayoutCondition::NeighborhoodCycle);
        let mut extra = star_with_cycle_layout(4);
        extra.layout.insert((1, 3));
        assert!(validate_layout(&extra).iter().any(|x| x.condition == LayoutCondition::NeighborhoodCycle));
        let path = GraphWithLayout::new(Graph::path(3), []);
        assert_eq!(validate_layout(&path)[0].condition, LayoutCondition::HostDegreeTwo);
    }

    #[test]
    fn layout_validation_condition_four_and_five() {
        let mut f = facing_of_dissection(&Dissection::new(4, [(0, 2)]).unwrap()).gwl;
        let cross: Vec<Edge> = f
            .layout
            .iter()
            .copied()
            .filter(|&(a, b)| !(f.h.neighbors(0).contains(&a) && f.h.neighbors(0).contains(&b)))
            .filter(|&(a, b)| !(f.h.neighbors(1).contains(&a) && f.h.neighbors(1).contains(&b)))
            .collect();
        assert_eq!(cross.len(), 2);
        let mut broken = f.clone();
        broken.layout.remove(&cross[0]);
        assert!(validate_layout(&broken).iter().any(|x| x.condition == LayoutCondition::CrossPairs));
        // A stray pair between two leaves of different faces.
        let leaves0: Vec<usize> = f.h.neighbors(0).iter().copied().filter(|&x| f.h.degree(x) == 1).collect();
        let leaves1: Vec<usize> = f.h.neighbors(1).iter().copied().filter(|&x| f.h.degree(x) == 1).collect();
        for &a in &leaves0 {
            for &b in &leaves1 {
                if !f.in_layout(a, b) {
                    f.layout.insert(edge(a, b));
                }
            }
        }
        let v = validate_layout(&f);
        assert!(v.iter().any(|x| matches!(x.condition, LayoutCondition::ExtraPair | LayoutCondition::CrossPairs)));
    }

    #[test]
    fn layout_line_graph_matches_line_graph() {
        for g in [Graph::cycle(5), square_with_chord()] {
            let f = facing(&g).unwrap();
            let (ll, _) = layout_line_graph(&f.gwl).unwrap();
            assert!(ll.is_isomorphic(&g.line_graph().0));
        }
        let star = star_with_cycle_layout(3);
        let (ll, labels) = layout_line_graph(&star).unwrap();
        let i = labels.iter().position(|&e| e == (0, 1)).unwrap();
        let j = labels.iter().position(|&e| e == (0, 2)).unwrap();
        assert!(ll.has_edge(i, j));
        assert!(layout_line_graph(&GraphWithLayout::new(Graph::star(4), [])).is_err());
    }

    #[test]
    fn reconstruction_examples() {
        let f = facing(&Graph::cycle(6)).unwrap();
        assert!(reconstruct(&f.gwl).unwrap().is_isomorphic(&Graph::cycle(6)));
        let d = Dissection::new(5, [(0, 2)]).unwrap();
        let f = facing(&d.graph()).unwrap();
        assert!(reconstruct(&f.gwl).unwrap().is_isomorphic(&d.graph()));
        assert_eq!(reconstruct(&star_with_cycle_layout(3)).unwrap(), Graph::cycle(3));
        let k4 = facing(&Graph::complete(4)).unwrap();
        assert_eq!(reconstruct(&k4.gwl), Err(Error::NotATree));
    }

    #[test]
    fn orientation_of_star_follows_seed() {
        let f = facing(&Graph::cycle(5)).unwrap();
        let t = &f.gwl;
        let p = t.h.neighbors(0)[0];
        let q = t.layout_neighbors_within(p, 0)[0];
        let o = orientation(t, 0, p, q).unwrap();
        let rot = o.rotation(0).unwrap();
        assert_eq!(rot.len(), 5);
        assert_eq!((rot[0], rot[1]), (p, q));
        for i in 0..5 {
            assert!(t.in_layout(rot[i], rot[(i + 1) % 5]));
        }
        assert_eq!(o.left(0, p), Some(q));
        assert!(orientation(t, p, 0, q).is_err());
        assert!(orientation(t, 0, p, p).is_err());
    }

    #[test]
    fn orientation_flips_with_seed() {
        let t = facing(&square_with_chord()).unwrap().gwl;
        let p = t.h.neighbors(0)[0];
        let qs = t.layout_neighbors_within(p, 0);
        let o1 = orientation(&t, 0, p, qs[0]).unwrap();
        let o2 = orientation(&t, 0, p, qs[1]).unwrap();
        for u in [0, 1] {
            let r1 = o1.rotation(u).unwrap();
            for &x in r1 {
                assert_eq!(o1.left(u, x), o2.right(u, x));
            }
        }
    }

    #[test]
    fn cross_pair_rule_picks_one_rotation() {
        let t = facing(&square_with_chord()).unwrap().gwl;
        let p = t.h.neighbors(0)[0];
        let q = t.layout_neighbors_within(p, 0)[0];
        let o = orientation(&t, 0, p, q).unwrap();
        let rot0 = o.rotation(0).unwrap();
        let i = rot0.iter().position(|&x| x == 1).unwrap();
        let (r, l) = (rot0[(i + 2) % 3], rot0[(i + 1) % 3]);
        // Both candidate rotations of the second center, written from the first center.
        let nb1: Vec<usize> = t.layout_neighbors_within(0, 1);
        let mut satisfying = 0;
        for (first, second) in [(nb1[0], nb1[1]), (nb1[1], nb1[0])] {
            // candidate: l_1(0) = first, r_1(0) = second
            if t.in_layout(r, first) && t.in_layout(l, second) {
                satisfying += 1;
                assert_eq!(o.left(1, 0), Some(first));
                assert_eq!(o.right(1, 0), Some(second));
            }
        }
        assert_eq!(satisfying, 1);
    }

    #[test]
    fn coordinates_on_the_pentagon_star() {
        let t = facing(&Graph::cycle(5)).unwrap().gwl;
        let rot = layout_cycle(&t, 0);
        let (p, q) = (rot[0], rot[1]);
        let glo = global_coordinates(&t, 0, p, q).unwrap();
        assert!(glo[0].is_empty());
        // Walk the 5-cycle p=x0, q=x1, x2, x3, x4 by hand.
        let expected = [(0, 1), (1, 0), (2, 1), (2, 2), (1, 2)];
        for (k, &x) in rot.iter().enumerate() {
            assert_eq!(glo[x], vec![expected[k]]);
        }
    }

    #[test]
    fn coordinates_are_distinct_addresses() {
        let t = facing(&Dissection::new(6, [(0, 3)]).unwrap().graph()).unwrap().gwl;
        for a in (0..t.h.order()).filter(|&a| !t.is_leaf(a)) {
            for &p in t.h.neighbors(a) {
                for q in t.layout_neighbors_within(p, a) {
                    let glo = global_coordinates(&t, a, p, q).unwrap();
                    assert_eq!(glo[p][0].0, 0);
                    let distinct: BTreeSet<_> = glo.iter().collect();
                    assert_eq!(distinct.len(), glo.len());
                }
            }
        }
    }

    #[test]
    fn canonical_form_ignores_labels() {
        let d = Dissection::new(7, [(0, 2), (2, 5), (5, 0)]).unwrap();
        let g = d.graph();
        let relabeled = g.relabel(&[4, 0, 6, 2, 1, 5, 3]);
        let a = facing(&g).unwrap().gwl;
        let b = facing(&relabeled).unwrap().gwl;
        assert!(layout_isomorphic(&a, &b).unwrap());
        let m = facing_of_dissection(&d.mirror()).gwl;
        assert!(layout_isomorphic(&a, &m).unwrap());
        let other = facing_of_dissection(&Dissection::new(7, [(0, 2), (0, 3), (0, 4)]).unwrap()).gwl;
        assert!(!layout_isomorphic(&a, &other).unwrap());
    }

    #[test]
    fn colors_enter_the_canonical_form() {
        let a = star_with_cycle_layout(3);
        let mut b = a.clone();
        b.colors[1] = 7;
        assert!(!layout_isomorphic(&a, &b).unwrap());
        let mut c = a.clone();
        c.colors[2] = 7;
        assert!(layout_isomorphic(&b, &c).unwrap());
    }

    #[test]
    fn gwl_text_round_trip() {
        let mut t = star_with_cycle_layout(3);
        t.colors[2] = 4;
        let text = t.to_text();
        assert_eq!(
            text,
            "graph 4\ne 0 1\ne 0 2\ne 0 3\nl 1 2\nl 1 3\nl 2 3\nc 2 4\n"
        );
        assert_eq!(GraphWithLayout::from_text(&text).unwrap(), t);
    }
}
