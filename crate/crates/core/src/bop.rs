//! Dissections of the convex polygon and their biconnected outerplanar graphs.
//!
//! Vertex `i` of a dissection sits at polygon position `i`; the outer cycle
//! is always `(0, 1, ..., n-1)`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{content_lines, edge, parse_num, Cycle, Edge, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dissection {
    n: usize,
    chords: BTreeSet<Edge>,
}

fn check_chord(n: usize, (i, j): Edge) -> Result<Edge> {
    let (i, j) = edge(i, j);
    if j >= n || i == j || j - i == 1 || j - i == n - 1 {
        return Err(Error::InvalidChord { n, i, j });
    }
    Ok((i, j))
}

/// Geometric crossing of two chords of the convex `n`-gon.
pub fn chords_cross(n: usize, c1: Edge, c2: Edge) -> Result<bool> {
    let (a, b) = check_chord(n, c1)?;
    let (c, d) = check_chord(n, c2)?;
    Ok(crosses((a, b), (c, d)))
}

/// Crossing test on normalized pairs of distinct polygon positions.
pub(crate) fn crosses((a, b): Edge, (c, d): Edge) -> bool {
    if a == c || a == d || b == c || b == d {
        return false;
    }
    let inside = |x: usize| a < x && x < b;
    inside(c) != inside(d)
}

impl Dissection {
    pub fn new(n: usize, chords: impl IntoIterator<Item = Edge>) -> Result<Self> {
        if n < 3 {
            return Err(Error::PolygonTooSmall(n));
        }
        let mut set = BTreeSet::new();
        for c in chords {
            set.insert(check_chord(n, c)?);
        }
        let list: Vec<Edge> = set.iter().copied().collect();
        for (k, &c1) in list.iter().enumerate() {
            for &c2 in &list[k + 1..] {
                if crosses(c1, c2) {
                    return Err(Error::CrossingChords {
                        first: c1,
                        second: c2,
                    });
                }
            }
        }
        Ok(Dissection { n, chords: set })
    }

    pub fn polygon(n: usize) -> Result<Self> {
        Dissection::new(n, [])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn chords(&self) -> &BTreeSet<Edge> {
        &self.chords
    }

    pub fn chord_count(&self) -> usize {
        self.chords.len()
    }

    pub fn graph(&self) -> Graph {
        let sides = (0..self.n).map(|i| (i, (i + 1) % self.n));
        Graph::new(self.n, sides.chain(self.chords.iter().copied())).expect("valid dissection")
    }

    /// The mirror image under `i -> n-1-i`.
    pub fn mirror(&self) -> Dissection {
        let m = self.n - 1;
        Dissection::new(self.n, self.chords.iter().map(|&(i, j)| (m - i, m - j)))
            .expect("reflection keeps chords non-crossing")
    }

    /// Splits the polygon into its bounded faces along the chords.
    pub fn facial_data(&self) -> FacialData {
        let mut chord_adj = vec![Vec::new(); self.n];
        for &(i, j) in &self.chords {
            chord_adj[i].push(j);
        }
        let mut faces = Vec::new();
        let mut stack = vec![(0, self.n - 1)];
        while let Some((lo, hi)) = stack.pop() {
            let mut face = vec![lo];
            let mut x = lo;
            while x != hi {
                let next = chord_adj[x]
                    .iter()
                    .copied()
                    .filter(|&y| y <= hi && !(x == lo && y == hi))
                    .max()
                    .unwrap_or(x + 1);
                if next - x >= 2 {
                    stack.push((x, next));
                }
                face.push(next);
                x = next;
            }
            faces.push(Cycle::new(face).expect("faces have >= 3 vertices"));
        }
        faces.sort();
        FacialData {
            outer_cycle: Cycle::new((0..self.n).collect()).expect("n >= 3"),
            facial_cycles: faces,
            outer_edges: (0..self.n).map(|i| edge(i, (i + 1) % self.n)).collect::<BTreeSet<_>>().into_iter().collect(),
            inner_edges: self.chords.iter().copied().collect(),
        }
    }

    pub fn facial_circumference(&self) -> usize {
        self.facial_data()
            .facial_cycles
            .iter()
            .map(Cycle::len)
            .max()
            .expect("at least one face")
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("polygon {}\n", self.n);
        for &(i, j) in &self.chords {
            s.push_str(&format!("chord {i} {j}\n"));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (lineno, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing `polygon <n>` header".into(),
        })?;
        let n = match header.split_whitespace().collect::<Vec<_>>()[..] {
            ["polygon", n] => parse_num(n, lineno)?,
            _ => {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("expected `polygon <n>`, found `{header}`"),
                })
            }
        };
        let mut chords = Vec::new();
        for (lineno, line) in lines {
            match line.split_whitespace().collect::<Vec<_>>()[..] {
                ["chord", i, j] => chords.push((parse_num(i, lineno)?, parse_num(j, lineno)?)),
                _ => {
                    return Err(Error::Parse {
                        line: lineno,
                        message: format!("expected `chord <i> <j>`, found `{line}`"),
                    })
                }
            }
        }
        Dissection::new(n, chords)
    }
}

impl fmt::Display for Dissection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-gon {:?}", self.n, self.chords)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacialData {
    pub outer_cycle: Cycle,
    /// Bounded faces, sorted by canonical cycle.
    pub facial_cycles: Vec<Cycle>,
    pub outer_edges: Vec<Edge>,
    pub inner_edges: Vec<Edge>,
}

/// A BOP graph recognized as a dissection; `order[i]` is the original
/// vertex placed at polygon position `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recognition {
    pub dissection: Dissection,
    pub order: Vec<usize>,
}

/// Recognizes a biconnected outerplanar graph by searching for a
/// Hamiltonian cycle whose remaining edges are pairwise non-crossing chords.
pub fn recognize_bop(g: &Graph) -> Option<Recognition> {
    let n = g.order();
    if n < 3 || g.edge_count() > 2 * n - 3 || (0..n).any(|v| g.degree(v) < 2) {
        return None;
    }
    let mut search = HamSearch {
        g,
        order: vec![0],
        pos: vec![usize::MAX; n],
        chords: Vec::new(),
    };
    search.pos[0] = 0;
    if !search.extend() {
        return None;
    }
    let order = search.order;
    let pos = search.pos;
    let chords = g.edges().iter().filter_map(|&(u, v)| {
        let (a, b) = edge(pos[u], pos[v]);
        (b - a >= 2 && b - a != n - 1).then_some((a, b))
    });
    let dissection = Dissection::new(n, chords).expect("search only accepts non-crossing chords");
    Some(Recognition { dissection, order })
}

struct HamSearch<'a> {
    g: &'a Graph,
    order: Vec<usize>,
    pos: Vec<usize>,
    chords: Vec<Edge>,
}

impl HamSearch<'_> {
    fn extend(&mut self) -> bool {
        let n = self.g.order();
        let k = self.order.len();
        if k == n {
            return self.g.has_edge(self.order[n - 1], self.order[0]);
        }
        let last = self.order[k - 1];
        for &next in self.g.neighbors(last) {
            if self.pos[next] != usize::MAX {
                continue;
            }
            self.pos[next] = k;
            self.order.push(next);
            let saved = self.chords.len();
            if self.place_chords(next, k) && self.extend() {
                return true;
            }
            self.chords.truncate(saved);
            self.order.pop();
            self.pos[next] = usize::MAX;
        }
        false
    }

    /// Records the chords from the vertex just placed at position `k` and
    /// checks them against the chords already placed.
    fn place_chords(&mut self, v: usize, k: usize) -> bool {
        let n = self.g.order();
        for &w in self.g.neighbors(v) {
            let i = self.pos[w];
            if i == usize::MAX || i + 1 >= k || (i == 0 && k == n - 1) {
                continue;
            }
            if self.chords.iter().any(|&c| crosses(c, (i, k))) {
                return false;
            }
            // Vertices enclosed by the new chord can no longer reach the unplaced arc.
            for p in i + 1..k {
                let inner = self.order[p];
                if self.g.neighbors(inner).iter().any(|&x| self.pos[x] == usize::MAX) {
                    return false;
                }
            }
            self.chords.push((i, k));
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent face oracle: trace faces of the straight-line convex
    /// embedding by turning to the next neighbor in angular order.
    fn traced_faces(d: &Dissection) -> BTreeSet<Cycle> {
        let g = d.graph();
        let n = d.n();
        // Around vertex v, neighbors sorted counter-clockwise = by (w - v) mod n.
        let rot = |v: usize| -> Vec<usize> {
            let mut nb = g.neighbors(v).to_vec();
            nb.sort_by_key(|&w| (w + n - v) % n);
            nb
        };
        let mut used = BTreeSet::new();
        let mut faces = BTreeSet::new();
        for &(a, b) in g.edges() {
            for (s, t) in [(a, b), (b, a)] {
                if used.contains(&(s, t)) {
                    continue;
                }
                let mut face = Vec::new();
                let (mut x, mut y) = (s, t);
                while used.insert((x, y)) {
                    face.push(x);
                    let around = rot(y);
                    let idx = around.iter().position(|&z| z == x).unwrap();
                    let z = around[(idx + around.len() - 1) % around.len()];
                    x = y;
                    y = z;
                }
                faces.insert(Cycle::new(face).unwrap());
            }
        }
        faces.remove(&Cycle::new((0..n).collect()).unwrap());
        faces
    }

    #[test]
    fn crossing_examples() {
        assert!(chords_cross(4, (0, 2), (1, 3)).unwrap());
        assert!(!chords_cross(5, (0, 2), (2, 4)).unwrap());
        assert!(!chords_cross(6, (0, 2), (3, 5)).unwrap());
        assert!(!chords_cross(6, (0, 3), (1, 3)).unwrap());
        assert!(chords_cross(5, (0, 1), (2, 4)).is_err());
    }

    #[test]
    fn building_graphs() {
        assert_eq!(Dissection::polygon(3).unwrap().graph(), Graph::cycle(3));
        let g = Dissection::new(4, [(0, 2)]).unwrap().graph();
        assert_eq!(g.edge_count(), 5);
        assert!(g.has_edge(0, 2));
        let hex = Dissection::new(6, [(0, 2), (2, 4), (4, 0)]).unwrap().graph();
        assert_eq!(hex.edge_count(), 9);
        assert_eq!(
            Dissection::new(4, [(0, 2), (1, 3)]),
            Err(Error::CrossingChords {
                first: (0, 2),
                second: (1, 3)
            })
        );
        assert_eq!(Dissection::new(2, []), Err(Error::PolygonTooSmall(2)));
    }

    #[test]
    fn faces_of_small_dissections() {
        let d = Dissection::new(4, [(0, 2)]).unwrap();
        let fd = d.facial_data();
        assert_eq!(
            fd.facial_cycles,
            vec![
                Cycle::new(vec![0, 1, 2]).unwrap(),
                Cycle::new(vec![0, 2, 3]).unwrap()
            ]
        );
        assert_eq!(fd.outer_edges.len(), 4);
        let pentagon = Dissection::polygon(5).unwrap().facial_data();
        assert_eq!(pentagon.facial_cycles, vec![Cycle::new(vec![0, 1, 2, 3, 4]).unwrap()]);
        let split = Dissection::new(6, [(1, 4)]).unwrap();
        let faces: BTreeSet<Cycle> = split.facial_data().facial_cycles.into_iter().collect();
        assert_eq!(faces, traced_faces(&split));
        assert!(faces.iter().all(|c| c.len() == 4));
    }

    #[test]
    fn faces_agree_with_tracing_oracle() {
        let d = Dissection::new(9, [(0, 4), (1, 3), (4, 8), (5, 7), (5, 8)]).unwrap();
        let faces: BTreeSet<Cycle> = d.facial_data().facial_cycles.into_iter().collect();
        assert_eq!(faces, traced_faces(&d));
        let total: usize = faces.iter().map(|c| c.len() - 2).sum();
        assert_eq!(total, d.n() - 2);
    }

    #[test]
    fn circumference() {
        assert_eq!(Dissection::new(4, [(0, 2)]).unwrap().facial_circumference(), 3);
        assert_eq!(Dissection::polygon(6).unwrap().facial_circumference(), 6);
        assert_eq!(Dissection::new(6, [(0, 3)]).unwrap().facial_circumference(), 4);
    }

    #[test]
    fn recognition() {
        let c5 = recognize_bop(&Graph::cycle(5)).unwrap();
        assert_eq!(c5.dissection, Dissection::polygon(5).unwrap());
        assert!(recognize_bop(&Graph::complete(4)).is_none());
        let sq = Dissection::new(4, [(0, 2)]).unwrap().graph();
        let r = recognize_bop(&sq).unwrap();
        assert_eq!(r.dissection.chord_count(), 1);
        assert!(recognize_bop(&Graph::path(4)).is_none());
        // K_{2,3} is biconnected but not outerplanar.
        let k23 = Graph::new(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        assert!(recognize_bop(&k23).is_none());
        // Two triangles sharing a vertex are outerplanar but not biconnected.
        let bowtie = Graph::new(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        assert!(recognize_bop(&bowtie).is_none());
    }

    #[test]
    fn recognition_relabels_consistently() {
        let d = Dissection::new(7, [(0, 3), (3, 6), (4, 6)]).unwrap();
        let g = d.graph().relabel(&[3, 6, 0, 5, 1, 4, 2]);
        let r = recognize_bop(&g).unwrap();
        for &(a, b) in r.dissection.graph().edges() {
            assert!(g.has_edge(r.order[a], r.order[b]));
        }
        assert!(r.dissection.graph().is_isomorphic(&d.graph()));
    }

    #[test]
    fn text_round_trip() {
        let d = Dissection::new(6, [(3, 1), (1, 5)]).unwrap();
        assert_eq!(d.to_text(), "polygon 6\nchord 1 3\nchord 1 5\n");
        assert_eq!(Dissection::from_text(&d.to_text()).unwrap(), d);
        assert!(Dissection::from_text("polygon 2\n").is_err());
        assert!(Dissection::from_text("polygon 4\nchord 0 1\n").is_err());
    }
}
