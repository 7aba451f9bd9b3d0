use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::facing::{FacingStructure, GraphWithLayout};
use crate::graph::{edge, Edge, Graph};

/// A finite structure with two irreflexive symmetric relations and colors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelStructure {
    size: usize,
    rel1: BTreeSet<Edge>,
    rel2: BTreeSet<Edge>,
    colors: Vec<u32>,
    /// `code[x * size + y]`: bit 0 for rel1, bit 1 for rel2.
    code: Vec<u8>,
    /// Per-vertex (color, rel1 degree, rel2 degree).
    types: Vec<(u32, usize, usize)>,
}

impl RelStructure {
    pub fn new(
        size: usize,
        rel1: impl IntoIterator<Item = Edge>,
        rel2: impl IntoIterator<Item = Edge>,
        colors: Vec<u32>,
    ) -> Result<Self> {
        if colors.len() != size {
            return Err(Error::Config(format!("{} colors for {size} vertices", colors.len())));
        }
        let check = |pairs: BTreeSet<Edge>| -> Result<BTreeSet<Edge>> {
            for &(u, v) in &pairs {
                if v >= size {
                    return Err(Error::VertexOutOfRange { vertex: v, order: size });
                }
                if u == v {
                    return Err(Error::SelfLoop(u));
                }
            }
            Ok(pairs)
        };
        let rel1 = check(rel1.into_iter().map(|(u, v)| edge(u, v)).collect())?;
        let rel2 = check(rel2.into_iter().map(|(u, v)| edge(u, v)).collect())?;
        let mut code = vec![0u8; size * size];
        let mut deg = vec![(0usize, 0usize); size];
        for (bit, rel) in [(1u8, &rel1), (2u8, &rel2)] {
            for &(u, v) in rel {
                code[u * size + v] |= bit;
                code[v * size + u] |= bit;
                for x in [u, v] {
                    if bit == 1 {
                        deg[x].0 += 1;
                    } else {
                        deg[x].1 += 1;
                    }
                }
            }
        }
        let types = (0..size).map(|v| (colors[v], deg[v].0, deg[v].1)).collect();
        Ok(RelStructure {
            size,
            rel1,
            rel2,
            colors,
            code,
            types,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn rel1(&self) -> &BTreeSet<Edge> {
        &self.rel1
    }

    pub fn rel2(&self) -> &BTreeSet<Edge> {
        &self.rel2
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> u32 {
        self.colors[v]
    }

    #[inline]
    pub(crate) fn code(&self, x: usize, y: usize) -> u8 {
        self.code[x * self.size + y]
    }

    pub(crate) fn vertex_type(&self, v: usize) -> (u32, usize, usize) {
        self.types[v]
    }

    /// The rel1 part as a plain graph.
    pub fn graph1(&self) -> Graph {
        Graph::new(self.size, self.rel1.iter().copied()).expect("validated pairs")
    }

    /// An isomorphism onto `other` (color-, rel1- and rel2-preserving), by
    /// backtracking over vertices with matching types.
    pub fn isomorphism(&self, other: &RelStructure) -> Option<Vec<usize>> {
        let n = self.size;
        if n != other.size || self.rel1.len() != other.rel1.len() || self.rel2.len() != other.rel2.len() {
            return None;
        }
        let mut t1 = self.types.clone();
        let mut t2 = other.types.clone();
        t1.sort();
        t2.sort();
        if t1 != t2 {
            return None;
        }
        let mut order: Vec<usize> = (0..n).collect();
        // Rare types first, then by connectivity to already-placed vertices.
        order.sort_by_key(|&v| {
            let ty = self.types[v];
            (self.types.iter().filter(|&&t| t == ty).count(), usize::MAX - ty.1 - ty.2)
        });
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.extend_iso(other, &order, 0, &mut map, &mut used).then_some(map)
    }

    fn extend_iso(&self, other: &RelStructure, order: &[usize], i: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        let Some(&x) = order.get(i) else { return true };
        for y in 0..other.size {
            if used[y] || self.types[x] != other.types[y] {
                continue;
            }
            if order[..i].iter().any(|&z| self.code(x, z) != other.code(y, map[z])) {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if self.extend_iso(other, order, i + 1, map, used) {
                return true;
            }
            used[y] = false;
        }
        map[x] = usize::MAX;
        false
    }

    pub fn is_isomorphic(&self, other: &RelStructure) -> bool {
        self.isomorphism(other).is_some()
    }
}

/// Conversion to the game arena.
pub trait AsStructure {
    fn as_structure(&self) -> RelStructure;
}

impl AsStructure for Graph {
    fn as_structure(&self) -> RelStructure {
        RelStructure::new(self.order(), self.edges().iter().copied(), [], vec![0; self.order()]).expect("graph edges are valid")
    }
}

impl AsStructure for GraphWithLayout {
    fn as_structure(&self) -> RelStructure {
        RelStructure::new(
            self.h.order(),
            self.h.edges().iter().copied(),
            self.layout.iter().copied(),
            self.colors.clone(),
        )
        .expect("layout pairs are valid")
    }
}

impl AsStructure for FacingStructure {
    fn as_structure(&self) -> RelStructure {
        self.gwl.as_structure()
    }
}

impl AsStructure for RelStructure {
    fn as_structure(&self) -> RelStructure {
        self.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::facing::facing;

    #[test]
    fn conversions() {
        let c3 = Graph::cycle(3).as_structure();
        assert_eq!(c3.size(), 3);
        assert_eq!(c3.rel1().len(), 3);
        assert!(c3.rel2().is_empty());
        let f = facing(&Graph::cycle(4)).unwrap().as_structure();
        assert_eq!(f.size(), 5);
        assert_eq!(f.rel1().len(), 4);
        assert!(f.graph1().is_isomorphic(&Graph::star(4)));
        let leaves = Graph::new(5, f.rel2().iter().copied()).unwrap().induced(&[1, 2, 3, 4]);
        assert!(leaves.is_isomorphic(&Graph::cycle(4)));
        let mut t = GraphWithLayout::new(Graph::path(2), []);
        t.colors = vec![3, 5];
        assert_eq!(t.as_structure().colors(), &[3, 5]);
    }

    #[test]
    fn validation() {
        assert!(RelStructure::new(2, [(0, 2)], [], vec![0, 0]).is_err());
        assert!(RelStructure::new(2, [], [(1, 1)], vec![0, 0]).is_err());
        assert!(RelStructure::new(2, [], [], vec![0]).is_err());
    }

    #[test]
    fn isomorphism_respects_both_relations_and_colors() {
        let a = RelStructure::new(3, [(0, 1), (1, 2)], [(0, 2)], vec![0; 3]).unwrap();
        let b = RelStructure::new(3, [(0, 2), (1, 2)], [(0, 1)], vec![0; 3]).unwrap();
        let c = RelStructure::new(3, [(0, 2), (1, 2)], [(0, 2)], vec![0; 3]).unwrap();
        let map = a.isomorphism(&b).unwrap();
        for &(u, v) in a.rel1() {
            assert!(b.rel1().contains(&edge(map[u], map[v])));
        }
        assert!(!a.is_isomorphic(&c));
        let d = RelStructure::new(3, [(0, 1), (1, 2)], [(0, 2)], vec![1, 0, 0]).unwrap();
        assert!(!a.is_isomorphic(&d));
        let k4 = facing(&Graph::complete(4)).unwrap().as_structure();
        assert!(k4.is_isomorphic(&k4.clone()));
    }
}
