use super::solver::is_partial_iso;
use super::structure::RelStructure;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub(crate) fn index(self) -> usize {
        match self {
            Side::Left => 0,
            Side::Right => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpoilerMove {
    pub side: Side,
    pub vertex: usize,
}

/// A deterministic Spoiler: the next move given the selected pairs so far,
/// or `None` to give up.
pub trait SpoilerStrategy {
    fn next_move(&self, a: &RelStructure, b: &RelStructure, history: &[(usize, usize)]) -> Option<SpoilerMove>;
}

impl<F> SpoilerStrategy for F
where
    F: Fn(&RelStructure, &RelStructure, &[(usize, usize)]) -> Option<SpoilerMove>,
{
    fn next_move(&self, a: &RelStructure, b: &RelStructure, history: &[(usize, usize)]) -> Option<SpoilerMove> {
        self(a, b, history)
    }
}

fn distances(s: &RelStructure) -> Vec<Vec<Option<usize>>> {
    s.graph1().all_distances()
}

/// Bisects a pair of selected vertices whose distances disagree.
#[derive(Debug, Clone)]
pub struct HalvingStrategy {
    da: Vec<Vec<Option<usize>>>,
    db: Vec<Vec<Option<usize>>>,
}

/// Rounds the halving strategy needs from distance `d`.
pub fn halving_budget(d: usize) -> usize {
    if d <= 1 {
        0
    } else {
        (usize::BITS - (d - 1).leading_zeros()) as usize
    }
}

/// The halving strategy for anchors `(u, v)` left and `(u2, v2)` right;
/// requires `d(u, v)` finite and different from `d(u2, v2)`.
pub fn halving_strategy(a: &RelStructure, b: &RelStructure, anchors: (usize, usize, usize, usize)) -> Result<HalvingStrategy> {
    let (u, v, u2, v2) = anchors;
    for (x, s) in [(u, a), (v, a), (u2, b), (v2, b)] {
        if x >= s.size() {
            return Err(Error::VertexOutOfRange { vertex: x, order: s.size() });
        }
    }
    let strat = HalvingStrategy {
        da: distances(a),
        db: distances(b),
    };
    let d = strat.da[u][v];
    if d.is_none() {
        return Err(Error::HalvingHypothesis(format!("d({u},{v}) is infinite")));
    }
    if d == strat.db[u2][v2] {
        return Err(Error::HalvingHypothesis(format!("d({u},{v}) = d'({u2},{v2})")));
    }
    Ok(strat)
}

impl SpoilerStrategy for HalvingStrategy {
    fn next_move(&self, _a: &RelStructure, _b: &RelStructure, history: &[(usize, usize)]) -> Option<SpoilerMove> {
        // The contradicted pair with the smallest finite side distance.
        let mut best: Option<(usize, Side, usize, usize)> = None;
        for (i, &(x1, y1)) in history.iter().enumerate() {
            for &(x2, y2) in &history[..i] {
                let (dl, dr) = (self.da[x1][x2], self.db[y1][y2]);
                if dl == dr {
                    continue;
                }
                let cand = match (dl, dr) {
                    (Some(l), Some(r)) if r < l => (r, Side::Right, y1, y2),
                    (Some(l), _) => (l, Side::Left, x1, x2),
                    (None, Some(r)) => (r, Side::Right, y1, y2),
                    (None, None) => unreachable!(),
                };
                if best.map_or(true, |b| cand.0 < b.0) {
                    best = Some(cand);
                }
            }
        }
        let (d, side, p, q) = best?;
        let dist = match side {
            Side::Left => &self.da,
            Side::Right => &self.db,
        };
        let half = d / 2;
        let w = (0..dist.len()).find(|&w| dist[p][w] == Some(half) && dist[w][q] == Some(d - half))?;
        Some(SpoilerMove { side, vertex: w })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verification {
    /// Every Duplicator line loses; the longest took this many rounds.
    Success { rounds_used: usize },
    /// A sequence of selected pairs that survives the budget.
    Counterexample { history: Vec<(usize, usize)> },
}

/// Plays `strat` against every Duplicator reply sequence for `budget` rounds.
pub fn verify_strategy(
    a: &RelStructure,
    b: &RelStructure,
    config: &[(usize, usize)],
    strat: &dyn SpoilerStrategy,
    budget: usize,
) -> Result<Verification> {
    let mut history = config.to_vec();
    explore(a, b, &mut history, strat, budget)
}

fn explore(
    a: &RelStructure,
    b: &RelStructure,
    history: &mut Vec<(usize, usize)>,
    strat: &dyn SpoilerStrategy,
    budget: usize,
) -> Result<Verification> {
    if !is_partial_iso(a, b, history)? {
        return Ok(Verification::Success { rounds_used: 0 });
    }
    let give_up = |h: &Vec<(usize, usize)>| Ok(Verification::Counterexample { history: h.clone() });
    if budget == 0 {
        return give_up(history);
    }
    let Some(m) = strat.next_move(a, b, history) else {
        return give_up(history);
    };
    let other = match m.side {
        Side::Left => b.size(),
        Side::Right => a.size(),
    };
    let mut worst = 0;
    for y in 0..other {
        history.push(match m.side {
            Side::Left => (m.vertex, y),
            Side::Right => (y, m.vertex),
        });
        let r = explore(a, b, history, strat, budget - 1)?;
        history.pop();
        match r {
            Verification::Success { rounds_used } => worst = worst.max(rounds_used + 1),
            cex => return Ok(cex),
        }
    }
    Ok(Verification::Success { rounds_used: worst })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::efgame::AsStructure;
    use crate::graph::Graph;

    #[test]
    fn budgets() {
        let got: Vec<usize> = (0..=9).map(halving_budget).collect();
        assert_eq!(got, vec![0, 0, 1, 2, 2, 3, 3, 3, 3, 4]);
    }

    #[test]
    fn halving_on_paths() {
        let (a, b) = (Graph::path(5).as_structure(), Graph::path(4).as_structure());
        let s = halving_strategy(&a, &b, (0, 4, 0, 3)).unwrap();
        let r = verify_strategy(&a, &b, &[(0, 0), (4, 3)], &s, 2).unwrap();
        assert!(matches!(r, Verification::Success { rounds_used } if rounds_used <= 2));
    }

    #[test]
    fn halving_on_cycles() {
        let (a, b) = (Graph::cycle(8).as_structure(), Graph::cycle(6).as_structure());
        let s = halving_strategy(&a, &b, (0, 4, 0, 3)).unwrap();
        let r = verify_strategy(&a, &b, &[(0, 0), (4, 3)], &s, 2).unwrap();
        assert!(matches!(r, Verification::Success { .. }));
    }

    #[test]
    fn adjacent_anchor_is_already_won() {
        let (a, b) = (Graph::path(2).as_structure(), Graph::empty(2).as_structure());
        let s = halving_strategy(&a, &b, (0, 1, 0, 1)).unwrap();
        let r = verify_strategy(&a, &b, &[(0, 0), (1, 1)], &s, 0).unwrap();
        assert_eq!(r, Verification::Success { rounds_used: 0 });
    }

    #[test]
    fn hypothesis_is_checked() {
        let a = Graph::path(3).as_structure();
        assert!(matches!(halving_strategy(&a, &a, (0, 2, 0, 2)), Err(Error::HalvingHypothesis(_))));
        let b = Graph::empty(3).as_structure();
        assert!(matches!(halving_strategy(&b, &a, (0, 2, 0, 2)), Err(Error::HalvingHypothesis(_))));
    }

    #[test]
    fn constant_strategy_is_refuted() {
        let a = Graph::cycle(5).as_structure();
        let zero = |_: &RelStructure, _: &RelStructure, _: &[(usize, usize)]| Some(SpoilerMove { side: Side::Left, vertex: 0 });
        let r = verify_strategy(&a, &a, &[], &zero, 3).unwrap();
        assert!(matches!(r, Verification::Counterexample { .. }));
    }
}
