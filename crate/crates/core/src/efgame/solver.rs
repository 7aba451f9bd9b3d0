use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::strategy::{Side, SpoilerMove};
use super::structure::RelStructure;
use crate::error::{Error, Result};

pub const DEFAULT_MEMO_CAP: usize = 20_000_000;

/// Whether the selected pairs form a partial isomorphism.
pub fn is_partial_iso(a: &RelStructure, b: &RelStructure, config: &[(usize, usize)]) -> Result<bool> {
    check_config(a, b, config)?;
    Ok(config.iter().enumerate().all(|(i, &(x, y))| {
        a.color(x) == b.color(y) && config[..i].iter().all(|&(xi, yi)| compatible(a, b, x, y, xi, yi))
    }))
}

#[inline]
fn compatible(a: &RelStructure, b: &RelStructure, x: usize, y: usize, xi: usize, yi: usize) -> bool {
    (x == xi) == (y == yi) && (x == xi || a.code(x, xi) == b.code(y, yi))
}

fn check_config(a: &RelStructure, b: &RelStructure, config: &[(usize, usize)]) -> Result<()> {
    for &(x, y) in config {
        if x >= a.size() {
            return Err(Error::VertexOutOfRange { vertex: x, order: a.size() });
        }
        if y >= b.size() {
            return Err(Error::VertexOutOfRange { vertex: y, order: b.size() });
        }
    }
    Ok(())
}

/// Known outcomes of one position: Duplicator survives `k ≤ lose_upto`
/// rounds and Spoiler wins any `k ≥ win_from`.
#[derive(Clone, Copy)]
struct Known {
    lose_upto: u8,
    win_from: u8,
}

/// Exact minimax search for one pair of structures, with a memo table
/// shared across queries.
pub struct Solver<'a> {
    a: &'a RelStructure,
    b: &'a RelStructure,
    memo: FxHashMap<Vec<u16>, Known>,
    cap: usize,
    /// Spoiler candidates per side, likely distinguishers first.
    moves: [Vec<usize>; 2],
    /// `replies[side][x]`: answers on the other side, same type first.
    replies: [Vec<Vec<usize>>; 2],
}

impl<'a> Solver<'a> {
    pub fn new(a: &'a RelStructure, b: &'a RelStructure) -> Self {
        Self::with_cap(a, b, DEFAULT_MEMO_CAP)
    }

    pub fn with_cap(a: &'a RelStructure, b: &'a RelStructure, cap: usize) -> Self {
        assert!(a.size() < 256 && b.size() < 256, "structures above 255 vertices are out of scope");
        let count = |s: &RelStructure, ty| (0..s.size()).filter(|&v| s.vertex_type(v) == ty).count();
        let order = |s: &RelStructure, t: &RelStructure| {
            let mut vs: Vec<usize> = (0..s.size()).collect();
            vs.sort_by_key(|&v| {
                let ty = s.vertex_type(v);
                count(s, ty) == count(t, ty)
            });
            vs
        };
        let answers = |s: &RelStructure, t: &RelStructure| {
            (0..s.size())
                .map(|x| {
                    let mut ys: Vec<usize> = (0..t.size()).filter(|&y| t.color(y) == s.color(x)).collect();
                    ys.sort_by_key(|&y| t.vertex_type(y) != s.vertex_type(x));
                    ys
                })
                .collect()
        };
        Solver {
            a,
            b,
            memo: FxHashMap::default(),
            cap,
            moves: [order(a, b), order(b, a)],
            replies: [answers(a, b), answers(b, a)],
        }
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    fn normalize(&self, config: &[(usize, usize)]) -> Result<Option<Vec<(usize, usize)>>> {
        if !is_partial_iso(self.a, self.b, config)? {
            return Ok(None);
        }
        let mut c = config.to_vec();
        c.sort_unstable();
        c.dedup();
        Ok(Some(c))
    }

    /// Spoiler wins the `k`-round game from `config`.
    pub fn spoiler_wins(&mut self, k: usize, config: &[(usize, usize)]) -> Result<bool> {
        match self.normalize(config)? {
            None => Ok(true),
            Some(c) => self.wins(&c, k.min(250) as u8),
        }
    }

    /// The least `k ≤ max_k` such that Spoiler wins from `initial`.
    pub fn depth(&mut self, initial: &[(usize, usize)], max_k: usize) -> Result<Option<usize>> {
        let Some(c) = self.normalize(initial)? else {
            return Ok(Some(0));
        };
        for k in 0..=max_k.min(250) {
            if self.wins(&c, k as u8)? {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }

    /// A move after which Spoiler still wins within `k - 1` further rounds.
    pub fn best_move(&mut self, k: usize, config: &[(usize, usize)]) -> Result<Option<SpoilerMove>> {
        let Some(c) = self.normalize(config)? else {
            return Ok(None);
        };
        if k == 0 {
            return Ok(None);
        }
        for side in [Side::Left, Side::Right] {
            for i in 0..self.moves[side.index()].len() {
                let x = self.moves[side.index()][i];
                if self.move_wins(&c, side, x, k as u8 - 1)? {
                    return Ok(Some(SpoilerMove { side, vertex: x }));
                }
            }
        }
        Ok(None)
    }

    fn key(config: &[(usize, usize)]) -> Vec<u16> {
        config.iter().map(|&(x, y)| ((x as u16) << 8) | y as u16).collect()
    }

    fn wins(&mut self, config: &[(usize, usize)], k: u8) -> Result<bool> {
        if k == 0 {
            return Ok(false);
        }
        let key = Self::key(config);
        if let Some(known) = self.memo.get(&key) {
            if k <= known.lose_upto {
                return Ok(false);
            }
            if k >= known.win_from {
                return Ok(true);
            }
        }
        let mut result = false;
        'outer: for side in [Side::Left, Side::Right] {
            for i in 0..self.moves[side.index()].len() {
                let x = self.moves[side.index()][i];
                if self.move_wins(config, side, x, k - 1)? {
                    result = true;
                    break 'outer;
                }
            }
        }
        if self.memo.len() >= self.cap {
            return Err(Error::MemoOverflow(self.cap));
        }
        let entry = self.memo.entry(key).or_insert(Known { lose_upto: 0, win_from: u8::MAX });
        if result {
            entry.win_from = entry.win_from.min(k);
        } else {
            entry.lose_upto = entry.lose_upto.max(k);
        }
        Ok(result)
    }

    /// Spoiler selects `x` on `side`; does every Duplicator answer lose
    /// within `rest` further rounds?
    fn move_wins(&mut self, config: &[(usize, usize)], side: Side, x: usize, rest: u8) -> Result<bool> {
        let (s, t) = match side {
            Side::Left => (self.a, self.b),
            Side::Right => (self.b, self.a),
        };
        let mine = |p: &(usize, usize)| if side == Side::Left { p.0 } else { p.1 };
        let theirs = |p: &(usize, usize)| if side == Side::Left { p.1 } else { p.0 };
        if config.iter().any(|p| mine(p) == x) {
            return Ok(false);
        }
        for j in 0..self.replies[side.index()][x].len() {
            let y = self.replies[side.index()][x][j];
            let ok = config
                .iter()
                .all(|p| compatible(s, t, x, y, mine(p), theirs(p)));
            if !ok {
                continue;
            }
            if rest == 0 {
                return Ok(false);
            }
            let pair = if side == Side::Left { (x, y) } else { (y, x) };
            let mut next = Vec::with_capacity(config.len() + 1);
            let at = config.partition_point(|p| *p < pair);
            next.extend_from_slice(&config[..at]);
            next.push(pair);
            next.extend_from_slice(&config[at..]);
            if !self.wins(&next, rest)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn spoiler_wins(a: &RelStructure, b: &RelStructure, k: usize, config: &[(usize, usize)]) -> Result<bool> {
    Solver::new(a, b).spoiler_wins(k, config)
}

/// The least number of rounds in which Spoiler wins, if at most `max_k`.
pub fn ef_depth(a: &RelStructure, b: &RelStructure, max_k: usize) -> Result<Option<usize>> {
    Solver::new(a, b).depth(&[], max_k)
}

/// As [`ef_depth`], with `(v, w)` selected before the first round.
pub fn ef_depth_rooted(a: &RelStructure, v: usize, b: &RelStructure, w: usize, max_k: usize) -> Result<Option<usize>> {
    Solver::new(a, b).depth(&[(v, w)], max_k)
}

/// Depths against every non-isomorphic member of a family. The maximum is
/// a lower bound on the depth needed to define `g` among all structures.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyDepth {
    pub max: usize,
    /// (index into the family, depth or `None` above `max_k`); isomorphic
    /// members are omitted.
    pub table: Vec<(usize, Option<usize>)>,
    pub complete: bool,
}

pub fn max_depth_over_family(g: &RelStructure, family: &[RelStructure], max_k: usize) -> Result<FamilyDepth> {
    let table: Vec<(usize, Option<usize>)> = family
        .par_iter()
        .enumerate()
        .filter(|(_, h)| !g.is_isomorphic(h))
        .map(|(i, h)| ef_depth(g, h, max_k).map(|d| (i, d)))
        .collect::<Result<_>>()?;
    Ok(FamilyDepth {
        max: table.iter().filter_map(|&(_, d)| d).max().unwrap_or(0),
        complete: table.iter().all(|(_, d)| d.is_some()),
        table,
    })
}

pub const DEPTH_CSV_HEADER: &str = "left,right,maxK,depth";

pub fn depth_csv_row(left: &str, right: &str, max_k: usize, depth: Option<usize>) -> String {
    let d = depth.map_or("-".to_string(), |d| d.to_string());
    format!("{left},{right},{max_k},{d}")
}
