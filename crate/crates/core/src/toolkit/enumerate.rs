use crate::bop::{crosses, Dissection};
use crate::error::{Error, Result};
use crate::graph::Edge;

/// Every dissection of the labelled `n`-gon, by backtracking over chords in
/// lexicographic order (each chord excluded before included). The output
/// grows like the little Schröder numbers; `n` up to about 10 is practical.
pub fn enumerate_dissections(n: usize) -> Result<Vec<Dissection>> {
    if n < 3 {
        return Err(Error::PolygonTooSmall(n));
    }
    let candidates: Vec<Edge> = (0..n)
        .flat_map(|i| (i + 2..n).map(move |j| (i, j)))
        .filter(|&(i, j)| !(i == 0 && j == n - 1))
        .collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    walk(n, &candidates, 0, &mut chosen, &mut out);
    Ok(out)
}

fn walk(n: usize, cands: &[Edge], i: usize, chosen: &mut Vec<Edge>, out: &mut Vec<Dissection>) {
    let Some(&c) = cands.get(i) else {
        out.push(Dissection::new(n, chosen.iter().copied()).expect("non-crossing by construction"));
        return;
    };
    walk(n, cands, i + 1, chosen, out);
    if chosen.iter().all(|&d| !crosses(c, d)) {
        chosen.push(c);
        walk(n, cands, i + 1, chosen, out);
        chosen.pop();
    }
}
