//! The acceptance checks, shared by the `verify` command and the test suite.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bop::Dissection;
use crate::efgame::{
    ef_depth, evaluate_bound, halving_budget, halving_strategy, is_partial_iso, max_depth_over_family,
    verify_strategy, AsStructure, BoundFormula, RelStructure, Verification,
};
use crate::facing::{canonical_form, facing, layout_line_graph, reconstruct, validate_layout};
use crate::graph::{edge, Graph};
use crate::params::{fineness, is_r_fine, yuppie_set, Fineness};
use crate::pseudo::{is_boundary_like, pseudo_facial_cycles, PseudoFacialOracle};
use crate::toolkit::corpus::{connected_graphs, dissection_classes, graphs_up_to_iso, random_connected_graph, trees};
use crate::toolkit::experiment::{compute_experiment, ExperimentConfig};
use crate::toolkit::{count_dissections, enumerate_dissections, Sampler};

/// Sampler uniformity tolerance (total variation distance).
pub const TV_TOLERANCE: f64 = 0.05;
/// Random order-7 graphs in the boundary-like/oracle comparison.
pub const ORDER_SEVEN_SAMPLES: usize = 600;
/// Halving-strategy anchor quadruples checked.
pub const HALVING_QUADRUPLES: usize = 12_000;
const SHOWN_FAILURES: usize = 10;

#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub id: usize,
    pub title: &'static str,
    pub checked: usize,
    pub failures: usize,
    pub examples: Vec<String>,
    pub notes: Vec<String>,
}

impl CriterionReport {
    fn new(id: usize, title: &'static str) -> Self {
        CriterionReport {
            id,
            title,
            checked: 0,
            failures: 0,
            examples: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.examples.len() < SHOWN_FAILURES {
                self.examples.push(what());
            }
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] criterion {}: {} ({} checks, {} failures)",
            if self.passed() { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.checked,
            self.failures
        )?;
        for n in &self.notes {
            write!(f, "\n    {n}")?;
        }
        for e in &self.examples {
            write!(f, "\n    failure: {e}")?;
        }
        Ok(())
    }
}

fn dissections_between(lo: usize, hi: usize) -> Vec<Dissection> {
    (lo..=hi).flat_map(|n| enumerate_dissections(n).unwrap()).collect()
}

/// Facing round trip on every dissection with 3 ≤ n ≤ 8.
pub fn criterion_1() -> CriterionReport {
    let mut rep = CriterionReport::new(1, "facing round trip");
    for d in dissections_between(3, 8) {
        let g = d.graph();
        let f = match facing(&g) {
            Ok(f) => f,
            Err(e) => {
                rep.check(false, || format!("{d}: {e}"));
                continue;
            }
        };
        let h = &f.gwl.h;
        rep.check(h.is_tree(), || format!("{d}: dual is not a tree"));
        rep.check(validate_layout(&f.gwl).is_empty(), || format!("{d}: invalid layout"));
        rep.check(h.edge_count() == g.edge_count(), || format!("{d}: |E(H)| != |E(G)|"));
        rep.check(h.max_degree() == d.facial_circumference(), || format!("{d}: max dual degree != f"));
        let back = reconstruct(&f.gwl);
        rep.check(back.as_ref().is_ok_and(|b| b.is_isomorphic(&g)), || format!("{d}: reconstruction {back:?}"));
    }
    rep
}

/// The crossing bijection maps the layout line graph onto the line graph.
pub fn criterion_2() -> CriterionReport {
    let mut rep = CriterionReport::new(2, "layout line graph is the line graph via crossing");
    for d in dissections_between(3, 8) {
        let g = d.graph();
        let f = facing(&g).expect("dissection graphs are pseudo-BOP");
        let (ll, _) = match layout_line_graph(&f.gwl) {
            Ok(x) => x,
            Err(e) => {
                rep.check(false, || format!("{d}: {e}"));
                continue;
            }
        };
        let (lg, g_edges) = g.line_graph();
        let pos: BTreeMap<_, _> = g_edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let map: Vec<usize> = f.cross.iter().map(|e| pos[e]).collect();
        let image: std::collections::BTreeSet<_> = ll.edges().iter().map(|&(a, b)| edge(map[a], map[b])).collect();
        let target: std::collections::BTreeSet<_> = lg.edges().iter().copied().collect();
        rep.check(image == target, || format!("{d}: crossing map is not an isomorphism"));
    }
    rep
}

/// Graph isomorphism coincides with facing isomorphism on dissections n ≤ 7.
pub fn criterion_3() -> CriterionReport {
    let mut rep = CriterionReport::new(3, "graph isomorphism iff facing isomorphism");
    let items: Vec<(Dissection, Graph, Vec<u8>)> = dissections_between(3, 7)
        .into_iter()
        .map(|d| {
            let g = d.graph();
            let c = canonical_form(&facing(&g).unwrap().gwl).unwrap();
            (d, g, c)
        })
        .collect();
    for (i, (d1, g1, c1)) in items.iter().enumerate() {
        for (d2, g2, c2) in &items[i + 1..] {
            let same_graph = g1.order() == g2.order() && g1.is_isomorphic(g2);
            rep.check(same_graph == (c1 == c2), || format!("{d1} vs {d2}: graph {same_graph}, facing {}", c1 == c2));
        }
    }
    rep
}

/// Boundary-like testing agrees with the brute-force pseudo-facial oracle.
pub fn criterion_4() -> CriterionReport {
    let mut rep = CriterionReport::new(4, "boundary-like equals pseudo-facial oracle");
    let compare = |g: &Graph, rep: &mut CriterionReport| {
        let oracle = PseudoFacialOracle::new(g);
        for c in oracle.cycles() {
            let fast = is_boundary_like(g, c).unwrap();
            rep.check(fast == oracle.is_pseudo_facial(c), || format!("{g:?} cycle {c}: fast {fast}"));
        }
    };
    for n in 3..=6 {
        for g in connected_graphs(n) {
            compare(&g, &mut rep);
        }
    }
    let exhaustive = rep.checked;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    for i in 0..ORDER_SEVEN_SAMPLES {
        let p = [0.1, 0.2, 0.3, 0.45][i % 4];
        compare(&random_connected_graph(7, p, &mut rng), &mut rep);
    }
    rep.note(format!(
        "{exhaustive} cycles of connected graphs of order <= 6, {} cycles from {ORDER_SEVEN_SAMPLES} random order-7 graphs",
        rep.checked - exhaustive
    ));
    rep
}

/// Two pseudo-facial cycles share at most two vertices, and two only along
/// a common edge.
pub fn criterion_5() -> CriterionReport {
    let mut rep = CriterionReport::new(5, "pseudo-facial cycles meet in at most an edge");
    for n in 3..=6 {
        for g in connected_graphs(n) {
            let cycles = pseudo_facial_cycles(&g);
            for (i, a) in cycles.iter().enumerate() {
                for b in &cycles[i + 1..] {
                    let common: Vec<usize> = a.vertices().iter().copied().filter(|&v| b.contains(v)).collect();
                    let ok = match common[..] {
                        [x, y] => a.has_edge(x, y) && b.has_edge(x, y),
                        _ => common.len() < 2,
                    };
                    rep.check(ok, || format!("{g:?}: {a} and {b} share {common:?}"));
                }
            }
        }
    }
    rep
}

/// Plain minimax without memo or pruning.
fn naive_spoiler_wins(a: &RelStructure, b: &RelStructure, k: usize, c: &mut Vec<(usize, usize)>) -> bool {
    if !is_partial_iso(a, b, c).unwrap() {
        return true;
    }
    if k == 0 {
        return false;
    }
    let mut beats = |pairs: Vec<Vec<(usize, usize)>>| {
        pairs.into_iter().any(|replies| {
            replies.into_iter().all(|p| {
                c.push(p);
                let w = naive_spoiler_wins(a, b, k - 1, c);
                c.pop();
                w
            })
        })
    };
    let left = (0..a.size()).map(|x| (0..b.size()).map(|y| (x, y)).collect()).collect();
    let right = (0..b.size()).map(|y| (0..a.size()).map(|x| (x, y)).collect()).collect();
    beats(left) || beats(right)
}

fn naive_depth(a: &RelStructure, b: &RelStructure, max_k: usize) -> Option<usize> {
    (0..=max_k).find(|&k| naive_spoiler_wins(a, b, k, &mut Vec::new()))
}

pub fn cycle_graph(n: usize) -> RelStructure {
    Graph::cycle(n).as_structure()
}

/// Exact game values and the cycle bounds.
pub fn criterion_6() -> CriterionReport {
    let mut rep = CriterionReport::new(6, "exact game values and cycle depth bounds");
    let anchors = [
        ("C3", cycle_graph(3), "C4", cycle_graph(4), 3),
        ("K1", Graph::empty(1).as_structure(), "K2", Graph::complete(2).as_structure(), 2),
    ];
    for (ln, l, rn, r, listed) in &anchors {
        let solver = ef_depth(l, r, 6).unwrap();
        let oracle = naive_depth(l, r, 4);
        rep.check(solver.is_some() && solver == oracle, || format!("D({ln},{rn}): solver {solver:?}, oracle {oracle:?}"));
        rep.note(format!(
            "D({ln},{rn}) = {} by solver and naive minimax (listed target {listed}{})",
            solver.map_or("-".into(), |d| d.to_string()),
            if solver == Some(*listed) { "" } else { ", refuted by the oracle; oracle value frozen" }
        ));
    }
    for n in 3..=8usize {
        let bound = evaluate_bound(BoundFormula::CnCm, &[n as f64]).unwrap();
        for m in n + 1..=8 {
            let d = ef_depth(&cycle_graph(n), &cycle_graph(m), bound.max_depth()).unwrap();
            rep.check(d.is_some_and(|d| bound.admits(d)), || format!("D(C{n},C{m}) = {d:?}, bound {bound}"));
        }
    }
    let family: Vec<RelStructure> = (1..=6).flat_map(graphs_up_to_iso).map(|g| g.as_structure()).collect();
    for n in 3..=6usize {
        let bound = evaluate_bound(BoundFormula::DefCn, &[n as f64]).unwrap();
        let sweep = max_depth_over_family(&cycle_graph(n), &family, bound.max_depth()).unwrap();
        rep.check(sweep.complete && bound.admits(sweep.max), || {
            format!("C{n}: family max {} (complete {}), bound {bound}", sweep.max, sweep.complete)
        });
        rep.note(format!("C{n} against {} graphs of order <= 6: max depth {} ({bound})", sweep.table.len(), sweep.max));
    }
    rep
}

/// The halving strategy wins within ⌈log d⌉ rounds.
pub fn criterion_7() -> CriterionReport {
    let mut rep = CriterionReport::new(7, "halving strategy within ceil(log d) rounds");
    let graphs: Vec<Graph> = (1..=6).flat_map(connected_graphs).collect();
    let arenas: Vec<(RelStructure, Vec<Vec<Option<usize>>>)> =
        graphs.iter().map(|g| (g.as_structure(), g.all_distances())).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let mut done = 0;
    while done < HALVING_QUADRUPLES {
        let (a, da) = &arenas[rng.gen_range(0..arenas.len())];
        let (b, db) = &arenas[rng.gen_range(0..arenas.len())];
        let (u, v) = (rng.gen_range(0..a.size()), rng.gen_range(0..a.size()));
        let (u2, v2) = (rng.gen_range(0..b.size()), rng.gen_range(0..b.size()));
        let (Some(d), d2) = (da[u][v], db[u2][v2]) else { continue };
        if Some(d) == d2 {
            continue;
        }
        done += 1;
        let strat = halving_strategy(a, b, (u, v, u2, v2)).unwrap();
        let budget = halving_budget(d);
        let result = verify_strategy(a, b, &[(u, u2), (v, v2)], &strat, budget).unwrap();
        rep.check(matches!(result, Verification::Success { rounds_used } if rounds_used <= budget), || {
            format!("{:?} / {:?} anchors {:?}: {result:?}", a.rel1(), b.rel1(), (u, v, u2, v2))
        });
    }
    rep
}

fn dual_params(d: &Dissection) -> (usize, usize, usize) {
    let dual = crate::facing::facing_of_dissection(d).gwl.h;
    let r = match fineness(&dual, dual.order()).unwrap() {
        Fineness::Exact(r) => r,
        Fineness::CapExceeded(_) => unreachable!("a tree is |T|-fine"),
    };
    (d.facial_circumference(), r, dual.max_degree())
}

/// The reduction to facings and the overall upper bound hold at desk scale.
pub fn criterion_8() -> CriterionReport {
    let mut rep = CriterionReport::new(8, "depth bound consistency");
    let small = dissection_classes(5);
    for d1 in &small {
        let (g1, f1) = (d1.graph(), facing(&d1.graph()).unwrap());
        let (f, r, _) = dual_params(d1);
        for d2 in &small {
            let g2 = d2.graph();
            if g1.order() == g2.order() && g1.is_isomorphic(&g2) {
                continue;
            }
            let f2 = facing(&g2).unwrap();
            let (a, b) = (g1.as_structure(), g2.as_structure());
            let depth = ef_depth(&a, &b, g1.order().min(g2.order()) + 1).unwrap();
            let (fa, fb) = (f1.as_structure(), f2.as_structure());
            let fdepth = ef_depth(&fa, &fb, fa.size().min(fb.size()) + 1).unwrap();
            let (Some(depth), Some(fdepth)) = (depth, fdepth) else {
                rep.check(false, || format!("{d1} vs {d2}: depth not found"));
                continue;
            };
            let bound = evaluate_bound(BoundFormula::MainLemma2B, &[fdepth as f64, f as f64, r as f64]).unwrap();
            rep.check(bound.admits(depth), || format!("{d1} vs {d2}: D = {depth}, facing D = {fdepth}, bound {bound}"));
        }
    }
    let classes = dissection_classes(7);
    let structures: Vec<RelStructure> = classes.iter().map(|d| d.graph().as_structure()).collect();
    let mut worst: (f64, String) = (f64::INFINITY, String::new());
    for (d, s) in classes.iter().zip(&structures) {
        let (_, r, delta) = dual_params(d);
        let bound = evaluate_bound(BoundFormula::Theorem1, &[r as f64, delta as f64]).unwrap();
        let sweep = max_depth_over_family(s, &structures, s.size() + 1).unwrap();
        rep.check(sweep.complete && bound.admits(sweep.max), || {
            format!("{d}: family max {} (complete {}), bound {bound}", sweep.max, sweep.complete)
        });
        let slack = bound.value - sweep.max as f64;
        if slack < worst.0 {
            worst = (slack, format!("{d}: family max {} vs {bound}", sweep.max));
        }
    }
    rep.note(format!("{} dissection classes with n <= 5, {} with n <= 7", small.len(), classes.len()));
    rep.note(format!("tightest overall bound: {}", worst.1));
    rep
}

fn total_variation(counts: &BTreeMap<Vec<(usize, usize)>, usize>, outcomes: usize, trials: usize) -> f64 {
    let seen: f64 = counts.values().map(|&c| (c as f64 / trials as f64 - 1.0 / outcomes as f64).abs()).sum();
    let unseen = (outcomes - counts.len()) as f64 / outcomes as f64;
    (seen + unseen) / 2.0
}

/// Counting, uniform sampling and experiment determinism.
pub fn criterion_9() -> CriterionReport {
    let mut rep = CriterionReport::new(9, "counting, sampling and reproducibility");
    for n in 3..=8 {
        let listed = enumerate_dissections(n).unwrap().len();
        let counted = count_dissections(n).unwrap();
        rep.check(counted == BigUint::from(listed), || format!("n = {n}: counted {counted}, listed {listed}"));
    }
    for (n, trials) in [(5, 11_000), (6, 45_000)] {
        let all = enumerate_dissections(n).unwrap();
        let sampler = Sampler::new(n).unwrap();
        let mut rng = crate::toolkit::sample_rng(0x5eed_0009, n, 0);
        let mut counts: BTreeMap<Vec<(usize, usize)>, usize> = BTreeMap::new();
        for _ in 0..trials {
            let d = sampler.sample(&mut rng);
            *counts.entry(d.chords().iter().copied().collect()).or_default() += 1;
        }
        let tv = total_variation(&counts, all.len(), trials);
        rep.check(tv <= TV_TOLERANCE, || format!("n = {n}: total variation {tv:.4}"));
        rep.note(format!("n = {n}: total variation {tv:.4} over {trials} samples"));
    }
    let cfg = ExperimentConfig {
        sizes: vec![8, 20, 40],
        samples_per_size: 6,
        seed: 1,
        fineness_cap: 64,
        output_path: std::path::PathBuf::from("unused.csv"),
    };
    let a = compute_experiment(&cfg).map(|o| o.csv);
    let b = compute_experiment(&cfg).map(|o| o.csv);
    rep.check(a.is_ok() && a == b, || "experiment output differs between runs".into());
    rep
}

fn naive_is_r_fine(t: &Graph, r: usize) -> bool {
    fn grow(t: &Graph, p: &mut Vec<usize>, r: usize, out: &mut Vec<Vec<usize>>) {
        if p.len() == r {
            out.push(p.clone());
            return;
        }
        for &y in t.neighbors(*p.last().unwrap()) {
            if !p.contains(&y) {
                p.push(y);
                grow(t, p, r, out);
                p.pop();
            }
        }
    }
    let mut paths = Vec::new();
    for v in 0..t.order() {
        grow(t, &mut vec![v], r, &mut paths);
    }
    let degs: Vec<Vec<usize>> = paths.iter().map(|p| p.iter().map(|&x| t.degree(x)).collect()).collect();
    for (i, a) in paths.iter().enumerate() {
        for (j, b) in paths.iter().enumerate() {
            if a.iter().any(|x| b.contains(x)) {
                continue;
            }
            let rev: Vec<usize> = degs[j].iter().rev().copied().collect();
            if degs[i] == degs[j] || degs[i] == rev {
                return false;
            }
        }
    }
    true
}

fn naive_fineness(t: &Graph) -> usize {
    (1..=t.order().max(1)).find(|&r| naive_is_r_fine(t, r)).unwrap()
}

/// Fineness against the naive oracle, and yuppie sets spanning subtrees.
pub fn criterion_10() -> CriterionReport {
    let mut rep = CriterionReport::new(10, "fineness oracle and yuppie subtrees");
    for n in 1..=10 {
        for t in trees(n) {
            let fast = fineness(&t, n.max(1)).unwrap();
            let slow = naive_fineness(&t);
            rep.check(fast == Fineness::Exact(slow), || format!("{t:?}: fast {fast}, naive {slow}"));
            for r in 1..=n {
                let ok = is_r_fine(&t, r).unwrap() == naive_is_r_fine(&t, r);
                rep.check(ok, || format!("{t:?}: r = {r} disagrees"));
            }
            for r in 1..=4 {
                let y: Vec<usize> = yuppie_set(&t, r).unwrap().into_iter().collect();
                rep.check(y.is_empty() || t.induced(&y).is_connected(), || format!("{t:?}: Y_{r} = {y:?} disconnected"));
            }
        }
    }
    rep
}

pub fn all_criteria() -> Vec<fn() -> CriterionReport> {
    vec![
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
    ]
}
