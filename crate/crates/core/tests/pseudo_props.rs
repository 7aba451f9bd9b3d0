use bopdepth::bop::recognize_bop;
use bopdepth::facing::{facing, facing_of_dissection};
use bopdepth::efgame::AsStructure;
use bopdepth::pseudo::{all_cycles, check_pseudo_bop, is_boundary_like, is_pseudo_facial_oracle, pseudo_facial_cycles};
use bopdepth::toolkit::corpus::{connected_graphs, dissection_classes, random_connected_graph};
use bopdepth::toolkit::enumerate_dissections;
use bopdepth::Graph;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_graphs() -> Vec<Graph> {
    (1..=6).flat_map(connected_graphs).collect()
}

fn order_seven(seed: u64, p: f64) -> Graph {
    random_connected_graph(7, p, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn assert_pairwise_meet_in_an_edge(g: &Graph) {
    let cycles = pseudo_facial_cycles(g);
    for (i, a) in cycles.iter().enumerate() {
        for b in &cycles[i + 1..] {
            let common: Vec<usize> = a.vertices().iter().copied().filter(|v| b.position(*v).is_some()).collect();
            assert!(common.len() <= 2, "{a} and {b} in {g:?}");
            if let [x, y] = common[..] {
                assert!(g.has_edge(x, y), "{a} and {b} in {g:?}");
                let adjacent_on = |c: &bopdepth::Cycle| {
                    let (i, j) = (c.position(x).unwrap(), c.position(y).unwrap());
                    let k = c.len();
                    (i + 1) % k == j || (j + 1) % k == i
                };
                assert!(adjacent_on(a) && adjacent_on(b), "{a} and {b} in {g:?}");
            }
        }
    }
}

/// Pseudo-BOP checks shared by the exhaustive sweep and the order-7 sample.
fn assert_pseudo_bop_structure(g: &Graph) {
    let report = check_pseudo_bop(g);
    if !report.is_pseudo_bop {
        return;
    }
    let f = facing(g).unwrap();
    assert_eq!(f.gwl.h.edge_count(), g.edge_count());
    assert_eq!(f.gwl.h.order(), report.cycles.len() + report.outer_edges.len());
    if f.gwl.h.is_tree() {
        assert!(recognize_bop(g).is_some(), "pseudo-BOP with tree dual but not BOP: {g:?}");
    }
}

#[test]
fn boundary_like_matches_oracle_on_small_graphs() {
    for g in small_graphs() {
        for c in all_cycles(&g) {
            assert_eq!(is_boundary_like(&g, &c).unwrap(), is_pseudo_facial_oracle(&g, &c), "{c} in {g:?}");
        }
    }
}

#[test]
fn small_pseudo_facial_cycles_meet_in_an_edge() {
    for g in small_graphs() {
        assert_pairwise_meet_in_an_edge(&g);
    }
}

#[test]
fn small_pseudo_bop_graphs() {
    let mut tree_duals = 0;
    for g in small_graphs() {
        assert_pseudo_bop_structure(&g);
        if check_pseudo_bop(&g).is_pseudo_bop && facing(&g).unwrap().gwl.h.is_tree() {
            tree_duals += 1;
        }
    }
    assert_eq!(tree_duals, dissection_classes(6).len());
}

#[test]
fn bop_facings_classify_pseudo_bop_graphs() {
    let pseudo: Vec<(Graph, _)> = small_graphs()
        .into_iter()
        .filter(|g| check_pseudo_bop(g).is_pseudo_bop)
        .map(|g| {
            let s = facing(&g).unwrap().as_structure();
            (g, s)
        })
        .collect();
    assert!(pseudo.iter().any(|(g, _)| recognize_bop(g).is_none()));
    for n in 3..=6 {
        for d in enumerate_dissections(n).unwrap() {
            let g = d.graph();
            let s = facing_of_dissection(&d).as_structure();
            for (h, t) in &pseudo {
                assert_eq!(g.is_isomorphic(h), s.is_isomorphic(t), "{d} against {h:?}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn order_seven_boundary_like(seed in any::<u64>(), p in 0.05f64..0.5) {
        let g = order_seven(seed, p);
        for c in all_cycles(&g) {
            prop_assert_eq!(is_boundary_like(&g, &c).unwrap(), is_pseudo_facial_oracle(&g, &c));
        }
    }

    #[test]
    fn order_seven_pseudo_facial_structure(seed in any::<u64>(), p in 0.05f64..0.5) {
        let g = order_seven(seed, p);
        assert_pairwise_meet_in_an_edge(&g);
        assert_pseudo_bop_structure(&g);
    }
}
