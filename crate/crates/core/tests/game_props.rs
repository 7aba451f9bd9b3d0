use bopdepth::efgame::{ef_depth, AsStructure, RelStructure, Solver};
use bopdepth::toolkit::corpus::random_connected_graph;
use bopdepth::Graph;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn structure(n: usize, p: f64, rng: &mut ChaCha8Rng) -> RelStructure {
    random_connected_graph(n, p, rng).as_structure()
}

fn config(a: &RelStructure, b: &RelStructure, len: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    (0..len).map(|_| (rng.gen_range(0..a.size()), rng.gen_range(0..b.size()))).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn more_rounds_never_hurt_spoiler(seed in any::<u64>(), n in 1usize..=5, m in 1usize..=5, len in 0usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = structure(n, 0.4, &mut rng);
        let b = structure(m, 0.4, &mut rng);
        let c = config(&a, &b, len, &mut rng);
        let mut solver = Solver::new(&a, &b);
        let wins: Vec<bool> = (0..=4).map(|k| solver.spoiler_wins(k, &c).unwrap()).collect();
        let mut fresh = Solver::new(&a, &b);
        for k in 0..4 {
            prop_assert!(!wins[k] || wins[k + 1], "k = {}", k);
            prop_assert_eq!(fresh.spoiler_wins(4 - k, &c).unwrap(), wins[4 - k]);
        }
    }

    #[test]
    fn configuration_order_is_irrelevant(seed in any::<u64>(), n in 2usize..=5, m in 2usize..=5, len in 2usize..=3, k in 0usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = structure(n, 0.5, &mut rng);
        let b = structure(m, 0.5, &mut rng);
        let c = config(&a, &b, len, &mut rng);
        let mut d = c.clone();
        d.shuffle(&mut rng);
        prop_assert_eq!(Solver::new(&a, &b).spoiler_wins(k, &c).unwrap(), Solver::new(&a, &b).spoiler_wins(k, &d).unwrap());
    }

    #[test]
    fn isomorphic_structures_are_never_separated(seed in any::<u64>(), n in 1usize..=6, p in 0.0f64..0.8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_connected_graph(n, p, &mut rng);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let a = g.as_structure();
        let b = g.relabel(&perm).as_structure();
        prop_assert_eq!(ef_depth(&a, &b, 6).unwrap(), None);
    }
}

#[test]
fn cycle_pairs_stay_within_the_logarithmic_bound() {
    for n in 3..=8usize {
        for m in n + 1..=8 {
            let bound = (n as f64).log2().ceil() as usize + 1;
            let d = ef_depth(&Graph::cycle(n).as_structure(), &Graph::cycle(m).as_structure(), bound).unwrap();
            assert!(d.is_some(), "C{n} against C{m}");
        }
    }
}
