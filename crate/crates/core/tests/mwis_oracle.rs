mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rydhubo_core::{max_weight_independent_sets, AtomGraph, AtomSet, MwisSolver};

use common::{arb_graph, graph};

/// Exhaustive maximum and every maximizer.
fn brute_force(g: &AtomGraph) -> (i64, BTreeSet<Vec<usize>>) {
    let n = g.num_atoms();
    let mut best = i64::MIN;
    let mut sets = BTreeSet::new();
    for mask in 0u32..1 << n {
        let set = AtomSet::from_ids(n, (0..n).filter(|i| mask >> i & 1 == 1));
        if !g.is_independent(&set) {
            continue;
        }
        let w = g.set_weight_sum(&set);
        if w > best {
            best = w;
            sets.clear();
        }
        if w == best {
            sets.insert(set.to_vec());
        }
    }
    (best, sets)
}

#[test]
fn weighted_path() {
    let g = graph(&[1, 3, 3, 1], &[(0, 1), (1, 2), (2, 3)]);
    let sol = max_weight_independent_sets(&g).unwrap();
    assert_eq!(sol.weight, 4);
    let found: BTreeSet<Vec<usize>> = sol.maximizers(16).unwrap().iter().map(|s| s.to_vec()).collect();
    assert_eq!(found, [vec![0, 2], vec![1, 3]].into_iter().collect());
}

#[test]
fn isolated_zero_weight_atoms_double_the_count() {
    let g = graph(&[2, 0, 0], &[]);
    let sol = max_weight_independent_sets(&g).unwrap();
    assert_eq!((sol.weight, sol.count()), (2, 4));
}

#[test]
fn node_budget_is_reported() {
    let edges: Vec<(usize, usize)> = (0..40)
        .map(|i| (i, (i + 1) % 40))
        .chain((0..40).map(|i| (i, (i + 7) % 40)))
        .collect();
    let g = graph(&[1; 40], &edges);
    let mut solver = MwisSolver::new(&g).with_budget(10);
    assert!(solver.solve_all(&AtomSet::full(40)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn matches_exhaustive_search(g in arb_graph(20)) {
        let (best, sets) = brute_force(&g);
        let sol = max_weight_independent_sets(&g).unwrap();
        prop_assert_eq!(sol.weight, best);
        prop_assert_eq!(sol.count(), sets.len() as u128);
        let found: BTreeSet<Vec<usize>> = sol.maximizers(1 << 20).unwrap().iter().map(|s| s.to_vec()).collect();
        prop_assert_eq!(found, sets);
    }
}
