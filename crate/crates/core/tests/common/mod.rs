#![allow(dead_code)]

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rydhubo_core::{AtomGraph, AtomRole, Polynomial, PolynomialBuilder};

pub const FIG1: &str = "0 x1 x2 x3 x4\n-1 x1\n-1 x3\n-1 x2 x4\n+1 x3 x4\n+1 x1 x2 x3";

pub fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

/// Polynomial over `x0..x{n-1}` from `(mask, coefficient)` pairs.
pub fn polynomial(n: usize, terms: &[(u32, i64)], constant: i64) -> Polynomial {
    let mut b = PolynomialBuilder::new();
    let names = names(n);
    for name in &names {
        b.var(name).unwrap();
    }
    for &(mask, c) in terms {
        let vars: Vec<&str> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| names[i].as_str()).collect();
        if !vars.is_empty() {
            b.add_term(c, &vars).unwrap();
        }
    }
    b.add_constant(constant);
    b.build()
}

fn coefficient() -> impl Strategy<Value = i64> {
    prop_oneof![-5i64..=-1, 1i64..=5]
}

/// Random instance: `n <= max_vars`, monomial order `<= max_order`, coefficients in `[-5, 5] \ {0}`.
pub fn arb_polynomial(max_vars: usize, max_order: u32) -> impl Strategy<Value = Polynomial> {
    (1..=max_vars).prop_flat_map(move |n| {
        let term = (1u32..1 << n, coefficient()).prop_filter("order bound", move |(m, _)| m.count_ones() <= max_order);
        (Just(n), prop::collection::vec(term, 0..7), -5i64..=5).prop_map(|(n, terms, c)| polynomial(n, &terms, c))
    })
}

/// Deterministic instance stream used where a fixed count of cases is required.
pub fn seeded_polynomial(rng: &mut ChaCha8Rng, max_vars: usize, max_order: u32) -> Polynomial {
    let n = rng.gen_range(1..=max_vars);
    let count = rng.gen_range(1..=6);
    let mut terms = Vec::new();
    while terms.len() < count {
        let mask = rng.gen_range(1u32..1 << n);
        if mask.count_ones() > max_order {
            continue;
        }
        let mut c = rng.gen_range(-5i64..=4);
        if c >= 0 {
            c += 1;
        }
        terms.push((mask, c));
    }
    polynomial(n, &terms, 0)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Graph with `n` wire atoms, the given weights and edges.
pub fn graph(weights: &[i64], edges: &[(usize, usize)]) -> AtomGraph {
    let mut g = AtomGraph::new();
    for (i, &w) in weights.iter().enumerate() {
        g.add_atom(AtomRole::Wire { gadget: 0, ordinal: i }, w);
    }
    for &(a, b) in edges {
        if a != b {
            g.add_edge(a, b);
        }
    }
    g
}

pub fn arb_graph(max_atoms: usize) -> impl Strategy<Value = AtomGraph> {
    (1..=max_atoms).prop_flat_map(|n| {
        (
            prop::collection::vec(0i64..=5, n),
            prop::collection::vec((0..n, 0..n), 0..=2 * n),
        )
            .prop_map(|(w, e)| graph(&w, &e))
    })
}
