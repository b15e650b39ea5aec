//! Atom counts of the gadget pipeline without building the graph.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::compiler::{GadgetPlan, Mode};
use crate::gadget::GadgetKind;

/// `count` gadgets of one kind, order and weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TermClass {
    pub order: usize,
    pub kind: GadgetKind,
    pub weight: i64,
    pub count: u64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AtomCounts {
    pub data: u64,
    /// Superatom atoms of hyperedge gadgets.
    pub hyperedge_aux: u64,
    pub offset: u64,
}

impl AtomCounts {
    pub fn total(&self) -> u64 {
        self.data + self.hyperedge_aux + self.offset
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResourceEstimate {
    pub n_vars: usize,
    pub mode: Mode,
    pub counts: AtomCounts,
    /// Growth class of the weighted hypergraph, e.g. `O(w2 N^2 + w3 N^3)`.
    pub asymptotic: String,
}

impl ResourceEstimate {
    pub fn total(&self) -> u64 {
        self.counts.total()
    }
}

/// Exact atom counts of `assemble` for a histogram of gadgets over `n_vars` variables.
pub fn estimate_atoms(n_vars: usize, histogram: &[TermClass], mode: Mode) -> ResourceEstimate {
    let mut counts = AtomCounts {
        data: n_vars as u64,
        ..AtomCounts::default()
    };
    for class in histogram {
        let copies = match mode {
            Mode::LocalAddressing => 1,
            Mode::Duplication => class.weight.max(0) as u64,
        };
        let atoms = class.count * copies * class.kind.aux_count(class.order) as u64;
        match class.kind {
            GadgetKind::Offset => counts.offset += atoms,
            _ => counts.hyperedge_aux += atoms,
        }
    }
    ResourceEstimate {
        n_vars,
        mode,
        counts,
        asymptotic: asymptotic_class(histogram),
    }
}

/// `O(sum_K w_K N^K)` with `w_K` the largest weight of order `K`.
pub fn asymptotic_class(histogram: &[TermClass]) -> String {
    let mut orders: BTreeMap<usize, i64> = BTreeMap::new();
    for c in histogram.iter().filter(|c| c.count > 0 && c.kind != GadgetKind::Offset) {
        let w = orders.entry(c.order).or_insert(0);
        *w = (*w).max(c.weight);
    }
    let mut parts: Vec<String> = alloc::vec![String::from("N")];
    for (k, w) in orders {
        let coef = if w == 1 { String::new() } else { format!("w{k} ") };
        parts.push(format!("{coef}N^{k}"));
    }
    format!("O({})", parts.join(" + "))
}

/// Histogram of the gadgets a plan instantiates.
pub fn histogram_of(plan: &GadgetPlan) -> Vec<TermClass> {
    let mut bins: BTreeMap<(usize, GadgetKind, i64), u64> = BTreeMap::new();
    for g in &plan.gadgets {
        *bins.entry((g.order(), g.kind, g.weight)).or_insert(0) += 1;
    }
    for &w in plan.offset_weights.iter().filter(|&&w| w > 0) {
        *bins.entry((1, GadgetKind::Offset, w)).or_insert(0) += 1;
    }
    bins.into_iter()
        .map(|((order, kind, weight), count)| TermClass {
            order,
            kind,
            weight,
            count,
        })
        .collect()
}

/// Every order-`k` hyperedge on `n` variables, one gadget of `kind` each.
pub fn complete_hypergraph(n: usize, k: usize, kind: GadgetKind, weight: i64) -> Vec<TermClass> {
    alloc::vec![TermClass {
        order: k,
        kind,
        weight,
        count: binomial(n as u64, k as u64),
    }]
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k.min(n - k)).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}
