//! Bounded-clique realizations of superatoms.
//!
//! A superatom of `m` mutually blockaded atoms is replaced by `m` copy chains.
//! Chain `i` is a path `c, a, c, a, ..., c` of `m` copies and `m - 1` anti
//! atoms, all carrying the gadget weight `w`. Its first copy takes over the
//! port attachments of superatom atom `i`; copy `j` (for partner `j != i`) is
//! blockaded with the matching copy of chain `j`.
//!
//! Every chain can collect `(m - 1) w` from its anti atoms. It collects `w`
//! more only when all of its copies are free, which requires its ports to be
//! unexcited, and two chains can never both be fully copied because their
//! partner copies are adjacent. The conditional optimum is therefore the
//! superatom optimum shifted by `m (m - 1) w`. Mixed chain states can tie with
//! the anti state, which adds degeneracy but never changes an energy. The
//! expanded graph is triangle-free and uses `m (2m - 1) <= 2 K^2` atoms.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::ExpandError;
use crate::gadget::{energy_profile, fragment_of, Fragment, Gadget, GadgetKind};
use crate::graph::{AtomGraph, AtomId, AtomRole};

/// Multiplier `c` in the guaranteed bound `aux atoms <= c * K^2`.
pub const ATOM_BOUND_CONSTANT: usize = 2;

/// Largest clique the copy-chain construction produces.
pub const COPY_CHAIN_CLIQUE: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ExpansionStrategy {
    #[default]
    CopyChains,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExpansionSpec {
    pub max_clique: usize,
    pub strategy: ExpansionStrategy,
}

impl ExpansionSpec {
    pub fn new(max_clique: usize) -> Self {
        ExpansionSpec {
            max_clique,
            strategy: ExpansionStrategy::CopyChains,
        }
    }
}

/// A certified replacement fragment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    pub fragment: Fragment,
    /// Expanded energy minus original energy, identical on every clamp.
    pub constant: i64,
    /// False when the gadget already fit the clique bound and was returned as is.
    pub expanded: bool,
}

impl Expansion {
    pub fn aux_atoms(&self) -> usize {
        self.fragment.graph.num_atoms() - self.fragment.ports.len()
    }
}

/// One clamp in a profile comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProfileDiff {
    pub clamp: u64,
    pub original: i64,
    pub expanded: i64,
}

impl ProfileDiff {
    pub fn delta(&self) -> i64 {
        self.expanded - self.original
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionCheck {
    pub equivalent: bool,
    /// Offset at the all-zero clamp.
    pub constant: i64,
    pub diff: Vec<ProfileDiff>,
}

/// Size of the superatom clique of a hyperedge gadget.
pub fn clique_size(gadget: &Gadget) -> Option<usize> {
    match gadget.kind {
        GadgetKind::PosHyperedge | GadgetKind::NegHyperedge => Some(gadget.kind.aux_count(gadget.order())),
        GadgetKind::Offset => None,
    }
}

/// Replaces the superatom of `gadget` by a graph whose cliques fit `spec`.
/// Every returned expansion has passed [`verify_expansion`].
pub fn expand_superatom(gadget: &Gadget, spec: &ExpansionSpec) -> Result<Expansion, ExpandError> {
    let m = clique_size(gadget).ok_or(ExpandError::NotHyperedge)?;
    let original = fragment_of(gadget)?;
    if spec.max_clique >= m {
        return Ok(Expansion {
            fragment: original,
            constant: 0,
            expanded: false,
        });
    }
    if spec.max_clique < COPY_CHAIN_CLIQUE {
        return Err(ExpandError::CliqueBound {
            requested: spec.max_clique,
            achievable: COPY_CHAIN_CLIQUE,
        });
    }
    let fragment = match spec.strategy {
        ExpansionStrategy::CopyChains => copy_chains(gadget, m),
    };
    let check = verify_expansion(gadget, &fragment)?;
    if !check.equivalent {
        let bad = check.diff.iter().find(|d| d.delta() != check.constant).map_or(0, |d| d.clamp);
        return Err(ExpandError::Uncertified { clamp: bad });
    }
    debug_assert!(fragment.graph.max_clique_size() <= spec.max_clique);
    Ok(Expansion {
        fragment,
        constant: check.constant,
        expanded: true,
    })
}

/// Port indices attached to superatom atom `i`.
fn attachments(gadget: &Gadget, m: usize, i: usize) -> Vec<usize> {
    match gadget.kind {
        GadgetKind::NegHyperedge if i == m - 1 => vec![m - 1, m],
        _ => vec![i],
    }
}

fn copy_chains(gadget: &Gadget, m: usize) -> Fragment {
    let w = gadget.weight;
    let mut graph = AtomGraph::new();
    let ports: Vec<AtomId> = gadget.ports.iter().map(|&v| graph.add_atom(AtomRole::Data(v), 0)).collect();
    let mut ordinal = 0;
    let mut wire = |graph: &mut AtomGraph| {
        ordinal += 1;
        graph.add_atom(
            AtomRole::Wire {
                gadget: 0,
                ordinal: ordinal - 1,
            },
            w,
        )
    };
    // copies[i][0] is the port copy, copies[i][j + 1] faces partner j (skipping i).
    let mut copies: Vec<Vec<AtomId>> = Vec::with_capacity(m);
    for i in 0..m {
        let mut chain = Vec::with_capacity(m);
        let mut prev = None;
        for _ in 0..m {
            let c = wire(&mut graph);
            if let Some(p) = prev {
                let anti = wire(&mut graph);
                graph.add_edge(p, anti);
                graph.add_edge(anti, c);
            }
            chain.push(c);
            prev = Some(c);
        }
        for port in attachments(gadget, m, i) {
            graph.add_edge(ports[port], chain[0]);
        }
        copies.push(chain);
    }
    let slot = |i: usize, j: usize| if j < i { j + 1 } else { j };
    for i in 0..m {
        for j in i + 1..m {
            graph.add_edge(copies[i][slot(i, j)], copies[j][slot(j, i)]);
        }
    }
    Fragment { graph, ports }
}

/// Compares the conditional profiles of `original` and `expanded` over all clamps.
pub fn verify_expansion(original: &Gadget, expanded: &Fragment) -> Result<ExpansionCheck, ExpandError> {
    let base = fragment_of(original)?;
    if base.ports.len() != expanded.ports.len() {
        return Err(ExpandError::Gadget(crate::error::GadgetError::PortMismatch(
            base.ports.len(),
            expanded.ports.len(),
        )));
    }
    let a = energy_profile(&base, false)?;
    let b = energy_profile(expanded, false)?;
    let diff: Vec<ProfileDiff> = a
        .entries
        .iter()
        .zip(&b.entries)
        .map(|(x, y)| ProfileDiff {
            clamp: x.clamp,
            original: x.energy,
            expanded: y.energy,
        })
        .collect();
    let constant = diff[0].delta();
    let equivalent = diff.iter().all(|d| d.delta() == constant);
    Ok(ExpansionCheck {
        equivalent,
        constant,
        diff,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadget::{emit_negative_hyperedge, emit_positive_hyperedge};
    use crate::polynomial::Var;

    fn pos(k: u32, w: i64) -> Gadget {
        emit_positive_hyperedge(&(0..k).map(Var).collect::<Vec<_>>(), w).unwrap().0
    }

    fn neg(k: u32, w: i64) -> Gadget {
        let vars: Vec<Var> = (0..k).map(Var).collect();
        emit_negative_hyperedge(&vars[..k as usize - 2], (vars[k as usize - 2], vars[k as usize - 1]), w)
            .unwrap()
            .0
    }

    #[test]
    fn identity_when_clique_fits() {
        let e = expand_superatom(&pos(3, 1), &ExpansionSpec::new(3)).unwrap();
        assert!(!e.expanded);
        assert_eq!(e.constant, 0);
        assert_eq!(e.aux_atoms(), 3);
    }

    #[test]
    fn pos5_is_certified_and_triangle_free() {
        let e = expand_superatom(&pos(5, 1), &ExpansionSpec::new(2)).unwrap();
        assert!(e.expanded);
        assert_eq!(e.aux_atoms(), 5 * 9);
        assert!(e.aux_atoms() <= ATOM_BOUND_CONSTANT * 25);
        assert_eq!(e.fragment.graph.max_clique_size(), 2);
        assert_eq!(e.constant, -20);
    }

    #[test]
    fn weighted_and_negative_gadgets() {
        for g in [pos(4, 3), neg(4, 2), neg(5, 1), pos(3, 2)] {
            let e = expand_superatom(&g, &ExpansionSpec::new(2)).unwrap();
            let check = verify_expansion(&g, &e.fragment).unwrap();
            assert!(check.equivalent, "{g:?}");
            let m = clique_size(&g).unwrap() as i64;
            assert_eq!(e.constant, -m * (m - 1) * g.weight);
        }
    }

    #[test]
    fn clique_bound_below_two_is_unreachable() {
        assert_eq!(
            expand_superatom(&pos(4, 1), &ExpansionSpec::new(1)).unwrap_err(),
            ExpandError::CliqueBound {
                requested: 1,
                achievable: 2
            }
        );
    }

    #[test]
    fn self_check_and_mismatch() {
        let p3 = pos(3, 1);
        let same = verify_expansion(&p3, &fragment_of(&p3).unwrap()).unwrap();
        assert!(same.equivalent);
        assert_eq!(same.constant, 0);

        let n3 = fragment_of(&neg(3, 1)).unwrap();
        let check = verify_expansion(&p3, &n3).unwrap();
        assert!(!check.equivalent);
        assert_eq!(check.diff.len(), 8);
    }
}
