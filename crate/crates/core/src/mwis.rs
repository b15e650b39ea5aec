//! Exact maximum-weight independent sets with the complete maximizer family.
//!
//! Branch and bound over bitsets. Each search node splits its candidate set
//! into connected components and solves them independently; cliques are
//! closed in one step. Branching picks the candidate with the highest degree
//! inside the candidate set (lowest id on ties) and the bound is the sum of
//! the remaining positive weights. Ties are kept, so the returned [`Family`]
//! describes every maximizer exactly once.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::SolverError;
use crate::graph::{AtomGraph, AtomId, AtomSet};

pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;

/// Factored representation of a set of independent sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// Only the empty set.
    Empty,
    /// Every set of the inner family with `atom` added.
    Pick(AtomId, Box<Family>),
    /// Disjoint union of alternatives.
    Union(Vec<Family>),
    /// Cartesian product over vertex-disjoint components.
    Product(Vec<Family>),
}

impl Family {
    /// Number of member sets, saturating at `u128::MAX`.
    pub fn count(&self) -> u128 {
        match self {
            Family::Empty => 1,
            Family::Pick(_, f) => f.count(),
            Family::Union(fs) => fs.iter().fold(0u128, |acc, f| acc.saturating_add(f.count())),
            Family::Product(fs) => fs.iter().fold(1u128, |acc, f| acc.saturating_mul(f.count())),
        }
    }

    /// All member sets in sorted order, or `None` if there are more than `limit`.
    pub fn enumerate(&self, capacity: usize, limit: usize) -> Option<Vec<AtomSet>> {
        if self.count() > limit as u128 {
            return None;
        }
        let mut sets: Vec<AtomSet> = self.lists().into_iter().map(|ids| AtomSet::from_ids(capacity, ids)).collect();
        sets.sort();
        Some(sets)
    }

    fn lists(&self) -> Vec<Vec<AtomId>> {
        match self {
            Family::Empty => vec![Vec::new()],
            Family::Pick(a, f) => {
                let mut out = f.lists();
                for l in &mut out {
                    l.push(*a);
                }
                out
            }
            Family::Union(fs) => fs.iter().flat_map(Family::lists).collect(),
            Family::Product(fs) => fs.iter().fold(vec![Vec::new()], |acc, f| {
                let part = f.lists();
                acc.iter()
                    .flat_map(|a| {
                        part.iter().map(move |b| {
                            let mut l = a.clone();
                            l.extend_from_slice(b);
                            l
                        })
                    })
                    .collect()
            }),
        }
    }

    /// Projects every member onto a bitmask; `bit(atom)` names the bit an atom sets.
    pub fn project(&self, bit: &dyn Fn(AtomId) -> Option<u32>) -> BTreeSet<u64> {
        match self {
            Family::Empty => BTreeSet::from([0]),
            Family::Pick(a, f) => {
                let inner = f.project(bit);
                match bit(*a) {
                    Some(b) => inner.into_iter().map(|m| m | 1 << b).collect(),
                    None => inner,
                }
            }
            Family::Union(fs) => fs.iter().flat_map(|f| f.project(bit)).collect(),
            Family::Product(fs) => fs.iter().fold(BTreeSet::from([0]), |acc, f| {
                let part = f.project(bit);
                acc.iter().flat_map(|a| part.iter().map(move |b| a | b)).collect()
            }),
        }
    }

    /// Whether some member contains `atom`.
    pub fn mentions(&self, atom: AtomId) -> bool {
        match self {
            Family::Empty => false,
            Family::Pick(a, f) => *a == atom || f.mentions(atom),
            Family::Union(fs) | Family::Product(fs) => fs.iter().any(|f| f.mentions(atom)),
        }
    }
}

/// Optimum weight and the family of all maximizers.
#[derive(Clone, Debug)]
pub struct MwisSolution {
    pub weight: i64,
    pub family: Family,
    capacity: usize,
}

impl MwisSolution {
    pub fn count(&self) -> u128 {
        self.family.count()
    }

    /// Sorted maximizers, or `None` when more than `limit` exist.
    pub fn maximizers(&self, limit: usize) -> Option<Vec<AtomSet>> {
        self.family.enumerate(self.capacity, limit)
    }
}

type Found = Option<(i64, Option<Family>)>;

/// Reusable solver over one graph's adjacency.
pub struct MwisSolver {
    weights: Vec<i64>,
    adj: Vec<AtomSet>,
    budget: u64,
    nodes: u64,
}

impl MwisSolver {
    pub fn new(graph: &AtomGraph) -> Self {
        MwisSolver {
            weights: graph.weights(),
            adj: graph.adjacency(),
            budget: DEFAULT_NODE_BUDGET,
            nodes: 0,
        }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    /// Search nodes visited so far.
    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    pub fn capacity(&self) -> usize {
        self.weights.len()
    }

    /// Neighbors of `atom`.
    pub fn neighbors(&self, atom: AtomId) -> &AtomSet {
        &self.adj[atom]
    }

    /// Every maximum-weight independent subset of `allowed`.
    pub fn solve_all(&mut self, allowed: &AtomSet) -> Result<MwisSolution, SolverError> {
        let cand = self.usable(allowed);
        let (weight, family) = self.search(cand, i64::MIN, true)?.expect("unbounded search always succeeds");
        Ok(MwisSolution {
            weight,
            family: family.expect("family requested"),
            capacity: self.weights.len(),
        })
    }

    /// Optimum weight over independent subsets of `allowed`.
    pub fn max_weight(&mut self, allowed: &AtomSet) -> Result<i64, SolverError> {
        let cand = self.usable(allowed);
        Ok(self
            .search(cand, i64::MIN, false)?
            .expect("unbounded search always succeeds")
            .0)
    }

    fn usable(&self, allowed: &AtomSet) -> AtomSet {
        let mut cand = allowed.clone();
        for a in allowed.iter() {
            if self.weights[a] < 0 {
                cand.remove(a);
            }
        }
        cand
    }

    fn upper(&self, cand: &AtomSet) -> i64 {
        cand.iter().map(|a| self.weights[a]).sum()
    }

    fn components(&self, cand: &AtomSet) -> Vec<AtomSet> {
        let mut rest = cand.clone();
        let mut out = Vec::new();
        while let Some(seed) = rest.first() {
            let mut comp = AtomSet::new(self.weights.len());
            comp.insert(seed);
            let mut frontier = comp.clone();
            while !frontier.is_empty() {
                let mut next = AtomSet::new(self.weights.len());
                for v in frontier.iter() {
                    next.union_with(&self.adj[v]);
                }
                let next = next.intersection(cand).difference(&comp);
                comp.union_with(&next);
                frontier = next;
            }
            rest = rest.difference(&comp);
            out.push(comp);
        }
        out
    }

    fn search(&mut self, cand: AtomSet, floor: i64, collect: bool) -> Result<Found, SolverError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(SolverError::NodeBudget(self.budget));
        }
        let upper = self.upper(&cand);
        if upper < floor {
            return Ok(None);
        }
        if cand.is_empty() {
            return Ok(Some((0, collect.then_some(Family::Empty))));
        }
        let comps = self.components(&cand);
        if comps.len() > 1 {
            return self.solve_product(comps, floor, collect);
        }
        if self.is_clique(&cand) {
            return Ok(self.solve_clique(&cand, floor, collect));
        }

        let pivot = cand
            .iter()
            .max_by(|&a, &b| {
                let (da, db) = (self.adj[a].count_and(&cand), self.adj[b].count_and(&cand));
                da.cmp(&db).then(b.cmp(&a))
            })
            .expect("non-empty candidate set");
        let w = self.weights[pivot];

        let mut inc_cand = cand.difference(&self.adj[pivot]);
        inc_cand.remove(pivot);
        let include = self
            .search(inc_cand, floor.saturating_sub(w), collect)?
            .map(|(s, f)| (s + w, f.map(|f| Family::Pick(pivot, Box::new(f)))));

        let exc_floor = match &include {
            Some((s, _)) if collect => floor.max(*s),
            Some((s, _)) => floor.max(s + 1),
            None => floor,
        };
        let mut exc_cand = cand;
        exc_cand.remove(pivot);
        let exclude = self.search(exc_cand, exc_floor, collect)?;

        Ok(match (include, exclude) {
            (None, e) => e,
            (i, None) => i,
            (Some((si, fi)), Some((se, fe))) => {
                if si > se {
                    Some((si, fi))
                } else if se > si {
                    Some((se, fe))
                } else {
                    let family = match (fi, fe) {
                        (Some(a), Some(b)) => Some(Family::Union(vec![a, b])),
                        _ => None,
                    };
                    Some((si, family))
                }
            }
        })
    }

    fn is_clique(&self, cand: &AtomSet) -> bool {
        let n = cand.len();
        cand.iter().all(|v| self.adj[v].count_and(cand) == n - 1)
    }

    fn solve_clique(&self, cand: &AtomSet, floor: i64, collect: bool) -> Found {
        let best = cand.iter().map(|a| self.weights[a]).max().unwrap_or(0).max(0);
        if best < floor {
            return None;
        }
        let family = collect.then(|| {
            let mut alts: Vec<Family> = Vec::new();
            if best == 0 {
                alts.push(Family::Empty);
            }
            alts.extend(
                cand.iter()
                    .filter(|&a| self.weights[a] == best)
                    .map(|a| Family::Pick(a, Box::new(Family::Empty))),
            );
            if alts.len() == 1 {
                alts.pop().unwrap()
            } else {
                Family::Union(alts)
            }
        });
        Some((best, family))
    }

    fn solve_product(&mut self, comps: Vec<AtomSet>, floor: i64, collect: bool) -> Result<Found, SolverError> {
        let uppers: Vec<i64> = comps.iter().map(|c| self.upper(c)).collect();
        let mut remaining_upper: i64 = uppers.iter().sum();
        let mut total = 0i64;
        let mut parts = Vec::with_capacity(comps.len());
        for (comp, up) in comps.into_iter().zip(uppers) {
            remaining_upper -= up;
            let comp_floor = floor.saturating_sub(total).saturating_sub(remaining_upper);
            match self.search(comp, comp_floor, collect)? {
                None => return Ok(None),
                Some((s, f)) => {
                    total += s;
                    if let Some(f) = f {
                        parts.push(f);
                    }
                }
            }
        }
        Ok(Some((total, collect.then_some(Family::Product(parts)))))
    }
}

/// Solves the whole graph with the default node budget.
pub fn max_weight_independent_sets(graph: &AtomGraph) -> Result<MwisSolution, SolverError> {
    MwisSolver::new(graph).solve_all(&AtomSet::full(graph.num_atoms()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::AtomRole;

    fn wire_graph(weights: &[i64], edges: &[(usize, usize)]) -> AtomGraph {
        let mut g = AtomGraph::new();
        for (i, &w) in weights.iter().enumerate() {
            g.add_atom(AtomRole::Wire { gadget: 0, ordinal: i }, w);
        }
        for &(a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    #[test]
    fn triangle_has_three_maximizers() {
        let g = wire_graph(&[1, 1, 1], &[(0, 1), (1, 2), (0, 2)]);
        let sol = max_weight_independent_sets(&g).unwrap();
        assert_eq!(sol.weight, 1);
        assert_eq!(sol.count(), 3);
        let sets = sol.maximizers(10).unwrap();
        assert_eq!(sets.iter().map(AtomSet::to_vec).collect::<Vec<_>>(), [[0], [1], [2]]);
    }

    #[test]
    fn weighted_path_has_two_maximizers() {
        // Path 0-1-2-3 with weights (1,3,3,1): {0,2} and {1,3} both weigh 4.
        let g = wire_graph(&[1, 3, 3, 1], &[(0, 1), (1, 2), (2, 3)]);
        let sol = max_weight_independent_sets(&g).unwrap();
        assert_eq!(sol.weight, 4);
        let sets: Vec<Vec<usize>> = sol.maximizers(10).unwrap().iter().map(AtomSet::to_vec).collect();
        assert_eq!(sets, [vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn zero_weight_atoms_double_degeneracy() {
        let g = wire_graph(&[0, 2], &[]);
        let sol = max_weight_independent_sets(&g).unwrap();
        assert_eq!(sol.weight, 2);
        assert_eq!(sol.count(), 2);
    }

    #[test]
    fn empty_graph() {
        let sol = max_weight_independent_sets(&AtomGraph::new()).unwrap();
        assert_eq!(sol.weight, 0);
        assert_eq!(sol.count(), 1);
    }

    #[test]
    fn node_budget_is_reported() {
        let g = wire_graph(&[1, 1, 1, 1, 1], &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        let err = MwisSolver::new(&g).with_budget(2).solve_all(&AtomSet::full(5)).unwrap_err();
        assert_eq!(err, SolverError::NodeBudget(2));
    }

    #[test]
    fn weight_only_agrees() {
        let g = wire_graph(&[2, 3, 2, 1, 4], &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]);
        let all = max_weight_independent_sets(&g).unwrap();
        let w = MwisSolver::new(&g).max_weight(&AtomSet::full(5)).unwrap();
        assert_eq!(all.weight, w);
    }

    #[test]
    fn projection_of_product() {
        let g = wire_graph(&[1, 1, 1, 1], &[(0, 1), (2, 3)]);
        let sol = max_weight_independent_sets(&g).unwrap();
        assert_eq!(sol.count(), 4);
        let proj = sol.family.project(&|a| (a % 2 == 0).then_some(a as u32 / 2));
        assert_eq!(proj.into_iter().collect::<Vec<_>>(), [0, 1, 2, 3]);
    }
}
