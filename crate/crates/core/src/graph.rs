//! Weighted atom graphs: atoms carry detuning multipliers, edges are blockade pairs.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::polynomial::Var;

pub type AtomId = usize;

/// What an atom stands for in a compiled graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AtomRole {
    /// The atom encoding a problem variable.
    Data(Var),
    /// Pendant atom of an offset gadget realizing a positive linear term.
    Offset { var: Var, gadget: usize },
    /// Auxiliary atom `ordinal` of hyperedge gadget `gadget`.
    Wire { gadget: usize, ordinal: usize },
}

impl AtomRole {
    pub fn is_data(&self) -> bool {
        matches!(self, AtomRole::Data(_))
    }

    pub fn data_var(&self) -> Option<Var> {
        match *self {
            AtomRole::Data(v) => Some(v),
            _ => None,
        }
    }

    pub fn gadget(&self) -> Option<usize> {
        match *self {
            AtomRole::Data(_) => None,
            AtomRole::Offset { gadget, .. } | AtomRole::Wire { gadget, .. } => Some(gadget),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    pub id: AtomId,
    pub role: AtomRole,
    /// Detuning multiplier in units of the global detuning.
    pub weight: i64,
}

/// Fixed-capacity bitset over atom ids.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AtomSet {
    words: Vec<u64>,
}

impl AtomSet {
    pub fn new(capacity: usize) -> Self {
        AtomSet {
            words: vec![0; capacity.div_ceil(64)],
        }
    }

    pub fn full(capacity: usize) -> Self {
        let mut s = Self::new(capacity);
        for i in 0..capacity {
            s.insert(i);
        }
        s
    }

    pub fn from_ids(capacity: usize, ids: impl IntoIterator<Item = AtomId>) -> Self {
        let mut s = Self::new(capacity);
        for i in ids {
            s.insert(i);
        }
        s
    }

    #[inline]
    pub fn insert(&mut self, i: AtomId) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn remove(&mut self, i: AtomId) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    #[inline]
    pub fn contains(&self, i: AtomId) -> bool {
        self.words.get(i / 64).is_some_and(|w| w >> (i % 64) & 1 == 1)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first(&self) -> Option<AtomId> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = AtomId> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            core::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }

    pub fn intersection(&self, other: &AtomSet) -> AtomSet {
        AtomSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn difference(&self, other: &AtomSet) -> AtomSet {
        AtomSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect(),
        }
    }

    pub fn union_with(&mut self, other: &AtomSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersects(&self, other: &AtomSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn count_and(&self, other: &AtomSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn to_vec(&self) -> Vec<AtomId> {
        self.iter().collect()
    }
}

/// Sets compare as sorted id sequences.
impl Ord for AtomSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for AtomSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Atoms plus undirected blockade edges. Edges are stored as `(low, high)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AtomGraph {
    atoms: Vec<Atom>,
    edges: BTreeSet<(AtomId, AtomId)>,
}

impl AtomGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_atom(&mut self, role: AtomRole, weight: i64) -> AtomId {
        let id = self.atoms.len();
        self.atoms.push(Atom { id, role, weight });
        id
    }

    /// Inserts a blockade edge. Panics on self-loops and unknown atoms.
    pub fn add_edge(&mut self, a: AtomId, b: AtomId) {
        assert!(a != b, "self-loop on atom {a}");
        assert!(a < self.atoms.len() && b < self.atoms.len(), "edge references a missing atom");
        self.edges.insert((a.min(b), a.max(b)));
    }

    pub fn remove_edge(&mut self, a: AtomId, b: AtomId) -> bool {
        self.edges.remove(&(a.min(b), a.max(b)))
    }

    pub fn has_edge(&self, a: AtomId, b: AtomId) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn set_weight(&mut self, a: AtomId, weight: i64) {
        self.atoms[a].weight = weight;
    }

    pub fn num_atoms(&self) -> usize {
        self.atoms.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn atom(&self, id: AtomId) -> &Atom {
        &self.atoms[id]
    }

    pub fn edges(&self) -> impl Iterator<Item = (AtomId, AtomId)> + '_ {
        self.edges.iter().copied()
    }

    pub fn weights(&self) -> Vec<i64> {
        self.atoms.iter().map(|a| a.weight).collect()
    }

    pub fn max_weight(&self) -> i64 {
        self.atoms.iter().map(|a| a.weight).max().unwrap_or(0)
    }

    pub fn total_weight(&self) -> i64 {
        self.atoms.iter().map(|a| a.weight).sum()
    }

    /// Data atoms ordered by variable index.
    pub fn data_atoms(&self) -> Vec<(Var, AtomId)> {
        let mut out: Vec<(Var, AtomId)> = self
            .atoms
            .iter()
            .filter_map(|a| a.role.data_var().map(|v| (v, a.id)))
            .collect();
        out.sort();
        out
    }

    pub fn adjacency(&self) -> Vec<AtomSet> {
        let n = self.atoms.len();
        let mut adj = vec![AtomSet::new(n); n];
        for &(a, b) in &self.edges {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        adj
    }

    pub fn neighbors(&self, a: AtomId) -> Vec<AtomId> {
        self.edges
            .iter()
            .filter_map(|&(x, y)| match (x == a, y == a) {
                (true, _) => Some(y),
                (_, true) => Some(x),
                _ => None,
            })
            .collect()
    }

    pub fn is_independent(&self, set: &AtomSet) -> bool {
        self.edges.iter().all(|&(a, b)| !(set.contains(a) && set.contains(b)))
    }

    pub fn set_weight_sum(&self, set: &AtomSet) -> i64 {
        set.iter().map(|a| self.atoms[a].weight).sum()
    }

    /// Size of the largest clique, by Bron-Kerbosch with pivoting.
    pub fn max_clique_size(&self) -> usize {
        let n = self.atoms.len();
        let adj = self.adjacency();
        let mut best = 0;
        bron_kerbosch(&adj, 0, AtomSet::full(n), AtomSet::new(n), &mut best);
        best
    }

    /// Appends `other`, mapping its atom ids through `map` (`None` = copy the atom).
    /// Returns the final id of every atom of `other`.
    pub fn merge(
        &mut self,
        other: &AtomGraph,
        mut map: impl FnMut(&Atom) -> Option<AtomId>,
        mut role: impl FnMut(&Atom) -> AtomRole,
    ) -> Vec<AtomId> {
        let ids: Vec<AtomId> = other
            .atoms
            .iter()
            .map(|a| map(a).unwrap_or_else(|| self.add_atom(role(a), a.weight)))
            .collect();
        for (a, b) in other.edges() {
            self.add_edge(ids[a], ids[b]);
        }
        ids
    }
}

fn bron_kerbosch(adj: &[AtomSet], size: usize, mut cand: AtomSet, mut excluded: AtomSet, best: &mut usize) {
    if cand.is_empty() {
        if excluded.is_empty() {
            *best = (*best).max(size);
        }
        return;
    }
    if size + cand.len() <= *best {
        return;
    }
    let mut pool = cand.clone();
    pool.union_with(&excluded);
    let pivot = pool.iter().max_by_key(|&u| adj[u].count_and(&cand)).unwrap();
    for v in cand.difference(&adj[pivot]).to_vec() {
        bron_kerbosch(
            adj,
            size + 1,
            cand.intersection(&adj[v]),
            excluded.intersection(&adj[v]),
            best,
        );
        cand.remove(v);
        excluded.insert(v);
    }
}
