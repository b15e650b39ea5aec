//! Hyperedge gadgets built from Rydberg superatoms, plus offset atoms.
//!
//! * Positive hyperedge of order `K`: a `K`-clique of auxiliary atoms, atom
//!   `i` blockaded by port `i`. Its conditional optimum is one excitation
//!   unless every port is excited, so it contributes `w * prod(x) - w`.
//! * Negative hyperedge of order `K`: a `(K-1)`-clique, atom `i` blockaded by
//!   prefix port `i` and the last atom blockaded by both pair ports. It
//!   contributes `w * prod(prefix) * (a + b - a*b) - w`.
//! * Offset: one pendant atom on a data atom, contributing `w * x - w`.
//!
//! Energies are in units of the detuning and include only auxiliary atoms.

use alloc::vec::Vec;

use crate::error::GadgetError;
use crate::graph::{AtomGraph, AtomId, AtomRole, AtomSet};
use crate::mwis::MwisSolver;
use crate::polynomial::{Assignment, Var};

/// Cap on listed optimal auxiliary configurations per clamp.
pub const PROFILE_CONFIG_LIMIT: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GadgetKind {
    PosHyperedge,
    /// Ports are the prefix followed by the pair `(a, b)`.
    NegHyperedge,
    Offset,
}

impl GadgetKind {
    /// Auxiliary atoms needed for a gadget with `order` ports.
    pub fn aux_count(self, order: usize) -> usize {
        match self {
            GadgetKind::PosHyperedge => order,
            GadgetKind::NegHyperedge => order - 1,
            GadgetKind::Offset => 1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            GadgetKind::PosHyperedge => "pos",
            GadgetKind::NegHyperedge => "neg",
            GadgetKind::Offset => "offset",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gadget {
    pub kind: GadgetKind,
    pub ports: Vec<Var>,
    pub weight: i64,
    pub aux_atoms: Vec<AtomId>,
}

impl Gadget {
    pub fn order(&self) -> usize {
        self.ports.len()
    }

    /// Prefix ports of a negative hyperedge (empty otherwise).
    pub fn prefix(&self) -> &[Var] {
        match self.kind {
            GadgetKind::NegHyperedge => &self.ports[..self.ports.len() - 2],
            _ => &[],
        }
    }

    /// Closed-form conditional energy for port bits `clamp` (bit `i` = port `i`).
    pub fn closed_form_energy(&self, clamp: u64) -> i64 {
        let k = self.ports.len();
        let bit = |i: usize| clamp >> i & 1 == 1;
        let satisfied = match self.kind {
            GadgetKind::PosHyperedge | GadgetKind::Offset => (0..k).all(bit),
            GadgetKind::NegHyperedge => (0..k - 2).all(bit) && (bit(k - 2) || bit(k - 1)),
        };
        if satisfied {
            0
        } else {
            -self.weight
        }
    }
}

/// A graph with designated port atoms; all other atoms are auxiliary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fragment {
    pub graph: AtomGraph,
    pub ports: Vec<AtomId>,
}

impl Fragment {
    pub fn aux_atoms(&self) -> Vec<AtomId> {
        (0..self.graph.num_atoms()).filter(|a| !self.ports.contains(a)).collect()
    }
}

fn check_ports(ports: &[Var], weight: i64) -> Result<(), GadgetError> {
    if weight < 1 {
        return Err(GadgetError::InvalidWeight(weight));
    }
    for (i, p) in ports.iter().enumerate() {
        if ports[..i].contains(p) {
            return Err(GadgetError::DuplicatePort);
        }
    }
    Ok(())
}

fn port_atoms(graph: &mut AtomGraph, ports: &[Var]) -> Vec<AtomId> {
    ports.iter().map(|&v| graph.add_atom(AtomRole::Data(v), 0)).collect()
}

fn clique(graph: &mut AtomGraph, size: usize, weight: i64) -> Vec<AtomId> {
    let aux: Vec<AtomId> = (0..size)
        .map(|ordinal| graph.add_atom(AtomRole::Wire { gadget: 0, ordinal }, weight))
        .collect();
    for i in 0..size {
        for j in i + 1..size {
            graph.add_edge(aux[i], aux[j]);
        }
    }
    aux
}

/// `K`-atom superatom with atom `i` tied to port `i`.
pub fn emit_positive_hyperedge(ports: &[Var], weight: i64) -> Result<(Gadget, Fragment), GadgetError> {
    if ports.len() < 2 {
        return Err(GadgetError::InvalidOrder(ports.len()));
    }
    check_ports(ports, weight)?;
    let mut graph = AtomGraph::new();
    let data = port_atoms(&mut graph, ports);
    let aux = clique(&mut graph, ports.len(), weight);
    for (&d, &w) in data.iter().zip(&aux) {
        graph.add_edge(d, w);
    }
    let gadget = Gadget {
        kind: GadgetKind::PosHyperedge,
        ports: ports.to_vec(),
        weight,
        aux_atoms: aux,
    };
    Ok((gadget, Fragment { graph, ports: data }))
}

/// `(K-1)`-atom superatom; prefix ports tie one atom each, both pair ports tie the last.
pub fn emit_negative_hyperedge(prefix: &[Var], pair: (Var, Var), weight: i64) -> Result<(Gadget, Fragment), GadgetError> {
    let mut ports = prefix.to_vec();
    ports.push(pair.0);
    ports.push(pair.1);
    check_ports(&ports, weight)?;
    let mut graph = AtomGraph::new();
    let data = port_atoms(&mut graph, &ports);
    let aux = clique(&mut graph, ports.len() - 1, weight);
    for (i, &d) in data.iter().enumerate() {
        graph.add_edge(d, aux[i.min(aux.len() - 1)]);
    }
    let gadget = Gadget {
        kind: GadgetKind::NegHyperedge,
        ports,
        weight,
        aux_atoms: aux,
    };
    Ok((gadget, Fragment { graph, ports: data }))
}

/// One pendant atom, excited exactly when the port is not.
pub fn emit_offset(port: Var, weight: i64) -> Result<(Gadget, Fragment), GadgetError> {
    check_ports(&[port], weight)?;
    let mut graph = AtomGraph::new();
    let data = graph.add_atom(AtomRole::Data(port), 0);
    let aux = graph.add_atom(AtomRole::Offset { var: port, gadget: 0 }, weight);
    graph.add_edge(data, aux);
    let gadget = Gadget {
        kind: GadgetKind::Offset,
        ports: alloc::vec![port],
        weight,
        aux_atoms: alloc::vec![aux],
    };
    Ok((
        gadget,
        Fragment {
            graph,
            ports: alloc::vec![data],
        },
    ))
}

/// Rebuilds the standalone fragment of a gadget.
pub fn fragment_of(gadget: &Gadget) -> Result<Fragment, GadgetError> {
    let built = match gadget.kind {
        GadgetKind::PosHyperedge => emit_positive_hyperedge(&gadget.ports, gadget.weight)?,
        GadgetKind::NegHyperedge => {
            let k = gadget.ports.len();
            emit_negative_hyperedge(
                &gadget.ports[..k - 2],
                (gadget.ports[k - 2], gadget.ports[k - 1]),
                gadget.weight,
            )?
        }
        GadgetKind::Offset => emit_offset(gadget.ports[0], gadget.weight)?,
    };
    Ok(built.1)
}

/// One row of a conditional energy profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileEntry {
    /// Port bits, bit `i` for port `i`.
    pub clamp: u64,
    /// Minimum of `-sum(w * n)` over auxiliary atoms, in detuning units.
    pub energy: i64,
    /// Every optimal auxiliary configuration, when requested and few enough.
    pub optimal: Option<Vec<AtomSet>>,
}

/// Conditional energies over all `2^K` port clamps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnergyProfile {
    pub ports: usize,
    pub entries: Vec<ProfileEntry>,
}

impl EnergyProfile {
    pub fn energy(&self, clamp: u64) -> i64 {
        self.entries[clamp as usize].energy
    }
}

/// Exact conditional optimum of the auxiliary atoms for one port clamp.
pub fn gadget_energy_profile(fragment: &Fragment, clamp: &Assignment) -> Result<ProfileEntry, GadgetError> {
    if clamp.len() != fragment.ports.len() {
        return Err(GadgetError::ClampLength {
            expected: fragment.ports.len(),
            found: clamp.len(),
        });
    }
    let mut solver = MwisSolver::new(&fragment.graph);
    clamp_entry(fragment, &mut solver, clamp.to_mask(), true)
}

/// Full profile. Optimal configurations are listed only when `with_configs`.
pub fn energy_profile(fragment: &Fragment, with_configs: bool) -> Result<EnergyProfile, GadgetError> {
    let k = fragment.ports.len();
    assert!(k < 24, "profile enumeration limited to 23 ports");
    let mut solver = MwisSolver::new(&fragment.graph);
    let entries = (0..1u64 << k)
        .map(|clamp| clamp_entry(fragment, &mut solver, clamp, with_configs))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(EnergyProfile { ports: k, entries })
}

fn clamp_entry(
    fragment: &Fragment,
    solver: &mut MwisSolver,
    clamp: u64,
    with_configs: bool,
) -> Result<ProfileEntry, GadgetError> {
    let n = fragment.graph.num_atoms();
    let mut allowed = AtomSet::full(n);
    for &p in &fragment.ports {
        allowed.remove(p);
    }
    let excited: Vec<AtomId> = fragment
        .ports
        .iter()
        .enumerate()
        .filter(|(i, _)| clamp >> i & 1 == 1)
        .map(|(_, &p)| p)
        .collect();
    for (i, &p) in excited.iter().enumerate() {
        if let Some(&q) = excited[..i].iter().find(|&&q| solver.neighbors(p).contains(q)) {
            return Err(GadgetError::ClampViolatesBlockade(q, p));
        }
        allowed = allowed.difference(solver.neighbors(p));
    }
    if with_configs {
        let sol = solver.solve_all(&allowed)?;
        Ok(ProfileEntry {
            clamp,
            energy: -sol.weight,
            optimal: sol.maximizers(PROFILE_CONFIG_LIMIT),
        })
    } else {
        Ok(ProfileEntry {
            clamp,
            energy: -solver.max_weight(&allowed)?,
            optimal: None,
        })
    }
}
