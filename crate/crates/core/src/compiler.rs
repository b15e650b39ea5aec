//! Lowering of canonical polynomials to weighted atom graphs.
//!
//! [`lower`] walks the monomials from the highest order down. A positive
//! coefficient becomes a positive hyperedge; a negative one becomes a negative
//! hyperedge whose two by-product terms of order `K - 1` are subtracted from
//! the working polynomial before that order is processed. What is left on the
//! linear terms is realized by data-atom detunings (negative net coefficient)
//! or offset atoms (positive net coefficient).
//!
//! [`assemble`] turns the plan into an [`AtomGraph`] either with one weighted
//! instance per gadget (local addressing) or with `w` unit-weight copies per
//! gadget (duplication).

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{CompileError, SolverError};
use crate::expand::{expand_superatom, ExpansionSpec};
use crate::gadget::{emit_negative_hyperedge, emit_offset, emit_positive_hyperedge, Fragment, Gadget, GadgetKind};
use crate::graph::{AtomGraph, AtomId, AtomRole, AtomSet};
use crate::mwis::MwisSolver;
use crate::polynomial::{Polynomial, PolynomialBuilder, Var};

/// Clamp enumeration bound of [`effective_polynomial`].
pub const EFFECTIVE_POLYNOMIAL_LIMIT: usize = 20;

/// Which two variables of a negative monomial form the pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PairRule {
    /// The two highest-index variables.
    #[default]
    LastTwo,
    /// The two lowest-index variables.
    FirstTwo,
}

impl PairRule {
    /// Splits sorted `vars` into `(prefix, (a, b))`.
    pub fn split(self, vars: &[Var]) -> (Vec<Var>, (Var, Var)) {
        let k = vars.len();
        match self {
            PairRule::LastTwo => (vars[..k - 2].to_vec(), (vars[k - 2], vars[k - 1])),
            PairRule::FirstTwo => (vars[2..].to_vec(), (vars[0], vars[1])),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    LocalAddressing,
    Duplication,
}

/// A hyperedge to instantiate. For negative hyperedges `ports` is prefix then pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetSpec {
    pub kind: GadgetKind,
    pub ports: Vec<Var>,
    pub weight: i64,
}

impl GadgetSpec {
    pub fn order(&self) -> usize {
        self.ports.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetPlan {
    pub gadgets: Vec<GadgetSpec>,
    pub data_weights: Vec<i64>,
    pub offset_weights: Vec<i64>,
    /// Effective energy minus the non-constant part of the polynomial.
    pub constant_shift: i64,
}

impl GadgetPlan {
    /// Hyperedge gadgets plus one entry per nonzero offset.
    pub fn num_gadgets(&self) -> usize {
        self.gadgets.len() + self.offset_weights.iter().filter(|&&w| w > 0).count()
    }
}

/// Options for [`compile`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CompileOptions {
    pub pair_rule: PairRule,
    pub mode: Mode,
    /// Replace superatoms larger than the bound with certified expansions.
    pub expansion: Option<ExpansionSpec>,
}

/// A complete atom graph together with its provenance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompiledGraph {
    pub graph: AtomGraph,
    pub plan: GadgetPlan,
    pub names: Vec<String>,
    pub var_to_atom: Vec<AtomId>,
    pub mode: Mode,
    /// Gadget instances; instance `i` owns atoms with gadget id `i`.
    pub gadgets: Vec<Gadget>,
    /// Effective energy of the graph minus the non-constant part of the polynomial.
    pub constant_shift: i64,
}

impl CompiledGraph {
    pub fn num_vars(&self) -> usize {
        self.names.len()
    }

    /// Variables with no detuning, no offset and no gadget membership.
    pub fn free_variables(&self) -> Vec<Var> {
        (0..self.num_vars())
            .map(|i| Var(i as u32))
            .filter(|&v| {
                self.plan.data_weights[v.index()] == 0
                    && self.plan.offset_weights[v.index()] == 0
                    && !self.gadgets.iter().any(|g| g.ports.contains(&v))
            })
            .collect()
    }
}

/// Builds the gadget plan of `p`; the constant of `p` is ignored.
pub fn lower(p: &Polynomial, pair_rule: PairRule) -> GadgetPlan {
    let n = p.num_vars();
    let mut working: BTreeMap<Vec<Var>, i64> = p.term_map().clone();
    let mut gadgets = Vec::new();
    for order in (2..=p.max_order()).rev() {
        let layer: Vec<(Vec<Var>, i64)> = working
            .iter()
            .filter(|(vars, _)| vars.len() == order)
            .map(|(vars, &c)| (vars.clone(), c))
            .collect();
        for (vars, c) in layer {
            if c > 0 {
                gadgets.push(GadgetSpec {
                    kind: GadgetKind::PosHyperedge,
                    ports: vars,
                    weight: c,
                });
            } else if c < 0 {
                let (prefix, (a, b)) = pair_rule.split(&vars);
                for side in [a, b] {
                    let mut key = prefix.clone();
                    key.push(side);
                    key.sort_unstable();
                    *working.entry(key).or_insert(0) += c;
                }
                let mut ports = prefix;
                ports.extend([a, b]);
                gadgets.push(GadgetSpec {
                    kind: GadgetKind::NegHyperedge,
                    ports,
                    weight: -c,
                });
            }
        }
    }
    let mut data_weights = vec![0; n];
    let mut offset_weights = vec![0; n];
    for i in 0..n {
        let net = working.get(&vec![Var(i as u32)]).copied().unwrap_or(0);
        if net < 0 {
            data_weights[i] = -net;
        } else {
            offset_weights[i] = net;
        }
    }
    let constant_shift = -(gadgets.iter().map(|g| g.weight).sum::<i64>() + offset_weights.iter().sum::<i64>());
    GadgetPlan {
        gadgets,
        data_weights,
        offset_weights,
        constant_shift,
    }
}

/// Instantiates `plan` as an atom graph.
pub fn assemble(
    plan: &GadgetPlan,
    p: &Polynomial,
    mode: Mode,
    expansion: Option<&ExpansionSpec>,
) -> Result<CompiledGraph, CompileError> {
    let n = p.num_vars();
    let mut graph = AtomGraph::new();
    let var_to_atom: Vec<AtomId> = (0..n)
        .map(|i| graph.add_atom(AtomRole::Data(Var(i as u32)), plan.data_weights[i]))
        .collect();
    let mut cg = CompiledGraph {
        graph,
        plan: plan.clone(),
        names: p.names().to_vec(),
        var_to_atom,
        mode,
        gadgets: Vec::new(),
        constant_shift: plan.constant_shift,
    };

    let copies = |w: i64| match mode {
        Mode::LocalAddressing => (1, w),
        Mode::Duplication => (w, 1),
    };
    for spec in &plan.gadgets {
        let (count, weight) = copies(spec.weight);
        for _ in 0..count {
            let (gadget, fragment) = match spec.kind {
                GadgetKind::PosHyperedge => emit_positive_hyperedge(&spec.ports, weight)?,
                _ => {
                    let k = spec.ports.len();
                    emit_negative_hyperedge(&spec.ports[..k - 2], (spec.ports[k - 2], spec.ports[k - 1]), weight)?
                }
            };
            match expansion {
                Some(exp) => {
                    let e = expand_superatom(&gadget, exp)?;
                    cg.constant_shift += e.constant;
                    attach(&mut cg, gadget, &e.fragment);
                }
                None => attach(&mut cg, gadget, &fragment),
            }
        }
    }
    for (i, &w) in plan.offset_weights.iter().enumerate() {
        if w == 0 {
            continue;
        }
        let (count, weight) = copies(w);
        for _ in 0..count {
            let (gadget, fragment) = emit_offset(Var(i as u32), weight)?;
            attach(&mut cg, gadget, &fragment);
        }
    }
    if mode == Mode::LocalAddressing && expansion.is_none() {
        debug_assert_eq!(
            cg.graph.num_atoms(),
            n + plan.gadgets.iter().map(|g| g.kind.aux_count(g.order())).sum::<usize>()
                + plan.offset_weights.iter().filter(|&&w| w > 0).count()
        );
    }
    Ok(cg)
}

/// Copies `fragment` into the graph, gluing its port atoms onto the data atoms.
fn attach(cg: &mut CompiledGraph, gadget: Gadget, fragment: &Fragment) {
    let gid = cg.gadgets.len();
    let mut ordinal = 0;
    let mut ids = Vec::with_capacity(fragment.graph.num_atoms());
    for atom in fragment.graph.atoms() {
        let id = match atom.role {
            AtomRole::Data(v) => cg.var_to_atom[v.index()],
            AtomRole::Offset { var, .. } => cg.graph.add_atom(AtomRole::Offset { var, gadget: gid }, atom.weight),
            AtomRole::Wire { .. } => {
                ordinal += 1;
                cg.graph.add_atom(
                    AtomRole::Wire {
                        gadget: gid,
                        ordinal: ordinal - 1,
                    },
                    atom.weight,
                )
            }
        };
        ids.push(id);
    }
    for (a, b) in fragment.graph.edges() {
        cg.graph.add_edge(ids[a], ids[b]);
    }
    let aux_atoms = fragment.aux_atoms().into_iter().map(|a| ids[a]).collect();
    cg.gadgets.push(Gadget { aux_atoms, ..gadget });
}

/// `lower` followed by `assemble`.
pub fn compile(p: &Polynomial, opts: &CompileOptions) -> Result<CompiledGraph, CompileError> {
    let plan = lower(p, opts.pair_rule);
    assemble(&plan, p, opts.mode, opts.expansion.as_ref())
}

/// Recovers the polynomial realized by `cg` from conditional ground energies.
///
/// Every data assignment is clamped, the auxiliary atoms are optimized
/// exactly, and the resulting energy table is Möbius-inverted into the unique
/// multilinear interpolant. The constant of the result is the energy of the
/// all-zero assignment.
pub fn effective_polynomial(cg: &CompiledGraph) -> Result<Polynomial, CompileError> {
    let n = cg.num_vars();
    if n > EFFECTIVE_POLYNOMIAL_LIMIT {
        return Err(SolverError::EnumerationBound {
            vars: n,
            limit: EFFECTIVE_POLYNOMIAL_LIMIT,
        }
        .into());
    }
    let graph = &cg.graph;
    let mut solver = MwisSolver::new(graph);
    let mut aux = AtomSet::full(graph.num_atoms());
    for &d in &cg.var_to_atom {
        aux.remove(d);
    }
    for (i, &a) in cg.var_to_atom.iter().enumerate() {
        for &b in &cg.var_to_atom[..i] {
            if graph.has_edge(a, b) {
                return Err(SolverError::AdjacentData(b, a).into());
            }
        }
    }

    let mut table = Vec::with_capacity(1 << n);
    for mask in 0..1u64 << n {
        let mut allowed = aux.clone();
        let mut data_weight = 0;
        for (i, &d) in cg.var_to_atom.iter().enumerate() {
            if mask >> i & 1 == 1 {
                allowed = allowed.difference(solver.neighbors(d));
                data_weight += graph.atom(d).weight;
            }
        }
        table.push(-(data_weight + solver.max_weight(&allowed)?));
    }
    for i in 0..n {
        for mask in 0..table.len() {
            if mask >> i & 1 == 1 {
                table[mask] -= table[mask ^ 1 << i];
            }
        }
    }

    let mut b = PolynomialBuilder::new();
    for name in &cg.names {
        b.var(name)?;
    }
    for (mask, &c) in table.iter().enumerate().skip(1) {
        if c != 0 {
            let vars: Vec<Var> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| Var(i as u32)).collect();
            b.add_vars(c, &vars);
        }
    }
    b.add_constant(table[0]);
    Ok(b.build())
}
